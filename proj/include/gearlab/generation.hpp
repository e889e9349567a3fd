#pragma once
// Discrete generating simulation of a tooth flank. The flank is sampled on a
// (profile arc length, axial position) grid; every cutting stroke of the tool
// leaves a clearance above the nominal involute, and the simulated surface is
// the pointwise minimum of those clearances over all strokes.
//
// Hobbing: the in-plane clearance of the straight rack flank combines with the
// sagitta of the hob body over the axial offset from the hob centre plane,
// projected onto the flank normal. The flank meets the cutter once per wheel
// revolution, so the generating window repeats with an axial shift of one feed
// advance. Fellows shaping: strokes run axially, so the clearance is the exact
// planar distance from the flank point to the cutter involute and deviations
// do not vary across the face width.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "core.hpp"
#include "gear_geometry.hpp"
#include "profile/profile.hpp"

namespace gearlab::sim {

inline constexpr double no_cut = std::numeric_limits<double>::infinity();

struct GenerationParams {
    double wheel_step_dphi_deg = 0.0;  // wheel rotation per cutting stroke
    std::size_t grid_nu = 500;         // samples along the profile
    std::size_t grid_nv = 500;         // samples across the face width
    int passes_margin = 4;             // extra strokes beyond the contact window

    void validate() const {
        if (!(wheel_step_dphi_deg > 0.0))
            throw InvalidParams("generation: wheel step per stroke must be positive");
        if (grid_nu < 16 || grid_nv < 16)
            throw InvalidParams("generation: grid needs at least 16 samples per axis");
        if (passes_margin < 0)
            throw InvalidParams("generation: passes margin must be >= 0");
    }
};

// Wheel rotation per stroke implied by the tool: one flute row of the hob, or
// one double stroke of the shaper.
inline double default_wheel_step_deg(const geom::GearSpec& g, const geom::HobSpec& h) {
    g.validate();
    h.validate();
    return g.pitch_angle_deg() * double(h.thread_starts) / double(h.flutes);
}

inline double default_wheel_step_deg(const geom::GearSpec& g, const geom::ShaperSpec& s) {
    g.validate();
    s.validate();
    return g.pitch_angle_deg() / double(s.double_strokes_per_pitch);
}

struct GenerationPass {
    long index = 0;               // stroke counter, monotone over the schedule
    double wheel_angle_deg = 0.0; // wheel rotation at this stroke
    double tool_shift_mm = 0.0;   // tangential displacement of the tool
    double axial_center_mm = 0.0; // hob centre plane along the face (hobbing)
    double tool_angle_deg = 0.0;  // cutter rotation (shaping)
};

struct FlankGrid {
    std::vector<double> deviations_um;  // nu*nv, row-major over u then v
    std::vector<double> u_axis_um;      // arc length along the involute
    std::vector<double> v_axis_um;      // axial position across the face
    geom::Side side = geom::Side::drive;
    geom::GearSpec gear;

    std::size_t nu() const { return u_axis_um.size(); }
    std::size_t nv() const { return v_axis_um.size(); }
    double at(std::size_t iu, std::size_t iv) const {
        return deviations_um[iu * nv() + iv];
    }
};

struct SimulationResult {
    FlankGrid grid;
    std::vector<GenerationPass> passes;
    std::size_t engaged_pass_count = 0;  // passes that attain the envelope somewhere
};

inline std::size_t engagement_count(const SimulationResult& r) {
    return r.engaged_pass_count;
}

// ---------------------------------------------------------------------------
// Cutting models
// ---------------------------------------------------------------------------

// Hob as a straight-flanked rack rolling on the wheel, plus the drop of the
// hob body cylinder away from its centre plane. The wheel angle is zero when
// the rack flank is tangent at the pitch point.
struct HobEnvelope {
    double r = 0.0, rb = 0.0;
    double sin_a = 0.0, cos_a = 0.0, tan_a = 0.0;
    double flank_depth = 0.0;   // rack flank extent below its pitch line
    double flank_height = 0.0;  // rack flank extent above its pitch line
    double tip_round = 0.0;
    double half_d0 = 0.0;
    double fa = 0.0;
    double xi_form = 0.0, xi_tip = 0.0;

    static HobEnvelope make(const geom::GearSpec& g, const geom::HobSpec& h) {
        g.validate();
        h.validate();
        HobEnvelope m;
        const double a = deg2rad(g.pressure_angle_deg);
        m.r = g.pitch_radius_mm();
        m.rb = g.base_radius_mm();
        m.sin_a = std::sin(a);
        m.cos_a = std::cos(a);
        m.tan_a = std::tan(a);
        m.flank_depth = h.straight_flank_depth_mm(g.pressure_angle_deg);
        m.flank_height = 0.5 * g.tip_diameter_mm - m.r;
        m.tip_round = h.tip_round_mm;
        m.half_d0 = 0.5 * h.tip_diameter_mm;
        m.fa = h.axial_feed_mm_per_rev;
        m.xi_form = m.tan_a - m.flank_depth / (m.rb * m.sin_a);
        m.xi_tip = g.tip_roll_angle();
        if (m.xi_form <= 0.0)
            throw InvalidGeometry("hobbing: rack flank reaches below the base circle");
        if (m.xi_form >= m.xi_tip)
            throw InvalidGeometry("hobbing: no flank left between form and tip");
        return m;
    }

    // In-plane clearance of the rack flank over the involute point at roll
    // angle xi, for a wheel rotation psi past the pitch-point tangency. The
    // contact foot may lie on the straight flank segment or below it, where
    // the tip rounding arc carries on cutting; past the flank top the stroke
    // cannot reach the point.
    double inplane_gap_mm(double xi, double psi_rad) const {
        const double e = xi + psi_rad - tan_a;
        const double ce = std::cos(e), se = std::sin(e);
        const double foot = cos_a * (rb * (ce + xi * se) - r * psi_rad * sin_a - r * cos_a);
        if (foot > flank_height + 1e-9) return no_cut;
        const double gap = r * sin_a - r * cos_a * (xi * ce - se + psi_rad);
        if (foot >= -flank_depth) return gap;
        // Past the flank end the tip-rounding arc keeps cutting. Both the
        // point's perpendicular foot and the arc centre's tangency point lie
        // on the flank line with rack heights foot and -flank_depth, so the
        // metric along-line separation is their difference over cos(a); the
        // normal separation is gap + tip_round. The arc's outward directions
        // span the sector from the flank normal to the rack tip; beyond that
        // sector the tooth cannot reach the point.
        const double du = (foot + flank_depth) / cos_a;
        const double dn = gap + tip_round;
        if (dn <= 0.0 || -du > dn / tan_a) return no_cut;
        return std::sqrt(du * du + dn * dn) - tip_round;
    }

    // Radial drop of the hob body at axial offset w from its centre plane.
    double axial_lift_mm(double w_mm) const {
        const double w = std::abs(w_mm);
        if (w >= half_d0) return no_cut;
        return half_d0 - std::sqrt(half_d0 * half_d0 - w * w);
    }
};

// Fellows cutter meshing with the wheel at the standard centre distance. The
// clearance is the exact distance from the rotated flank point to the cutter
// tooth involute, evaluated in closed form through the cutter base circle.
struct FellowsEnvelope {
    double rb2 = 0.0;
    double xi_lo = 0.0, xi_tip = 0.0;
    double centre = 0.0, rb0 = 0.0, eta_tip0 = 0.0;
    double theta_b2 = 0.0, theta_b0 = 0.0;
    double ratio = 0.0;  // wheel teeth / cutter teeth
    Vec2 tip_corner{};   // end of the cutter flank, cutter frame
    Vec2 corner_n{};     // flank normal (free side) at the corner
    Vec2 corner_r{};     // outward radial at the corner
    double cone_s = 1.0;    // orientation of the corner sector
    double ra0 = 0.0;       // cutter tip radius
    double land_ang = 0.0;  // angular width of the tip land

    static FellowsEnvelope make(const geom::GearSpec& g, const geom::ShaperSpec& s) {
        g.validate();
        s.validate();
        FellowsEnvelope m;
        const double a = deg2rad(g.pressure_angle_deg);
        const double inv_a = geom::involute_function(g.pressure_angle_deg);
        m.rb2 = g.base_radius_mm();
        m.xi_tip = g.tip_roll_angle();
        m.centre = geom::centre_distance_mm(s, g);
        m.rb0 = geom::shaper_base_radius_mm(s, g);
        m.eta_tip0 = geom::roll_at_radius(m.rb0, geom::shaper_tip_radius_mm(s, g));
        m.theta_b2 = 0.5 * pi - inv_a;
        m.theta_b0 = -0.5 * pi - inv_a;
        m.ratio = double(g.tooth_count) / double(s.tooth_count);
        m.xi_lo = (m.centre * std::sin(a) - m.rb0 * m.eta_tip0) / m.rb2;
        if (m.xi_lo <= 0.0)
            throw InvalidGeometry("shaping: cutter tip reaches below the base circle");
        if (m.xi_lo >= m.xi_tip)
            throw InvalidGeometry("shaping: no flank left between form and tip");
        m.tip_corner = rotated(geom::involute_point(m.rb0, m.eta_tip0), m.theta_b0);
        // Directions from which the corner is the nearest feature of the
        // cutter tooth: between the flank normal and the tip-land radial.
        const double c0 = m.theta_b0 + m.eta_tip0;
        m.corner_n = {std::sin(c0), -std::cos(c0)};
        m.ra0 = geom::shaper_tip_radius_mm(s, g);
        m.corner_r = {m.tip_corner.x / m.ra0, m.tip_corner.y / m.ra0};
        m.cone_s = (m.corner_n.x * m.corner_r.y - m.corner_n.y * m.corner_r.x) >= 0.0 ? 1.0 : -1.0;
        // Tip land: arc of the tip circle across the tooth head. Its angular
        // width is twice the half tooth thickness angle at the tip radius.
        const double inv_tip = m.eta_tip0 - std::atan(m.eta_tip0);
        m.land_ang = 2.0 * (0.5 * pi / double(s.tooth_count) + inv_a - inv_tip);
        if (m.land_ang < 0.0) throw InvalidGeometry("shaping: pointed cutter tooth");
        return m;
    }

    double gap_mm(double xi, double phi_rad) const {
        // Flank point in the wheel frame, wheel rotated by phi, then expressed
        // in the cutter frame (cutter centre above the wheel, counter-rotating).
        const Vec2 p = rotated(geom::involute_point(rb2, xi), theta_b2 + phi_rad);
        const Vec2 x = rotated({p.x, p.y - centre}, ratio * phi_rad);
        const double rr = x.x * x.x + x.y * x.y;
        if (rr <= rb0 * rb0) return no_cut;
        const double radius = std::sqrt(rr);
        const double tangent = std::sqrt(rr - rb0 * rb0);
        const double beta = std::acos(rb0 / radius);
        const double eta = std::remainder(std::atan2(x.y, x.x) + beta - theta_b0, 2.0 * pi);
        if (eta < -1e-9) return no_cut;
        if (eta > eta_tip0) {
            // Past the flank end the tooth head keeps cutting: the tip corner
            // for points inside its sector between the flank normal and the
            // radial, the tip land for points over the land arc itself.
            const double vx = x.x - tip_corner.x, vy = x.y - tip_corner.y;
            if (cone_s * (corner_n.x * vy - corner_n.y * vx) < 0.0) return no_cut;
            if (cone_s * (vx * corner_r.y - vy * corner_r.x) >= 0.0) return std::hypot(vx, vy);
            const double gamma = std::atan2(cone_s * (corner_r.x * x.y - corner_r.y * x.x),
                                            corner_r.x * x.x + corner_r.y * x.y);
            if (gamma < 0.0 || gamma > land_ang) return no_cut;
            return radius - ra0;
        }
        return tangent - rb0 * eta;
    }
};

// ---------------------------------------------------------------------------
// Pass schedules
// ---------------------------------------------------------------------------

namespace detail {

inline double signed_tangent_shift(const geom::GearSpec& g, double angle_deg) {
    const double shift = geom::tangent_shift_mm(g.pitch_diameter_mm, std::abs(angle_deg));
    return angle_deg < 0.0 ? -shift : shift;
}

inline void emit_window(double lo_deg, double hi_deg, double dphi, double fa,
                        double ratio, std::vector<GenerationPass>& out) {
    long k = static_cast<long>(std::ceil(lo_deg / dphi - 1e-12));
    if (!out.empty() && k <= out.back().index) k = out.back().index + 1;
    const long k_hi = static_cast<long>(std::floor(hi_deg / dphi + 1e-12));
    for (; k <= k_hi; ++k) {
        GenerationPass p;
        p.index = k;
        p.wheel_angle_deg = double(k) * dphi;
        p.axial_center_mm = fa * p.wheel_angle_deg / 360.0;
        p.tool_angle_deg = ratio * p.wheel_angle_deg;
        out.push_back(p);
    }
}

}  // namespace detail

// Strokes covering the angular window in which the hob flank can touch the
// analyzed flank. With an axial feed the window repeats every wheel
// revolution, shifted by one feed advance, until the whole face is covered.
inline std::vector<GenerationPass> plan_passes(const geom::GearSpec& g, const geom::HobSpec& h,
                                               const GenerationParams& params) {
    params.validate();
    const HobEnvelope m = HobEnvelope::make(g, h);
    const double dphi = params.wheel_step_dphi_deg;
    const double margin = double(params.passes_margin) * dphi;
    const double win_lo = rad2deg(m.tan_a - m.xi_tip) - margin;
    const double win_hi = rad2deg(m.tan_a - m.xi_form) + margin;
    int rev_lo = 0, rev_hi = 0;
    if (m.fa > 0.0) {
        rev_lo = -1;
        rev_hi = static_cast<int>(std::ceil(g.face_width_mm / m.fa)) + 1;
    }
    std::vector<GenerationPass> out;
    for (int n = rev_lo; n <= rev_hi; ++n)
        detail::emit_window(n * 360.0 + win_lo, n * 360.0 + win_hi, dphi, m.fa, 0.0, out);
    for (auto& p : out) p.tool_shift_mm = detail::signed_tangent_shift(g, p.wheel_angle_deg);
    return out;
}

inline std::vector<GenerationPass> plan_passes(const geom::GearSpec& g, const geom::ShaperSpec& s,
                                               const GenerationParams& params) {
    params.validate();
    const FellowsEnvelope m = FellowsEnvelope::make(g, s);
    const double dphi = params.wheel_step_dphi_deg;
    const double margin = double(params.passes_margin) * dphi;
    const double t = std::tan(deg2rad(g.pressure_angle_deg));
    std::vector<GenerationPass> out;
    detail::emit_window(rad2deg(t - m.xi_tip) - margin, rad2deg(t - m.xi_lo) + margin, dphi, 0.0,
                        m.ratio, out);
    for (auto& p : out) p.tool_shift_mm = detail::signed_tangent_shift(g, p.wheel_angle_deg);
    return out;
}

// ---------------------------------------------------------------------------
// Cut depth of a single pass
// ---------------------------------------------------------------------------

// Clearance a single hobbing stroke leaves over the flank point at arc length
// u along the profile and axial position v, in um. Infinite when the stroke
// cannot reach the point.
inline double cut_depth_um(const geom::GearSpec& g, const geom::HobSpec& h,
                           const GenerationPass& pass, double u_arc_um, double v_um) {
    const HobEnvelope m = HobEnvelope::make(g, h);
    const double xi = geom::roll_at_arc_length(m.rb, u_arc_um * 1e-3);
    const double psi = deg2rad(std::remainder(pass.wheel_angle_deg, 360.0));
    const double gap = m.inplane_gap_mm(xi, psi);
    if (gap == no_cut) return no_cut;
    if (m.fa <= 0.0) return 1e3 * gap;
    const double lift = m.axial_lift_mm(v_um * 1e-3 - pass.axial_center_mm);
    if (lift == no_cut) return no_cut;
    return 1e3 * (gap + m.tan_a * lift);
}

inline double cut_depth_um(const geom::GearSpec& g, const geom::ShaperSpec& s,
                           const GenerationPass& pass, double u_arc_um) {
    const FellowsEnvelope m = FellowsEnvelope::make(g, s);
    const double xi = geom::roll_at_arc_length(m.rb2, u_arc_um * 1e-3);
    const double gap = m.gap_mm(xi, deg2rad(pass.wheel_angle_deg));
    return gap == no_cut ? no_cut : 1e3 * gap;
}

// ---------------------------------------------------------------------------
// Envelope simulation
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return x;
}

inline void check_envelope(std::vector<double>& dev_um) {
    std::size_t missed = 0;
    for (double& d : dev_um) {
        if (d == no_cut) {
            ++missed;
        } else if (d < 0.0) {
            if (d < -1e-9)
                throw Error("generation: tool cuts below the nominal flank by " +
                            std::to_string(-d) + " um");
            d = 0.0;
        }
    }
    if (missed > 0)
        throw EmptyEnvelope("generation: " + std::to_string(missed) + " of " +
                            std::to_string(dev_um.size()) + " flank cells never cut by any pass");
}

}  // namespace detail

inline SimulationResult simulate_hobbing(const geom::GearSpec& g, const geom::HobSpec& h,
                                         const GenerationParams& params,
                                         std::vector<GenerationPass> passes) {
    params.validate();
    const HobEnvelope m = HobEnvelope::make(g, h);
    const std::size_t nu = params.grid_nu, nv = params.grid_nv, np = passes.size();
    if (np == 0) throw EmptyEnvelope("generation: empty pass schedule");

    SimulationResult res;
    res.grid.gear = g;
    res.grid.u_axis_um = detail::linspace(1e3 * geom::involute_arc_length(m.rb, m.xi_form),
                                          1e3 * geom::involute_arc_length(m.rb, m.xi_tip), nu);
    res.grid.v_axis_um = detail::linspace(0.0, 1e3 * g.face_width_mm, nv);

    std::vector<double> xi(nu);
    for (std::size_t i = 0; i < nu; ++i)
        xi[i] = geom::roll_at_arc_length(m.rb, res.grid.u_axis_um[i] * 1e-3);

    // Separable pass tables: in-plane clearance per profile sample and the
    // projected body drop per axial sample.
    std::vector<double> gin(np * nu), ax(np * nv, 0.0);
    for (std::size_t k = 0; k < np; ++k) {
        const double psi = deg2rad(std::remainder(passes[k].wheel_angle_deg, 360.0));
        for (std::size_t i = 0; i < nu; ++i)
            gin[k * nu + i] = m.inplane_gap_mm(xi[i], psi);
        if (m.fa > 0.0) {
            for (std::size_t j = 0; j < nv; ++j) {
                const double lift =
                    m.axial_lift_mm(res.grid.v_axis_um[j] * 1e-3 - passes[k].axial_center_mm);
                ax[k * nv + j] = lift == no_cut ? no_cut : m.tan_a * lift;
            }
        }
    }

    std::vector<double> raw(nu * nv, no_cut);
    for (std::size_t k = 0; k < np; ++k)
        for (std::size_t i = 0; i < nu; ++i) {
            const double gk = gin[k * nu + i];
            if (gk == no_cut) continue;
            double* row = raw.data() + i * nv;
            const double* axk = ax.data() + k * nv;
            for (std::size_t j = 0; j < nv; ++j)
                row[j] = std::min(row[j], gk + axk[j]);
        }

    res.grid.deviations_um.resize(nu * nv);
    for (std::size_t c = 0; c < raw.size(); ++c)
        res.grid.deviations_um[c] = raw[c] == no_cut ? no_cut : 1e3 * raw[c];
    detail::check_envelope(res.grid.deviations_um);

    res.engaged_pass_count = 0;
    for (std::size_t k = 0; k < np; ++k) {
        bool engaged = false;
        for (std::size_t i = 0; i < nu && !engaged; ++i) {
            const double gk = gin[k * nu + i];
            if (gk == no_cut) continue;
            const double* row = raw.data() + i * nv;
            const double* axk = ax.data() + k * nv;
            for (std::size_t j = 0; j < nv; ++j)
                if (gk + axk[j] == row[j]) {
                    engaged = true;
                    break;
                }
        }
        if (engaged) ++res.engaged_pass_count;
    }
    res.passes = std::move(passes);
    return res;
}

inline SimulationResult simulate_hobbing(const geom::GearSpec& g, const geom::HobSpec& h,
                                         const GenerationParams& params) {
    return simulate_hobbing(g, h, params, plan_passes(g, h, params));
}

inline SimulationResult simulate_fellows(const geom::GearSpec& g, const geom::ShaperSpec& s,
                                         const GenerationParams& params,
                                         std::vector<GenerationPass> passes) {
    params.validate();
    const FellowsEnvelope m = FellowsEnvelope::make(g, s);
    const std::size_t nu = params.grid_nu, nv = params.grid_nv, np = passes.size();
    if (np == 0) throw EmptyEnvelope("generation: empty pass schedule");

    SimulationResult res;
    res.grid.gear = g;
    res.grid.u_axis_um = detail::linspace(1e3 * geom::involute_arc_length(m.rb2, m.xi_lo),
                                          1e3 * geom::involute_arc_length(m.rb2, m.xi_tip), nu);
    res.grid.v_axis_um = detail::linspace(0.0, 1e3 * g.face_width_mm, nv);

    // Strokes run along the face width, so each profile sample carries one
    // clearance broadcast across every axial sample.
    std::vector<double> dev_u(nu, no_cut);
    std::vector<std::size_t> win(nu, np);
    for (std::size_t k = 0; k < np; ++k) {
        const double phi = deg2rad(passes[k].wheel_angle_deg);
        for (std::size_t i = 0; i < nu; ++i) {
            const double xi = geom::roll_at_arc_length(m.rb2, res.grid.u_axis_um[i] * 1e-3);
            const double gap = m.gap_mm(xi, phi);
            if (gap < dev_u[i]) {
                dev_u[i] = gap;
                win[i] = k;
            }
        }
    }

    res.grid.deviations_um.resize(nu * nv);
    for (std::size_t i = 0; i < nu; ++i) {
        const double d = dev_u[i] == no_cut ? no_cut : 1e3 * dev_u[i];
        for (std::size_t j = 0; j < nv; ++j) res.grid.deviations_um[i * nv + j] = d;
    }
    detail::check_envelope(res.grid.deviations_um);

    std::vector<std::uint8_t> engaged(np, 0);
    for (std::size_t i = 0; i < nu; ++i)
        if (win[i] < np) engaged[win[i]] = 1;
    // Count ties as well: a pass engages if it attains the envelope anywhere.
    for (std::size_t k = 0; k < np; ++k) {
        if (engaged[k]) continue;
        const double phi = deg2rad(passes[k].wheel_angle_deg);
        for (std::size_t i = 0; i < nu; ++i) {
            const double xi = geom::roll_at_arc_length(m.rb2, res.grid.u_axis_um[i] * 1e-3);
            if (m.gap_mm(xi, phi) == dev_u[i]) {
                engaged[k] = 1;
                break;
            }
        }
    }
    res.engaged_pass_count = 0;
    for (std::uint8_t e : engaged) res.engaged_pass_count += e;
    res.passes = std::move(passes);
    return res;
}

inline SimulationResult simulate_fellows(const geom::GearSpec& g, const geom::ShaperSpec& s,
                                         const GenerationParams& params) {
    return simulate_fellows(g, s, params, plan_passes(g, s, params));
}

// ---------------------------------------------------------------------------
// Trace extraction
// ---------------------------------------------------------------------------

enum class TraceDirection { along_profile, along_helix };

inline prof::Profile extract_profile(const FlankGrid& grid, TraceDirection dir,
                                     std::size_t position) {
    const std::size_t nu = grid.nu(), nv = grid.nv();
    if (nu < 2 || nv < 2) throw InvalidParams("extract_profile: grid too small");
    prof::Profile p;
    if (dir == TraceDirection::along_profile) {
        if (position >= nv) throw InvalidParams("extract_profile: axial index out of range");
        p.dx_um = (grid.u_axis_um.back() - grid.u_axis_um.front()) / double(nu - 1);
        p.z.resize(nu);
        for (std::size_t i = 0; i < nu; ++i) p.z[i] = grid.at(i, position);
    } else {
        if (position >= nu) throw InvalidParams("extract_profile: profile index out of range");
        p.dx_um = (grid.v_axis_um.back() - grid.v_axis_um.front()) / double(nv - 1);
        p.z.resize(nv);
        for (std::size_t j = 0; j < nv; ++j) p.z[j] = grid.at(position, j);
    }
    return p;
}

}  // namespace gearlab::sim
