#pragma once
// Sampled whole-wheel flank geometry for the deviation measurements: every
// tooth carries both flanks as polar polylines theta(r) about the measuring
// axis. Builders produce the exact involute wheel and the usual synthetic
// error injections (rigid rotation, per-tooth arc offsets, thinning,
// eccentricity).

#include <cmath>
#include <cstddef>
#include <vector>

#include "../core.hpp"
#include "../gear_geometry.hpp"

namespace gearlab::acc {

enum class FlankSide { right, left };  // right = lower angle side of the tooth

// One flank sampled over ascending radii; angles about the wheel axis.
struct FlankTrace {
    std::vector<double> r_mm;
    std::vector<double> theta_deg;
};

struct Tooth {
    FlankTrace right;  // lower-angle side
    FlankTrace left;   // higher-angle side
};

struct ToothSet {
    std::vector<Tooth> teeth;  // ordered counter-clockwise around the wheel
    double r_ref_mm = 0.0;     // reference (pitch) circle of the measurements

    std::size_t z() const { return teeth.size(); }

    void validate() const {
        if (teeth.size() < 3) throw InsufficientData("tooth set: need at least 3 teeth");
        if (!(r_ref_mm > 0.0)) throw InvalidParams("tooth set: reference radius must be positive");
        for (const auto& t : teeth)
            for (const FlankTrace* f : {&t.right, &t.left}) {
                if (f->r_mm.size() < 2 || f->r_mm.size() != f->theta_deg.size())
                    throw InvalidParams("tooth set: flank needs matching r/theta samples");
                for (std::size_t i = 0; i + 1 < f->r_mm.size(); ++i)
                    if (!(f->r_mm[i] < f->r_mm[i + 1]))
                        throw InvalidParams("tooth set: flank radii must ascend");
                if (r_ref_mm < f->r_mm.front() || r_ref_mm > f->r_mm.back())
                    throw InvalidParams("tooth set: reference circle outside the sampled flank");
                for (double th : f->theta_deg)
                    if (!std::isfinite(th)) throw InvalidParams("tooth set: non-finite angle");
            }
    }
};

// Flank angle at a radius by linear interpolation between samples.
inline double flank_theta_deg(const FlankTrace& f, double r_mm) {
    if (r_mm < f.r_mm.front() || r_mm > f.r_mm.back())
        throw InvalidParams("flank_theta_deg: radius outside the sampled flank");
    std::size_t hi = 1;
    while (hi + 1 < f.r_mm.size() && f.r_mm[hi] < r_mm) ++hi;
    const double r0 = f.r_mm[hi - 1], r1 = f.r_mm[hi];
    const double t = (r_mm - r0) / (r1 - r0);
    return f.theta_deg[hi - 1] + t * (f.theta_deg[hi] - f.theta_deg[hi - 1]);
}

// Exact involute wheel with standard tooth thickness (half the pitch at the
// reference circle). Flanks sampled from the root circle (or the base circle
// if that lies above it) to the tip circle.
inline ToothSet nominal_wheel(const geom::GearSpec& g, std::size_t samples_per_flank = 96) {
    g.validate();
    if (samples_per_flank < 2) throw InvalidParams("nominal_wheel: need at least 2 samples");
    const double rb = g.base_radius_mm();
    const double r_lo = std::max(0.5 * g.root_diameter_mm, rb * (1.0 + 1e-9));
    const double r_hi = 0.5 * g.tip_diameter_mm;
    const double inv_ref = geom::involute_function(g.pressure_angle_deg);
    const double half_ref = pi / (2.0 * double(g.tooth_count)) + inv_ref;

    ToothSet ts;
    ts.r_ref_mm = g.pitch_radius_mm();
    ts.teeth.resize(std::size_t(g.tooth_count));
    for (std::size_t i = 0; i < ts.teeth.size(); ++i) {
        const double beta = 360.0 * double(i) / double(g.tooth_count);
        auto& tooth = ts.teeth[i];
        for (FlankTrace* f : {&tooth.right, &tooth.left}) {
            f->r_mm.resize(samples_per_flank);
            f->theta_deg.resize(samples_per_flank);
        }
        for (std::size_t k = 0; k < samples_per_flank; ++k) {
            const double r = r_lo + (r_hi - r_lo) * double(k) / double(samples_per_flank - 1);
            const double phi = std::acos(rb / r);
            const double inv_r = std::tan(phi) - phi;
            const double spread = rad2deg(half_ref - inv_r);
            tooth.right.r_mm[k] = tooth.left.r_mm[k] = r;
            tooth.right.theta_deg[k] = beta - spread;
            tooth.left.theta_deg[k] = beta + spread;
        }
    }
    return ts;
}

// Rigid rotation of the whole wheel.
inline ToothSet rotated_wheel(ToothSet ts, double angle_deg) {
    for (auto& t : ts.teeth)
        for (FlankTrace* f : {&t.right, &t.left})
            for (double& th : f->theta_deg) th += angle_deg;
    return ts;
}

// Rotate a single tooth by an arc measured at the reference circle.
inline ToothSet with_tooth_arc_offset(ToothSet ts, std::size_t tooth, double arc_um) {
    if (tooth >= ts.teeth.size()) throw InvalidParams("with_tooth_arc_offset: no such tooth");
    const double d_deg = rad2deg(arc_um * 1e-3 / ts.r_ref_mm);
    for (FlankTrace* f : {&ts.teeth[tooth].right, &ts.teeth[tooth].left})
        for (double& th : f->theta_deg) th += d_deg;
    return ts;
}

// Thin a single tooth symmetrically by a total arc at the reference circle.
inline ToothSet with_tooth_thinned(ToothSet ts, std::size_t tooth, double arc_um) {
    if (tooth >= ts.teeth.size()) throw InvalidParams("with_tooth_thinned: no such tooth");
    const double d_deg = rad2deg(0.5 * arc_um * 1e-3 / ts.r_ref_mm);
    for (double& th : ts.teeth[tooth].right.theta_deg) th += d_deg;
    for (double& th : ts.teeth[tooth].left.theta_deg) th -= d_deg;
    return ts;
}

// Widen a single tooth space: both flanks facing gap g (between tooth g and
// tooth g+1) recede by the given arc at the reference circle.
inline ToothSet with_gap_widened(ToothSet ts, std::size_t gap, double arc_um) {
    if (gap >= ts.teeth.size()) throw InvalidParams("with_gap_widened: no such gap");
    const double d_deg = rad2deg(arc_um * 1e-3 / ts.r_ref_mm);
    for (double& th : ts.teeth[gap].left.theta_deg) th -= d_deg;
    for (double& th : ts.teeth[(gap + 1) % ts.teeth.size()].right.theta_deg) th += d_deg;
    return ts;
}

// Tooth positions offset by a sine over the wheel: tooth i moves by an arc of
// amplitude_um * sin(2 pi i / z + phase).
inline ToothSet with_pitch_sine(ToothSet ts, double amplitude_um, double phase_deg = 0.0) {
    const std::size_t z = ts.teeth.size();
    for (std::size_t i = 0; i < z; ++i) {
        const double arc =
            amplitude_um * std::sin(2.0 * pi * double(i) / double(z) + deg2rad(phase_deg));
        const double d_deg = rad2deg(arc * 1e-3 / ts.r_ref_mm);
        for (FlankTrace* f : {&ts.teeth[i].right, &ts.teeth[i].left})
            for (double& th : f->theta_deg) th += d_deg;
    }
    return ts;
}

// Displace the wheel centre by e off the measuring axis; flank samples are
// re-expressed about the measuring axis.
inline ToothSet eccentric_wheel(ToothSet ts, double e_um, double direction_deg = 0.0) {
    const double ex = e_um * 1e-3 * std::cos(deg2rad(direction_deg));
    const double ey = e_um * 1e-3 * std::sin(deg2rad(direction_deg));
    for (auto& t : ts.teeth)
        for (FlankTrace* f : {&t.right, &t.left})
            for (std::size_t k = 0; k < f->r_mm.size(); ++k) {
                const double a = deg2rad(f->theta_deg[k]);
                const double x = f->r_mm[k] * std::cos(a) + ex;
                const double y = f->r_mm[k] * std::sin(a) + ey;
                f->r_mm[k] = std::hypot(x, y);
                // atan2 wraps at +-180: rebase onto the sample's original
                // branch (the displacement only moves angles by arcminutes)
                const double raw = rad2deg(std::atan2(y, x));
                f->theta_deg[k] = raw + 360.0 * std::round((f->theta_deg[k] - raw) / 360.0);
            }
    return ts;
}

}  // namespace gearlab::acc
