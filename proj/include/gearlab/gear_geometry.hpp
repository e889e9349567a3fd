#pragma once
// Gear, hob and shaper-cutter descriptions plus the closed-form machining
// deviation estimates that go with the generating kinematics:
//
//   helix_waviness_um      : sagitta of the hob envelope between axial feed
//                            marks, evaluated at the pitch cylinder,
//   profile_scallop_um     : generating-cut scallop height at the pitch point
//                            for a hob with a finite number of flutes,
//   tangent_shift_mm       : rolling arc per wheel step at a given diameter.
//
// Units: mm for lengths, degrees for angles (see core.hpp).

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "core.hpp"

namespace gearlab::geom {

// ---------------------------------------------------------------------------
// Involute helpers. The canonical involute used everywhere starts on the
// positive x axis: a point at roll angle xi (radians) sits at radius
// rb*sqrt(1+xi^2) and polar angle xi - atan(xi).
// ---------------------------------------------------------------------------

// tan(a) - a for a in radians.
inline double involute_function(double pressure_angle_deg) {
    const double a = deg2rad(pressure_angle_deg);
    return std::tan(a) - a;
}

inline Vec2 involute_point(double base_radius_mm, double roll_angle) {
    if (base_radius_mm <= 0.0)
        throw InvalidParams("involute_point: base radius must be positive");
    if (roll_angle < 0.0)
        throw InvalidParams("involute_point: roll angle must be >= 0");
    const double c = std::cos(roll_angle), s = std::sin(roll_angle);
    return {base_radius_mm * (c + roll_angle * s), base_radius_mm * (s - roll_angle * c)};
}

// Roll angle of the involute point at a given radius (>= base radius).
inline double roll_at_radius(double base_radius_mm, double radius_mm) {
    if (base_radius_mm <= 0.0 || radius_mm < base_radius_mm)
        throw InvalidParams("roll_at_radius: need radius >= base radius > 0");
    const double q = radius_mm / base_radius_mm;
    return std::sqrt(std::max(0.0, q * q - 1.0));
}

// Arc length along the involute from its base point to roll angle xi.
inline double involute_arc_length(double base_radius_mm, double roll_angle) {
    return 0.5 * base_radius_mm * roll_angle * roll_angle;
}

// Roll angle whose involute arc length equals s (inverse of the above).
inline double roll_at_arc_length(double base_radius_mm, double arc_mm) {
    if (base_radius_mm <= 0.0 || arc_mm < 0.0)
        throw InvalidParams("roll_at_arc_length: bad arguments");
    return std::sqrt(2.0 * arc_mm / base_radius_mm);
}

// ---------------------------------------------------------------------------
// Specs
// ---------------------------------------------------------------------------

struct GearSpec {
    double module_mm = 0.0;
    int tooth_count = 0;
    double pressure_angle_deg = 20.0;
    double pitch_diameter_mm = 0.0;
    double face_width_mm = 0.0;
    double tip_diameter_mm = 0.0;
    double root_diameter_mm = 0.0;

    // Unradiused standard proportions: tip at d+2m, root at d-2.5m.
    static GearSpec standard(double module_mm, int tooth_count, double face_width_mm,
                             double pressure_angle_deg = 20.0) {
        GearSpec g;
        g.module_mm = module_mm;
        g.tooth_count = tooth_count;
        g.pressure_angle_deg = pressure_angle_deg;
        g.pitch_diameter_mm = module_mm * tooth_count;
        g.face_width_mm = face_width_mm;
        g.tip_diameter_mm = g.pitch_diameter_mm + 2.0 * module_mm;
        g.root_diameter_mm = g.pitch_diameter_mm - 2.5 * module_mm;
        g.validate();
        return g;
    }

    double pitch_radius_mm() const { return 0.5 * pitch_diameter_mm; }
    double base_radius_mm() const {
        return pitch_radius_mm() * std::cos(deg2rad(pressure_angle_deg));
    }
    double pitch_angle_deg() const { return 360.0 / tooth_count; }
    // Roll angle of the pitch point on either flank.
    double pitch_roll_angle() const { return std::tan(deg2rad(pressure_angle_deg)); }
    double tip_roll_angle() const {
        return roll_at_radius(base_radius_mm(), 0.5 * tip_diameter_mm);
    }

    void validate() const {
        if (module_mm <= 0.0) throw InvalidGeometry("gear: module must be positive");
        if (tooth_count < 4) throw InvalidGeometry("gear: need at least 4 teeth");
        if (pressure_angle_deg <= 0.0 || pressure_angle_deg >= 45.0)
            throw InvalidGeometry("gear: pressure angle outside (0, 45) deg");
        if (std::abs(pitch_diameter_mm - module_mm * tooth_count) > 1e-9)
            throw InvalidGeometry("gear: pitch diameter inconsistent with module * tooth count");
        if (face_width_mm <= 0.0) throw InvalidGeometry("gear: face width must be positive");
        if (!(root_diameter_mm < pitch_diameter_mm && pitch_diameter_mm < tip_diameter_mm))
            throw InvalidGeometry("gear: need root < pitch < tip diameter");
        if (0.5 * root_diameter_mm <= 0.0)
            throw InvalidGeometry("gear: root diameter must be positive");
    }
};

struct HobSpec {
    double tip_diameter_mm = 0.0;        // outside diameter d0 of the hob body
    int flutes = 0;                      // cutting rows per hob revolution
    int thread_starts = 1;               // worm starts
    double axial_feed_mm_per_rev = 0.0;  // table feed per wheel revolution
    double addendum_mm = 0.0;            // rack tooth depth below its pitch line
    double tip_round_mm = 0.0;           // corner radius at the rack tip
    bool protuberance = false;           // optional flank bump near the tip

    static HobSpec standard(double tip_diameter_mm, int flutes, int thread_starts,
                            double axial_feed_mm_per_rev, double module_mm) {
        HobSpec h;
        h.tip_diameter_mm = tip_diameter_mm;
        h.flutes = flutes;
        h.thread_starts = thread_starts;
        h.axial_feed_mm_per_rev = axial_feed_mm_per_rev;
        h.addendum_mm = 1.25 * module_mm;
        h.tip_round_mm = 0.38 * module_mm;
        h.validate();
        return h;
    }

    // Height below the rack pitch line where the straight flank ends and the
    // tip rounding begins.
    double straight_flank_depth_mm(double pressure_angle_deg) const {
        return addendum_mm - tip_round_mm * (1.0 - std::sin(deg2rad(pressure_angle_deg)));
    }

    void validate() const {
        if (tip_diameter_mm <= 0.0) throw InvalidGeometry("hob: tip diameter must be positive");
        if (flutes < 1) throw InvalidGeometry("hob: need at least one flute");
        if (thread_starts < 1) throw InvalidGeometry("hob: need at least one thread start");
        if (axial_feed_mm_per_rev < 0.0) throw InvalidGeometry("hob: axial feed must be >= 0");
        if (axial_feed_mm_per_rev >= tip_diameter_mm)
            throw InvalidGeometry("hob: axial feed per revolution must stay below the hob diameter");
        if (addendum_mm <= 0.0) throw InvalidGeometry("hob: addendum must be positive");
        if (tip_round_mm < 0.0 || tip_round_mm >= addendum_mm)
            throw InvalidGeometry("hob: tip round must be in [0, addendum)");
    }
};

struct ShaperSpec {
    int tooth_count = 0;               // cutter teeth z0
    int double_strokes_per_pitch = 0;  // cutting strokes while rolling one wheel pitch
    double addendum_mm = 0.0;          // cutter addendum (cuts the wheel dedendum)

    static ShaperSpec standard(int tooth_count, int double_strokes_per_pitch, double module_mm) {
        ShaperSpec s;
        s.tooth_count = tooth_count;
        s.double_strokes_per_pitch = double_strokes_per_pitch;
        s.addendum_mm = 1.25 * module_mm;
        s.validate();
        return s;
    }

    void validate() const {
        if (tooth_count < 4) throw InvalidGeometry("shaper: need at least 4 teeth");
        if (double_strokes_per_pitch < 1)
            throw InvalidGeometry("shaper: need at least one stroke per pitch");
        if (addendum_mm <= 0.0) throw InvalidGeometry("shaper: addendum must be positive");
    }
};

// Cutter radii follow from the wheel's module and pressure angle (same rack).
inline double shaper_pitch_radius_mm(const ShaperSpec& s, const GearSpec& g) {
    return 0.5 * s.tooth_count * g.module_mm;
}
inline double shaper_base_radius_mm(const ShaperSpec& s, const GearSpec& g) {
    return shaper_pitch_radius_mm(s, g) * std::cos(deg2rad(g.pressure_angle_deg));
}
inline double shaper_tip_radius_mm(const ShaperSpec& s, const GearSpec& g) {
    return shaper_pitch_radius_mm(s, g) + s.addendum_mm;
}
inline double centre_distance_mm(const ShaperSpec& s, const GearSpec& g) {
    return g.pitch_radius_mm() + shaper_pitch_radius_mm(s, g);
}

// ---------------------------------------------------------------------------
// Closed-form deviation estimates
// ---------------------------------------------------------------------------

// Height of the envelope ridge between two axial feed marks: the sagitta of
// the hob tip circle over a chord of one feed advance, projected onto the
// flank normal. Result in um.
inline double helix_waviness_um(double pressure_angle_deg, double hob_tip_diameter_mm,
                                double axial_feed_mm_per_rev) {
    if (hob_tip_diameter_mm <= 0.0)
        throw InvalidParams("helix_waviness: hob diameter must be positive");
    if (axial_feed_mm_per_rev < 0.0)
        throw InvalidParams("helix_waviness: axial feed must be >= 0");
    if (axial_feed_mm_per_rev >= hob_tip_diameter_mm)
        throw InvalidParams("helix_waviness: feed per revolution must stay below the hob diameter");
    if (pressure_angle_deg <= 0.0 || pressure_angle_deg >= 45.0)
        throw InvalidParams("helix_waviness: pressure angle outside (0, 45) deg");
    const double r0 = 0.5 * hob_tip_diameter_mm;
    const double half = 0.5 * axial_feed_mm_per_rev;
    const double sagitta = r0 - std::sqrt(r0 * r0 - half * half);
    return 1000.0 * std::tan(deg2rad(pressure_angle_deg)) * sagitta;
}

// Scallop height left on the profile at the pitch point by the finite number
// of generating cuts per pitch. Result in um.
inline double profile_scallop_um(int thread_starts, double module_mm, double pressure_angle_deg,
                                 int wheel_tooth_count, int flutes) {
    if (thread_starts < 1 || flutes < 1 || wheel_tooth_count < 4)
        throw InvalidParams("profile_scallop: bad tooth/flute counts");
    if (module_mm <= 0.0) throw InvalidParams("profile_scallop: module must be positive");
    if (pressure_angle_deg <= 0.0 || pressure_angle_deg >= 45.0)
        throw InvalidParams("profile_scallop: pressure angle outside (0, 45) deg");
    const double a = deg2rad(pressure_angle_deg);
    // Cuts per wheel revolution: flutes * z2 / z1; angular step between cuts
    // rolls an arc of r*dphi along the flank tangent at the pitch point where
    // the effective curvature radius is r*sin(a).
    const double r = 0.5 * module_mm * wheel_tooth_count;
    const double dphi = 2.0 * pi * thread_starts / (double(wheel_tooth_count) * flutes);
    const double rho = r * std::sin(a);
    return 1000.0 * rho * dphi * dphi / 8.0;
}

// Rolling arc at diameter d for one wheel step of dphi degrees. Result in mm.
inline double tangent_shift_mm(double diameter_mm, double dphi_deg) {
    if (diameter_mm <= 0.0) throw InvalidParams("tangent_shift: diameter must be positive");
    if (dphi_deg < 0.0) throw InvalidParams("tangent_shift: step must be >= 0");
    return pi * diameter_mm * dphi_deg / 360.0;
}

struct KinematicDeviationEstimate {
    double helix_waviness_um = 0.0;   // across the face, between feed marks
    double profile_scallop_um = 0.0;  // along the profile, between cuts
    double valley_spacing_mm = 0.0;   // axial distance between feed valleys
};

inline KinematicDeviationEstimate estimate_kinematic_deviations(const GearSpec& g,
                                                                const HobSpec& h) {
    g.validate();
    h.validate();
    KinematicDeviationEstimate e;
    e.helix_waviness_um =
        helix_waviness_um(g.pressure_angle_deg, h.tip_diameter_mm, h.axial_feed_mm_per_rev);
    e.profile_scallop_um = profile_scallop_um(h.thread_starts, g.module_mm, g.pressure_angle_deg,
                                              g.tooth_count, h.flutes);
    e.valley_spacing_mm = h.axial_feed_mm_per_rev;
    return e;
}

// ---------------------------------------------------------------------------
// Tool flank curves (planar, tool frame)
// ---------------------------------------------------------------------------

enum class Side { drive, coast };

struct ToolFlankCurve {
    std::vector<Vec2> points;  // ordered tip -> top, mm
    Side side = Side::drive;
};

// Rack flank of the hob in its own frame: x along the rack pitch line,
// y positive away from the wheel centre. Tip rounding included; the optional
// protuberance bump (2% of addendum/1.25 high over the lowest 30% of the
// straight flank) sticks out of the nominal flank line.
inline ToolFlankCurve tool_flank(const HobSpec& h, const GearSpec& g, Side side,
                                 std::size_t points_per_section = 64) {
    h.validate();
    g.validate();
    if (points_per_section < 2) throw InvalidParams("tool_flank: need at least 2 points");
    const double a = deg2rad(g.pressure_angle_deg);
    const double ha = h.addendum_mm;
    const double rr = h.tip_round_mm;
    const double y_straight_lo = -h.straight_flank_depth_mm(g.pressure_angle_deg);
    const double y_top = ha;  // tooth head above the pitch line, same depth
    // Flank line through the origin: x = y * tan(a); tool material on the -x
    // side (the tooth thins towards its tip at y = -ha), work on the +x side.
    std::vector<Vec2> pts;
    if (rr > 0.0) {
        // Arc centre: distance rr from the flank line and from y = -ha,
        // inside the tool material, so the arc blends tangentially into both.
        const Vec2 p0{y_straight_lo * std::tan(a), y_straight_lo};
        const Vec2 centre = p0 + Vec2{-std::cos(a), std::sin(a)} * rr;
        // From the lowest point of the arc up to the flank tangency.
        const double b0 = -pi / 2.0;
        const double b1 = -pi / 2.0 + (pi / 2.0 - a);
        for (std::size_t i = 0; i < points_per_section; ++i) {
            const double b = b0 + (b1 - b0) * double(i) / double(points_per_section);
            pts.push_back(centre + Vec2{std::cos(b), std::sin(b)} * rr);
        }
    }
    const double bump_h = h.protuberance ? 0.02 * ha / 1.25 : 0.0;
    const double bump_top = y_straight_lo + 0.3 * (y_top - y_straight_lo);
    for (std::size_t i = 0; i <= points_per_section; ++i) {
        const double y = y_straight_lo + (y_top - y_straight_lo) * double(i) / double(points_per_section);
        double x = y * std::tan(a);
        if (bump_h > 0.0 && y <= bump_top) x += bump_h;  // bulge out of the tool, into the work
        pts.push_back({x, y});
    }
    if (side == Side::coast)
        for (auto& p : pts) p.x = -p.x;
    return {std::move(pts), side};
}

// Cutter flank of the shaper in its own frame (cutter centre at the origin):
// the canonical involute of the cutter base circle from the base circle up to
// the cutter tip circle.
inline ToolFlankCurve tool_flank(const ShaperSpec& s, const GearSpec& g, Side side,
                                 std::size_t n_points = 128) {
    s.validate();
    g.validate();
    if (n_points < 2) throw InvalidParams("tool_flank: need at least 2 points");
    const double rb0 = shaper_base_radius_mm(s, g);
    const double eta_tip = roll_at_radius(rb0, shaper_tip_radius_mm(s, g));
    std::vector<Vec2> pts;
    pts.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double eta = eta_tip * double(i) / double(n_points - 1);
        Vec2 p = involute_point(rb0, eta);
        if (side == Side::coast) p.y = -p.y;
        pts.push_back(p);
    }
    return {std::move(pts), side};
}

}  // namespace gearlab::geom
