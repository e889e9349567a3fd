#pragma once
// Wheel deviation measurements against the nominal geometry: profile and
// helix form ranges from a flank deviation grid, pitch errors from the
// same-side flank positions at the reference circle, runout from a simulated
// ball probe settling in each tooth space, and chordal thickness variation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "../core.hpp"
#include "../generation.hpp"
#include "tooth_set.hpp"

namespace gearlab::acc {

struct FormDeviations {
    double F_alpha_um = 0.0;  // worst aligned range along the profile
    double F_beta_um = 0.0;   // worst aligned range along the face width
};

// Range (max-min) of a mean-aligned slice of the deviation grid between the
// given fractions of its span; the lateral direction just selects traces.
namespace detail_acc {

inline double aligned_range_um(const std::vector<double>& trace) {
    double mean = 0.0;
    for (double v : trace) mean += v;
    mean /= double(trace.size());
    double lo = 1e300, hi = -1e300;
    for (double v : trace) {
        lo = std::min(lo, v - mean);
        hi = std::max(hi, v - mean);
    }
    return hi - lo;
}

}  // namespace detail_acc

inline FormDeviations form_deviations(const sim::FlankGrid& f, double eval_lo = 0.05,
                                      double eval_hi = 0.95) {
    if (!(eval_lo >= 0.0) || !(eval_hi <= 1.0) || !(eval_lo < eval_hi))
        throw InvalidParams("form_deviations: evaluation range must satisfy 0 <= lo < hi <= 1");
    const std::size_t nu = f.nu(), nv = f.nv();
    if (nu < 2 || nv < 1) throw InsufficientData("form_deviations: grid too small");

    auto window = [&](std::size_t n) {
        const std::size_t a = std::size_t(std::ceil(eval_lo * double(n - 1)));
        const std::size_t b = std::size_t(std::floor(eval_hi * double(n - 1)));
        if (b < a + 1) throw InvalidParams("form_deviations: evaluation window is empty");
        return std::pair<std::size_t, std::size_t>(a, b);
    };

    FormDeviations out;
    std::vector<double> trace;
    const auto [ua, ub] = window(nu);
    for (std::size_t iv = 0; iv < nv; ++iv) {
        trace.clear();
        for (std::size_t iu = ua; iu <= ub; ++iu) trace.push_back(f.at(iu, iv));
        out.F_alpha_um = std::max(out.F_alpha_um, detail_acc::aligned_range_um(trace));
    }
    if (nv >= 2) {
        const auto [va, vb] = window(nv);
        for (std::size_t iu = 0; iu < nu; ++iu) {
            trace.clear();
            for (std::size_t iv = va; iv <= vb; ++iv) trace.push_back(f.at(iu, iv));
            out.F_beta_um = std::max(out.F_beta_um, detail_acc::aligned_range_um(trace));
        }
    }
    return out;
}

struct PitchDeviations {
    std::vector<double> single_um;      // actual - nominal pitch, per gap (circular)
    std::vector<double> cumulative_um;  // position of tooth k relative to tooth 0
    double fpt_um = 0.0;                // max |single|
    double Fp_um = 0.0;                 // range of the cumulative series
};

inline PitchDeviations pitch_deviations(const ToothSet& ts, FlankSide side = FlankSide::left) {
    ts.validate();
    const std::size_t z = ts.z();
    std::vector<double> theta(z);
    for (std::size_t i = 0; i < z; ++i) {
        const FlankTrace& f = side == FlankSide::left ? ts.teeth[i].left : ts.teeth[i].right;
        theta[i] = flank_theta_deg(f, ts.r_ref_mm);
    }
    const double nominal_um = deg2rad(360.0 / double(z)) * ts.r_ref_mm * 1e3;

    PitchDeviations out;
    out.single_um.resize(z);
    for (std::size_t i = 0; i < z; ++i) {
        double d = theta[(i + 1) % z] - theta[i];
        d -= 360.0 * std::floor(d / 360.0 + 0.5);  // nearest-branch wrap
        out.single_um[i] = deg2rad(d) * ts.r_ref_mm * 1e3 - nominal_um;
        out.fpt_um = std::max(out.fpt_um, std::abs(out.single_um[i]));
    }
    out.cumulative_um.resize(z);
    out.cumulative_um[0] = 0.0;
    for (std::size_t i = 1; i < z; ++i)
        out.cumulative_um[i] = out.cumulative_um[i - 1] + out.single_um[i - 1];
    const auto [lo, hi] = std::minmax_element(out.cumulative_um.begin(), out.cumulative_um.end());
    out.Fp_um = *hi - *lo;
    return out;
}

struct RunoutResult {
    std::vector<double> ball_r_mm;  // settled ball-centre radius per gap
    double Fr_um = 0.0;             // range over the gaps
};

namespace detail_acc {

inline double dist_to_flank_mm(double cx, double cy, const FlankTrace& f) {
    double best = 1e300;
    double px = 0.0, py = 0.0;
    for (std::size_t k = 0; k < f.r_mm.size(); ++k) {
        const double a = deg2rad(f.theta_deg[k]);
        const double x = f.r_mm[k] * std::cos(a), y = f.r_mm[k] * std::sin(a);
        if (k > 0) {
            const double ux = x - px, uy = y - py;
            const double len2 = ux * ux + uy * uy;
            double t = ((cx - px) * ux + (cy - py) * uy) / len2;
            t = std::clamp(t, 0.0, 1.0);
            const double dx = cx - (px + t * ux), dy = cy - (py + t * uy);
            best = std::min(best, std::hypot(dx, dy));
        }
        px = x;
        py = y;
    }
    return best;
}

// Radius at which a ball descending along the fixed ray first touches the
// flank: the outermost crossing of clearance = 0. In a wide tooth space a ray
// hugging one flank may clear the opposite flank all the way down; that flank
// then does not constrain the ball, reported as the bottom of the ray.
inline double contact_radius_mm(const FlankTrace& f, double theta_deg, double rho_mm, double r_lo,
                                double r_hi) {
    const double cs = std::cos(deg2rad(theta_deg)), sn = std::sin(deg2rad(theta_deg));
    auto clearance = [&](double rc) { return dist_to_flank_mm(rc * cs, rc * sn, f) - rho_mm; };
    if (clearance(r_hi) <= 0.0)
        throw InvalidParams("runout: probe too large for the tooth space");
    const int scan = 64;
    double hi = r_hi, lo = r_hi;
    bool bracket = false;
    for (int k = 1; k <= scan; ++k) {
        lo = r_hi + (r_lo - r_hi) * double(k) / double(scan);
        if (clearance(lo) <= 0.0) {
            bracket = true;
            break;
        }
        hi = lo;
    }
    if (!bracket) return r_lo;
    for (int it = 0; it < 64; ++it) {
        const double mid = 0.5 * (lo + hi);
        (clearance(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail_acc

inline RunoutResult runout(const ToothSet& ts, double probe_diameter_mm) {
    ts.validate();
    if (!(probe_diameter_mm > 0.0)) throw InvalidParams("runout: probe diameter must be positive");
    const double rho = 0.5 * probe_diameter_mm;
    const std::size_t z = ts.z();

    RunoutResult out;
    out.ball_r_mm.resize(z);
    for (std::size_t g = 0; g < z; ++g) {
        const FlankTrace& fl = ts.teeth[g].left;
        FlankTrace fr = ts.teeth[(g + 1) % z].right;
        if (g + 1 == z)
            for (double& th : fr.theta_deg) th += 360.0;

        const double r_lo = std::max(fl.r_mm.front(), fr.r_mm.front());
        const double r_hi = std::max(fl.r_mm.back(), fr.r_mm.back()) + probe_diameter_mm;
        double ta = flank_theta_deg(fl, ts.r_ref_mm);
        double tb = flank_theta_deg(fr, ts.r_ref_mm);
        if (!(tb > ta)) throw InvalidParams("runout: degenerate tooth space");

        // The settled centre minimises, over the ray angle, the radius at
        // which the ball first touches either flank; golden-section search on
        // that V-shaped profile.
        auto depth = [&](double th) {
            return std::max(detail_acc::contact_radius_mm(fl, th, rho, r_lo, r_hi),
                            detail_acc::contact_radius_mm(fr, th, rho, r_lo, r_hi));
        };
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = ta, b = tb;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = depth(x1), f2 = depth(x2);
        for (int it = 0; it < 64; ++it) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = depth(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = depth(x2);
            }
        }
        out.ball_r_mm[g] = std::min(f1, f2);
        if (out.ball_r_mm[g] <= r_lo + 1e-9)
            throw InvalidParams("runout: probe never contacts the flank (too small)");
    }
    const auto [lo, hi] = std::minmax_element(out.ball_r_mm.begin(), out.ball_r_mm.end());
    out.Fr_um = (*hi - *lo) * 1e3;
    return out;
}

inline double runout_Fr_um(const ToothSet& ts, double probe_diameter_mm) {
    return runout(ts, probe_diameter_mm).Fr_um;
}

struct ThicknessVariation {
    std::vector<double> chordal_mm;  // chordal tooth thickness at the reference circle
    double Rs_um = 0.0;              // max - min over the teeth
};

inline ThicknessVariation thickness_variation(const ToothSet& ts) {
    ts.validate();
    ThicknessVariation out;
    out.chordal_mm.resize(ts.z());
    for (std::size_t i = 0; i < ts.z(); ++i) {
        const double spread =
            flank_theta_deg(ts.teeth[i].left, ts.r_ref_mm) -
            flank_theta_deg(ts.teeth[i].right, ts.r_ref_mm);
        if (!(spread > 0.0)) throw InvalidParams("thickness_variation: flank sides cross");
        out.chordal_mm[i] = 2.0 * ts.r_ref_mm * std::sin(0.5 * deg2rad(spread));
    }
    const auto [lo, hi] = std::minmax_element(out.chordal_mm.begin(), out.chordal_mm.end());
    out.Rs_um = (*hi - *lo) * 1e3;
    return out;
}

inline double thickness_variation_Rs_um(const ToothSet& ts) {
    return thickness_variation(ts).Rs_um;
}

// Aggregate of every wheel deviation measure, with the across-teeth spreads.
struct DeviationReport {
    double F_alpha_um = 0.0;
    double F_beta_um = 0.0;
    double fpt_um = 0.0;
    double Fp_um = 0.0;
    double Fr_um = 0.0;
    double Rs_um = 0.0;
    double pitch_sd_um = 0.0;      // standard deviation of the single pitch errors
    double thickness_sd_um = 0.0;  // standard deviation of the chordal thicknesses
};

inline DeviationReport deviation_report(const ToothSet& ts, const sim::FlankGrid& flank,
                                        double probe_diameter_mm) {
    DeviationReport out;
    const auto form = form_deviations(flank);
    out.F_alpha_um = form.F_alpha_um;
    out.F_beta_um = form.F_beta_um;
    const auto pitch = pitch_deviations(ts);
    out.fpt_um = pitch.fpt_um;
    out.Fp_um = pitch.Fp_um;
    out.Fr_um = runout_Fr_um(ts, probe_diameter_mm);
    const auto thick = thickness_variation(ts);
    out.Rs_um = thick.Rs_um;

    auto sd = [](const std::vector<double>& v) {
        double mu = 0.0;
        for (double x : v) mu += x;
        mu /= double(v.size());
        double s2 = 0.0;
        for (double x : v) s2 += (x - mu) * (x - mu);
        return std::sqrt(s2 / double(v.size()));
    };
    out.pitch_sd_um = sd(pitch.single_um);
    out.thickness_sd_um = sd(thick.chordal_mm) * 1e3;
    return out;
}

}  // namespace gearlab::acc
