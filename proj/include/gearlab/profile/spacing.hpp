#pragma once
// Spacing parameters: PSm from mean-line up-crossings, PS from small local
// peaks accepted with a hysteresis of 1% of the total height.

#include <cmath>
#include <vector>

#include "profile.hpp"

namespace gearlab::prof {

// Interpolated positions (um) where the trace crosses its mean line upward.
inline std::vector<double> mean_line_upcrossings(const Profile& p) {
    p.validate();
    const double m = detail::mean(p.z);
    std::vector<double> xs;
    for (std::size_t i = 0; i + 1 < p.n(); ++i) {
        const double a = p.z[i] - m, b = p.z[i + 1] - m;
        if (a < 0.0 && b >= 0.0) xs.push_back(p.x_at(i) + p.dx_um * (-a) / (b - a));
    }
    return xs;
}

// Mean spacing of profile elements at the mean line, um.
inline double mean_spacing_PSm(const Profile& p) {
    const auto xs = mean_line_upcrossings(p);
    if (xs.size() < 2)
        throw NoFeatures("PSm: fewer than two mean-line up-crossings");
    return (xs.back() - xs.front()) / double(xs.size() - 1);
}

// Positions (um) of local peaks, accepted only after the trace has both
// risen and fallen by at least the hysteresis height around them.
inline std::vector<double> hysteresis_peaks(const Profile& p, double hysteresis_um) {
    p.validate();
    if (hysteresis_um < 0.0) throw InvalidParams("hysteresis_peaks: negative hysteresis");
    std::vector<double> xs;
    // Walk the trace keeping the running extrema; emit a peak when the drop
    // from the running maximum exceeds the hysteresis, after a matching rise.
    double run_max = p.z[0], run_min = p.z[0];
    std::size_t max_i = 0;
    bool armed = false;  // true once the trace pulled up out of the last valley
    for (std::size_t i = 1; i < p.n(); ++i) {
        const double z = p.z[i];
        if (z > run_max) {
            run_max = z;
            max_i = i;
        }
        run_min = std::min(run_min, z);
        if (!armed && z - run_min >= hysteresis_um) {
            armed = true;
            run_max = z;
            max_i = i;
        }
        if (armed && run_max - z >= hysteresis_um) {
            xs.push_back(p.x_at(max_i));
            armed = false;
            run_min = z;
        }
    }
    return xs;
}

// Mean spacing of small local peaks, um. Hysteresis: 1% of the total height.
inline double mean_peak_spacing_PS(const Profile& p) {
    double zmin = p.z[0], zmax = p.z[0];
    for (double z : p.z) {
        zmin = std::min(zmin, z);
        zmax = std::max(zmax, z);
    }
    if (zmax == zmin) throw NoFeatures("PS: flat trace has no peaks");
    const auto xs = hysteresis_peaks(p, 0.01 * (zmax - zmin));
    if (xs.size() < 2) throw NoFeatures("PS: fewer than two local peaks");
    return (xs.back() - xs.front()) / double(xs.size() - 1);
}

}  // namespace gearlab::prof
