#pragma once
// Peak statistics on a trace: density, mean curvature and rms height of the
// 3-point local maxima.

#include <cmath>
#include <vector>

#include "profile.hpp"

namespace gearlab::prof {

struct PeakParams {
    double Ppc3_per_um = 0.0;   // mean |z''| over peaks, 1/um
    double Pds3_per_mm = 0.0;   // peak density, 1/mm
    double Pdelta_star_um = 0.0;  // rms peak height about the mean line
    std::size_t peak_count = 0;
};

inline PeakParams peak_params(const Profile& p) {
    p.validate();
    if (p.n() < 3) throw InsufficientData("peak_params: need at least 3 samples");
    const double m = detail::mean(p.z);
    double curv = 0.0, h2 = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < p.n(); ++i) {
        if (p.z[i] >= p.z[i - 1] && p.z[i] > p.z[i + 1]) {
            ++count;
            const double second = (p.z[i + 1] - 2.0 * p.z[i] + p.z[i - 1]) / (p.dx_um * p.dx_um);
            curv += std::abs(second);
            const double d = p.z[i] - m;
            h2 += d * d;
        }
    }
    if (count == 0) throw NoFeatures("peak_params: no local peaks");
    PeakParams out;
    out.peak_count = count;
    out.Ppc3_per_um = curv / double(count);
    out.Pds3_per_mm = 1000.0 * double(count) / p.evaluation_length_um();
    out.Pdelta_star_um = std::sqrt(h2 / double(count));
    return out;
}

}  // namespace gearlab::prof
