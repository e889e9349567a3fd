#pragma once
// Phase-preserving Gaussian profile filter. The weight function
//   s(x) = (1/(a*lc)) * exp(-pi * (x/(a*lc))^2),  a = sqrt(ln2/pi)
// transmits exactly 50% at the cutoff wavelength lc. The kernel is truncated
// at +-lc and renormalised; near the ends only the available part of the
// window is used (renormalised), so the outer lc/2 zones are flagged.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "profile.hpp"

namespace gearlab::prof {

struct FilterResult {
    Profile waviness;     // Gaussian mean line, um
    Profile roughness;    // input minus mean line, um
    double edge_zone_um = 0.0;  // length at each end with renormalised support
    double cutoff_mm = 0.0;
};

// Split z into waviness + roughness so the pair sums back to z exactly when
// a representable pair exists: realign (a sub-ulp adjustment) starting from
// the given mean-line value.
inline void reconcile_split(double z, double& wav, double& rough) {
    rough = z - wav;
    if (wav + rough == z) return;
    double w2 = z - rough, r2 = z - w2;
    if (w2 + r2 == z) {
        wav = w2;
        rough = r2;
        return;
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double wc[3] = {w2, std::nextafter(w2, inf), std::nextafter(w2, -inf)};
    const double rc[3] = {r2, std::nextafter(r2, inf), std::nextafter(r2, -inf)};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (wc[a] + rc[b] == z) {
                wav = wc[a];
                rough = rc[b];
                return;
            }
}

inline std::vector<double> gaussian_weights(double lc_um, double dx_um) {
    if (lc_um <= 0.0 || dx_um <= 0.0) throw InvalidParams("gaussian_weights: bad arguments");
    const double alpha = std::sqrt(std::log(2.0) / pi);
    const std::size_t m = std::size_t(std::floor(lc_um / dx_um));
    std::vector<double> w(2 * m + 1);
    double sum = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double x = (double(j) - double(m)) * dx_um;
        const double t = x / (alpha * lc_um);
        w[j] = std::exp(-pi * t * t);
        sum += w[j];
    }
    for (double& v : w) v /= sum;
    return w;
}

inline FilterResult filter_profile(const Profile& p, double cutoff_mm) {
    p.validate();
    if (cutoff_mm <= 0.0) throw InvalidParams("filter_profile: cutoff must be positive");
    const double lc_um = 1000.0 * cutoff_mm;
    if (p.evaluation_length_um() < 2.0 * lc_um)
        throw FilterLengthError("filter_profile: evaluation length shorter than twice the cutoff");
    const std::vector<double> w = gaussian_weights(lc_um, p.dx_um);
    const std::ptrdiff_t m = std::ptrdiff_t(w.size() / 2);
    const std::ptrdiff_t n = std::ptrdiff_t(p.n());

    FilterResult out;
    out.cutoff_mm = cutoff_mm;
    out.edge_zone_um = 0.5 * lc_um;
    out.waviness = p;
    out.roughness = p;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(-m, -i);
        const std::ptrdiff_t j1 = std::min<std::ptrdiff_t>(m, n - 1 - i);
        double acc = 0.0, wsum = 0.0;
        for (std::ptrdiff_t j = j0; j <= j1; ++j) {
            const double wj = w[std::size_t(j + m)];
            acc += wj * p.z[std::size_t(i + j)];
            wsum += wj;
        }
        const double z = p.z[std::size_t(i)];
        double wav = acc / wsum, rough;
        reconcile_split(z, wav, rough);
        out.waviness.z[std::size_t(i)] = wav;
        out.roughness.z[std::size_t(i)] = rough;
    }
    return out;
}

}  // namespace gearlab::prof
