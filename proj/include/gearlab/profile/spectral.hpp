#pragma once
// Spectral descriptions of a trace: autocorrelation, one-sided power
// spectrum, cumulated power over wavelength and the knee of that curve.
//
// Spectrum conventions (rectangular window, mean removed):
//   bin k = 1..n/2 carries power P_k = 2|X_k|^2/n^2 (half that at Nyquist),
//   so sum(P_k) equals the population variance Pq^2 exactly (Parseval).
// Series are stored with wavelength ascending; displayed spectral density is
// P_k * n * dx (um^3).

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "../detail/fft.hpp"
#include "profile.hpp"

namespace gearlab::prof {

// Biased linear autocorrelation (lag 0..n/2), normalised to acf(0) = 1.
inline SpectrumSeries autocorrelation(const Profile& p) {
    p.validate();
    const std::size_t n = p.n();
    const double m = detail::mean(p.z);
    std::vector<double> z0(n);
    for (std::size_t i = 0; i < n; ++i) z0[i] = p.z[i] - m;

    const std::size_t nfft = detail::next_pow2(2 * n);
    std::vector<double> padded(nfft, 0.0);
    std::copy(z0.begin(), z0.end(), padded.begin());
    auto spec = detail::fft_r2c(padded);
    for (auto& c : spec) c = std::norm(c);
    auto corr = detail::fft_c2r(spec, nfft);

    const double c0 = corr[0];
    if (c0 <= 0.0) throw DegenerateCurve("autocorrelation: flat trace has no correlation curve");
    SpectrumSeries s;
    s.x_label = "lag_um";
    s.value_label = "acf";
    const std::size_t lags = n / 2;
    s.x.reserve(lags + 1);
    s.value.reserve(lags + 1);
    for (std::size_t k = 0; k <= lags; ++k) {
        s.x.push_back(double(k) * p.dx_um);
        // Biased estimate: divide by n regardless of overlap.
        s.value.push_back(corr[k] / c0);
    }
    return s;
}

// First lag (um) where the correlation falls below the threshold, linearly
// interpolated; empty when the curve stays above it over the available lags.
inline std::optional<double> correlation_length(const SpectrumSeries& acf, double threshold = 0.1) {
    if (acf.x.size() < 2) throw InsufficientData("correlation_length: series too short");
    for (std::size_t i = 1; i < acf.x.size(); ++i) {
        if (acf.value[i] < threshold) {
            const double a = acf.value[i - 1], b = acf.value[i];
            const double t = (a - threshold) / (a - b);
            return acf.x[i - 1] + t * (acf.x[i] - acf.x[i - 1]);
        }
    }
    return std::nullopt;
}

struct PowerSpectrum {
    SpectrumSeries density;    // wavelength_um ascending vs density um^3
    SpectrumSeries power;      // wavelength_um ascending vs bin power um^2
    SpectrumSeries cumulated;  // wavelength_um ascending vs cumulative power um^2
    double total_power_um2 = 0.0;  // == Pq^2
};

inline PowerSpectrum power_spectrum(const Profile& p) {
    p.validate();
    const std::size_t n = p.n();
    if (n < 4) throw InsufficientData("power_spectrum: need at least 4 samples");
    const double m = detail::mean(p.z);
    std::vector<double> z0(n);
    for (std::size_t i = 0; i < n; ++i) z0[i] = p.z[i] - m;
    auto spec = detail::fft_r2c(z0);

    PowerSpectrum out;
    out.density.x_label = out.power.x_label = out.cumulated.x_label = "wavelength_um";
    out.density.value_label = "density_um3";
    out.power.value_label = "power_um2";
    out.cumulated.value_label = "cumulative_power_um2";
    const std::size_t kmax = n / 2;
    // Fill with wavelength ascending: k = kmax down to 1.
    for (std::size_t k = kmax; k >= 1; --k) {
        const double lambda = double(n) * p.dx_um / double(k);
        double pk = std::norm(spec[k]) / (double(n) * double(n));
        if (!(n % 2 == 0 && k == kmax)) pk *= 2.0;
        out.power.x.push_back(lambda);
        out.power.value.push_back(pk);
        out.density.x.push_back(lambda);
        out.density.value.push_back(pk * double(n) * p.dx_um);
        out.total_power_um2 += pk;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < out.power.x.size(); ++i) {
        acc += out.power.value[i];
        out.cumulated.x.push_back(out.power.x[i]);
        out.cumulated.value.push_back(acc);
    }
    return out;
}

// Knee of a cumulative spectrum, drawn over normalised log10-wavelength vs
// normalised cumulative power. The staircase is first reduced to its least
// concave majorant (upper hull), which concentrates the curve's total turning
// at its structurally significant corners; the knee is the interior hull
// vertex of greatest Menger curvature. Evaluating raw sample triples instead
// would reward grid-scale kinks (a small corner circumscribes a small
// circle), so roundoff wiggles and minor harmonics could outscore the
// dominant elbow. Ties resolve to the shorter wavelength; empty when the
// curve is degenerate or the majorant has no interior vertex.
inline std::optional<double> spectrum_knee(const SpectrumSeries& cumulated) {
    const std::size_t n = cumulated.x.size();
    if (n < 3) return std::nullopt;
    const double total = cumulated.value.back();
    if (!(total > 0.0)) return std::nullopt;
    const double lx0 = std::log10(cumulated.x.front());
    const double lx1 = std::log10(cumulated.x.back());
    if (!(lx1 > lx0)) return std::nullopt;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = (std::log10(cumulated.x[i]) - lx0) / (lx1 - lx0);
        ys[i] = cumulated.value[i] / total;
    }
    // Upper hull by monotone chain; collinear runs collapse to their ends.
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull.back();
            const double cross = (xs[b] - xs[a]) * (ys[i] - ys[b]) -
                                 (ys[b] - ys[a]) * (xs[i] - xs[b]);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    double best = 0.0;
    std::optional<double> knee;
    for (std::size_t j = 1; j + 1 < hull.size(); ++j) {
        const std::size_t a = hull[j - 1], b = hull[j], c = hull[j + 1];
        const double abx = xs[b] - xs[a], aby = ys[b] - ys[a];
        const double bcx = xs[c] - xs[b], bcy = ys[c] - ys[b];
        const double cross = abx * bcy - aby * bcx;
        if (cross >= 0.0) continue;
        const double ab = std::hypot(abx, aby);
        const double bc = std::hypot(bcx, bcy);
        const double ca = std::hypot(xs[c] - xs[a], ys[c] - ys[a]);
        if (ab * bc * ca == 0.0) continue;
        const double curv = 2.0 * std::abs(cross) / (ab * bc * ca);
        if (curv > best) {
            best = curv;
            knee = cumulated.x[b];
        }
    }
    return knee;
}

}  // namespace gearlab::prof
