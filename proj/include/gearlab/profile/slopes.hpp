#pragma once
// Slope parameters and the rising/falling decomposition of a trace.
//
// Three derivative stencils are available: 2-point forward, 3-point central
// and the 7-point central stencil
//   (z[i+3] - 9 z[i+2] + 45 z[i+1] - 45 z[i-1] + 9 z[i-2] - z[i-3]) / (60 dx)
// which is the default for all slope statistics.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "profile.hpp"

namespace gearlab::prof {

enum class SlopeStencil { two_point, three_point, seven_point };

// Slopes (um/um) at every sample where the stencil fits.
inline std::vector<double> slope_series(const Profile& p, SlopeStencil stencil) {
    p.validate();
    const std::size_t n = p.n();
    const double dx = p.dx_um;
    std::vector<double> s;
    switch (stencil) {
        case SlopeStencil::two_point:
            if (n < 2) throw InsufficientData("slopes: need 2 samples");
            for (std::size_t i = 0; i + 1 < n; ++i) s.push_back((p.z[i + 1] - p.z[i]) / dx);
            break;
        case SlopeStencil::three_point:
            if (n < 3) throw InsufficientData("slopes: need 3 samples");
            for (std::size_t i = 1; i + 1 < n; ++i)
                s.push_back((p.z[i + 1] - p.z[i - 1]) / (2.0 * dx));
            break;
        case SlopeStencil::seven_point:
            if (n < 7) throw InsufficientData("slopes: need 7 samples");
            for (std::size_t i = 3; i + 3 < n; ++i)
                s.push_back((p.z[i + 3] - 9.0 * p.z[i + 2] + 45.0 * p.z[i + 1] -
                             45.0 * p.z[i - 1] + 9.0 * p.z[i - 2] - p.z[i - 3]) /
                            (60.0 * dx));
            break;
    }
    return s;
}

struct SlopeParams {
    double PDa = 0.0;       // mean absolute slope, um/um
    double PDq = 0.0;       // rms slope, um/um
    double Plq_um = 0.0;    // 2*pi*Pq/PDq, um
};

inline SlopeParams slope_params(const Profile& p,
                                SlopeStencil stencil = SlopeStencil::seven_point) {
    const auto s = slope_series(p, stencil);
    if (s.empty()) throw InsufficientData("slope_params: empty slope series");
    double sa = 0.0, sq = 0.0;
    for (double v : s) {
        sa += std::abs(v);
        sq += v * v;
    }
    SlopeParams out;
    out.PDa = sa / double(s.size());
    out.PDq = std::sqrt(sq / double(s.size()));
    if (out.PDq > 0.0) {
        double m = detail::mean(p.z), acc = 0.0;
        for (double z : p.z) acc += (z - m) * (z - m);
        const double pq = std::sqrt(acc / double(p.n()));
        out.Plq_um = 2.0 * pi * pq / out.PDq;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rising/falling decomposition: every interior sample is classified as
// rising (neighbours strictly ascending through it), falling, or extremal
// (neither). By construction rising + falling + extremal covers the interior.
// ---------------------------------------------------------------------------

struct ConregularClass {
    std::size_t samples = 0;
    double total_length_um = 0.0;
    std::optional<double> mean_slope;  // 7-point stencil where it fits
};

struct ConregularResult {
    ConregularClass rising;
    ConregularClass falling;
    std::size_t extremum_samples = 0;
    std::size_t interior_samples = 0;
};

inline ConregularResult conregular_analysis(const Profile& p) {
    p.validate();
    if (p.n() < 3) throw InsufficientData("conregular: need at least 3 samples");
    const auto s7 = slope_series(p, p.n() >= 7 ? SlopeStencil::seven_point
                                               : SlopeStencil::three_point);
    const std::size_t off = p.n() >= 7 ? 3 : 1;  // index of first stencilled sample
    ConregularResult out;
    double rise_slope = 0.0, fall_slope = 0.0;
    std::size_t rise_sl_n = 0, fall_sl_n = 0;
    for (std::size_t i = 1; i + 1 < p.n(); ++i) {
        ++out.interior_samples;
        const bool up = p.z[i - 1] < p.z[i] && p.z[i] < p.z[i + 1];
        const bool down = p.z[i - 1] > p.z[i] && p.z[i] > p.z[i + 1];
        if (up || down) {
            ConregularClass& c = up ? out.rising : out.falling;
            ++c.samples;
            c.total_length_um += p.dx_um;
            if (i >= off && i - off < s7.size()) {
                (up ? rise_slope : fall_slope) += s7[i - off];
                ++(up ? rise_sl_n : fall_sl_n);
            }
        } else {
            ++out.extremum_samples;
        }
    }
    if (rise_sl_n) out.rising.mean_slope = rise_slope / double(rise_sl_n);
    if (fall_sl_n) out.falling.mean_slope = fall_slope / double(fall_sl_n);
    return out;
}

// Cumulative sum of positive height increments along the trace.
inline SpectrumSeries cumulative_rise_series(const Profile& p) {
    p.validate();
    SpectrumSeries s;
    s.x_label = "x_um";
    s.value_label = "cumulative_rise_um";
    s.x.reserve(p.n());
    s.value.reserve(p.n());
    double acc = 0.0;
    s.x.push_back(0.0);
    s.value.push_back(0.0);
    for (std::size_t i = 1; i < p.n(); ++i) {
        acc += std::max(0.0, p.z[i] - p.z[i - 1]);
        s.x.push_back(p.x_at(i));
        s.value.push_back(acc);
    }
    return s;
}

// Height-variance anisotropy over a set of direction traces:
// (max Pq^2 - min Pq^2) / max Pq^2. All-flat sets have no anisotropy.
inline double anisotropy_coefficient(const std::vector<Profile>& traces) {
    if (traces.size() < 2) throw InsufficientData("anisotropy: need at least two traces");
    double vmax = 0.0, vmin = 0.0;
    bool first = true;
    for (const auto& t : traces) {
        t.validate();
        const double m = detail::mean(t.z);
        double acc = 0.0;
        for (double z : t.z) acc += (z - m) * (z - m);
        const double v = acc / double(t.n());
        if (first) {
            vmax = vmin = v;
            first = false;
        } else {
            vmax = std::max(vmax, v);
            vmin = std::min(vmin, v);
        }
    }
    if (vmax <= 0.0)
        throw DegenerateCurve("anisotropy undefined: all traces are flat");
    return (vmax - vmin) / vmax;
}

}  // namespace gearlab::prof
