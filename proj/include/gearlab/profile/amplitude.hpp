#pragma once
// Amplitude parameters of a trace. All moments are taken about the mean
// line of the supplied data. Psk/Pku are left unset for flat traces; the
// ten-point height is unset when the trace is too short for its segments.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "profile.hpp"

namespace gearlab::prof {

struct AmplitudeParams {
    double Pa = 0.0;
    double Pq = 0.0;
    double Pt = 0.0;             // max peak-to-valley
    double Pp = 0.0;             // highest peak above the mean line
    double Pv = 0.0;             // deepest valley below the mean line (positive)
    double Pp_over_Pt = 0.0;     // emptiness coefficient
    std::optional<double> Psk;   // unset when Pq == 0
    std::optional<double> Pku;   // unset when Pq == 0
    std::optional<double> PzJIS; // unset when the trace is shorter than 2.4 mm
};

namespace ampdetail {

// Mean of the k highest local maxima minus mean of the k deepest local
// minima over [i0, i1); falls back to the extreme samples when a side has
// no interior extrema.
inline double ten_point_height(const std::vector<double>& z, std::size_t i0, std::size_t i1) {
    std::vector<double> peaks, valleys;
    for (std::size_t i = i0 + 1; i + 1 < i1; ++i) {
        if (z[i] >= z[i - 1] && z[i] > z[i + 1]) peaks.push_back(z[i]);
        if (z[i] <= z[i - 1] && z[i] < z[i + 1]) valleys.push_back(z[i]);
    }
    if (peaks.empty()) peaks.push_back(*std::max_element(z.begin() + i0, z.begin() + i1));
    if (valleys.empty()) valleys.push_back(*std::min_element(z.begin() + i0, z.begin() + i1));
    std::sort(peaks.begin(), peaks.end(), std::greater<>());
    std::sort(valleys.begin(), valleys.end());
    const std::size_t kp = std::min<std::size_t>(5, peaks.size());
    const std::size_t kv = std::min<std::size_t>(5, valleys.size());
    double sp = 0.0, sv = 0.0;
    for (std::size_t i = 0; i < kp; ++i) sp += peaks[i];
    for (std::size_t i = 0; i < kv; ++i) sv += valleys[i];
    return sp / double(kp) - sv / double(kv);
}

}  // namespace ampdetail

inline AmplitudeParams amplitude_params(const Profile& p) {
    p.validate();
    const std::size_t n = p.n();
    const double m = detail::mean(p.z);

    AmplitudeParams out;
    double sa = 0.0, sq = 0.0, s3 = 0.0, s4 = 0.0;
    double zmin = p.z[0], zmax = p.z[0];
    for (double z : p.z) {
        const double d = z - m;
        sa += std::abs(d);
        sq += d * d;
        s3 += d * d * d;
        s4 += d * d * d * d;
        zmin = std::min(zmin, z);
        zmax = std::max(zmax, z);
    }
    out.Pa = sa / double(n);
    out.Pq = std::sqrt(sq / double(n));
    out.Pp = zmax - m;
    out.Pv = m - zmin;
    out.Pt = zmax - zmin;
    out.Pp_over_Pt = out.Pt > 0.0 ? out.Pp / out.Pt : 0.0;
    if (out.Pq > 0.0) {
        out.Psk = (s3 / double(n)) / (out.Pq * out.Pq * out.Pq);
        out.Pku = (s4 / double(n)) / (sq / double(n) * (sq / double(n)));
    }

    // Ten-point height: five 0.8 mm segments when at least 4 mm of trace is
    // available, three when at least 2.4 mm, otherwise undefined.
    const double len_um = p.evaluation_length_um();
    int segs = 0;
    if (len_um >= 4000.0) segs = 5;
    else if (len_um >= 2400.0) segs = 3;
    if (segs > 0) {
        const std::size_t per = std::size_t(std::floor(800.0 / p.dx_um));
        // Centre the segment block on the trace.
        const std::size_t used = std::min<std::size_t>(std::size_t(segs) * per, n);
        const std::size_t start = (n - used) / 2;
        double acc = 0.0;
        for (int s = 0; s < segs; ++s)
            acc += ampdetail::ten_point_height(p.z, start + std::size_t(s) * per,
                                               start + std::size_t(s + 1) * per);
        out.PzJIS = acc / double(segs);
    }
    return out;
}

}  // namespace gearlab::prof
