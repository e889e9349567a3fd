#pragma once
// Material ratio (bearing) curve and the parameter families built on it:
//   - core/peak/valley construction from the flattest 40% secant window,
//   - two-line probability construction on the normal-quantile abscissa,
//   - a three-parameter S-shape fit (generalised logistic, asymptotes 0/1).
//
// Works on any height collection (traces and maps share the machinery).
// Ratios are fractions in [0, 1] here; callers scale for display.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "../detail/numeric.hpp"
#include "profile.hpp"

namespace gearlab::prof {

struct MaterialCurve {
    std::vector<double> ratio;      // ascending, 0..1
    std::vector<double> height_um;  // non-increasing
};

inline MaterialCurve material_curve(std::vector<double> heights) {
    if (heights.size() < 2) throw InsufficientData("material_curve: need at least 2 heights");
    std::sort(heights.begin(), heights.end(), std::greater<>());
    MaterialCurve c;
    const std::size_t n = heights.size();
    c.ratio.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.ratio[i] = double(i) / double(n - 1);
    c.height_um = std::move(heights);
    return c;
}

inline MaterialCurve material_curve(const Profile& p) {
    p.validate();
    return material_curve(p.z);
}

// Height at a given material ratio (linear interpolation).
inline double height_at_ratio(const MaterialCurve& c, double ratio) {
    return detail::interp_linear(c.ratio, c.height_um, ratio);
}

// Smallest ratio whose curve height is <= the given level.
inline double ratio_at_height(const MaterialCurve& c, double height_um) {
    if (height_um >= c.height_um.front()) return 0.0;
    if (height_um <= c.height_um.back()) return 1.0;
    for (std::size_t i = 1; i < c.height_um.size(); ++i) {
        if (c.height_um[i] <= height_um) {
            const double a = c.height_um[i - 1], b = c.height_um[i];
            const double t = a > b ? (a - height_um) / (a - b) : 1.0;
            return c.ratio[i - 1] + t * (c.ratio[i] - c.ratio[i - 1]);
        }
    }
    return 1.0;
}

// ---------------------------------------------------------------------------
// Core / reduced peak / reduced valley construction
// ---------------------------------------------------------------------------

struct CoreParams {
    double core_depth_um = 0.0;      // Pk / Sk
    double reduced_peak_um = 0.0;    // Ppk / Spk
    double reduced_valley_um = 0.0;  // Pvk / Svk
    double mr1 = 0.0;                // fraction
    double mr2 = 1.0;                // fraction
};

inline CoreParams core_params(const MaterialCurve& c) {
    // A flat curve has no core construction: every family member is zero and
    // the ratio window spans the whole curve.
    if (c.height_um.front() == c.height_um.back()) return {};
    // Exhaustive scan of 40%-wide secant windows; flattest wins, ties to the
    // smaller starting ratio.
    double best_slope = 0.0, best_p = -1.0;
    for (std::size_t i = 0; i < c.ratio.size(); ++i) {
        const double p0 = c.ratio[i];
        if (p0 + 0.4 > 1.0 + 1e-12) break;
        const double drop = c.height_um[i] - height_at_ratio(c, p0 + 0.4);
        if (best_p < 0.0 || drop < best_slope) {
            best_slope = drop;
            best_p = p0;
        }
    }
    const double p0 = best_p;
    const double c_lo = height_at_ratio(c, p0);
    const double slope = (height_at_ratio(c, p0 + 0.4) - c_lo) / 0.4;
    const double level0 = c_lo + (0.0 - p0) * slope;  // equivalent line at 0%
    const double level1 = c_lo + (1.0 - p0) * slope;  // equivalent line at 100%

    CoreParams out;
    out.core_depth_um = level0 - level1;
    out.mr1 = ratio_at_height(c, level0);
    out.mr2 = ratio_at_height(c, level1);

    // Peak area above the upper level (equal-area triangle -> reduced height).
    double a1 = 0.0;
    for (std::size_t i = 1; i < c.ratio.size(); ++i) {
        if (c.ratio[i] > out.mr1) break;
        const double h0 = std::max(0.0, c.height_um[i - 1] - level0);
        const double h1 = std::max(0.0, c.height_um[i] - level0);
        a1 += 0.5 * (h0 + h1) * (c.ratio[i] - c.ratio[i - 1]);
    }
    if (out.mr1 > 0.0) out.reduced_peak_um = 2.0 * a1 / out.mr1;

    double a2 = 0.0;
    for (std::size_t i = 1; i < c.ratio.size(); ++i) {
        if (c.ratio[i] <= out.mr2) continue;
        const double h0 = std::max(0.0, level1 - c.height_um[i - 1]);
        const double h1 = std::max(0.0, level1 - c.height_um[i]);
        a2 += 0.5 * (h0 + h1) * (c.ratio[i] - c.ratio[i - 1]);
    }
    if (out.mr2 < 1.0) out.reduced_valley_um = 2.0 * a2 / (1.0 - out.mr2);
    return out;
}

// ---------------------------------------------------------------------------
// Probability (two-line) construction
// ---------------------------------------------------------------------------

struct ProbabilityParams {
    double peak_slope_um = 0.0;    // Ppq / Spq: |slope| of the upper segment
    double valley_slope_um = 0.0;  // Pvq / Svq
    double transition_ratio = 0.0; // Pmq / Smq, fraction
};

namespace matdetail {

struct Line {
    double a = 0.0, b = 0.0;  // y = a*u + b
    double sse = 0.0;
};

inline Line fit_line(const std::vector<double>& u, const std::vector<double>& y, std::size_t i0,
                     std::size_t i1) {
    double su = 0, sy = 0, suu = 0, suy = 0;
    const double n = double(i1 - i0);
    for (std::size_t i = i0; i < i1; ++i) {
        su += u[i];
        sy += y[i];
        suu += u[i] * u[i];
        suy += u[i] * y[i];
    }
    const double det = n * suu - su * su;
    Line l;
    if (std::abs(det) < 1e-30) {
        l.a = 0.0;
        l.b = sy / n;
    } else {
        l.a = (n * suy - su * sy) / det;
        l.b = (sy - l.a * su) / n;
    }
    for (std::size_t i = i0; i < i1; ++i) {
        const double r = y[i] - (l.a * u[i] + l.b);
        l.sse += r * r;
    }
    return l;
}

}  // namespace matdetail

inline ProbabilityParams probability_params(const MaterialCurve& c) {
    if (c.height_um.front() == c.height_um.back())
        throw DegenerateCurve("probability_params: flat material curve");
    // Map ratio to the standard normal quantile, dropping the extreme tails.
    std::vector<double> u, y;
    for (std::size_t i = 0; i < c.ratio.size(); ++i) {
        if (c.ratio[i] < 0.005 || c.ratio[i] > 0.995) continue;
        u.push_back(detail::normal_quantile(c.ratio[i]));
        y.push_back(c.height_um[i]);
    }
    if (u.size() < 10) throw InsufficientData("probability_params: too few usable points");

    auto best_split = [&](const std::vector<double>& uu, const std::vector<double>& yy) {
        std::size_t best_k = 0;
        double best_sse = 0.0;
        matdetail::Line bl1, bl2;
        for (std::size_t k = 5; k + 5 <= uu.size(); ++k) {
            const auto l1 = matdetail::fit_line(uu, yy, 0, k);
            const auto l2 = matdetail::fit_line(uu, yy, k, uu.size());
            const double sse = l1.sse + l2.sse;
            if (best_k == 0 || sse < best_sse) {
                best_k = k;
                best_sse = sse;
                bl1 = l1;
                bl2 = l2;
            }
        }
        if (best_k == 0) throw InsufficientData("probability_params: too few points to split");
        return std::array<matdetail::Line, 2>{bl1, bl2};
    };

    auto lines = best_split(u, y);
    double ustar = std::abs(lines[0].a - lines[1].a) > 1e-12
                       ? (lines[1].b - lines[0].b) / (lines[0].a - lines[1].a)
                       : 0.0;

    // One refinement: drop the blend zone around the intersection and refit.
    std::vector<double> u2, y2;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (std::abs(u[i] - ustar) <= 0.5) continue;
        u2.push_back(u[i]);
        y2.push_back(y[i]);
    }
    if (u2.size() >= 10) {
        lines = best_split(u2, y2);
        if (std::abs(lines[0].a - lines[1].a) > 1e-12)
            ustar = (lines[1].b - lines[0].b) / (lines[0].a - lines[1].a);
    }

    ProbabilityParams out;
    out.peak_slope_um = std::abs(lines[0].a);
    out.valley_slope_um = std::abs(lines[1].a);
    out.transition_ratio = detail::normal_cdf(ustar);
    return out;
}

// ---------------------------------------------------------------------------
// Three-parameter S-shape fit
// ---------------------------------------------------------------------------
// Model for the normalised curve y(p) = (1 + exp((p - m)/s))^(-nu): a
// generalised logistic falling from 1 to 0. Deterministic Nelder-Mead on
// (m, log s, log nu).

struct SShapeFit {
    double inflexion_slope_um = 0.0;   // |dc/dp| at the inflexion, um per unit ratio
    double inflexion_height_um = 0.0;  // curve height at the inflexion, um
    double inflexion_ratio = 0.0;      // fraction
    double m = 0.0, s = 0.0, nu = 1.0;
};

inline SShapeFit sshape_fit(const MaterialCurve& c) {
    const double cmax = c.height_um.front(), cmin = c.height_um.back();
    if (cmax == cmin) throw DegenerateCurve("sshape_fit: flat material curve");
    // Subsample evenly for speed; the curve is monotone so nothing is lost.
    const std::size_t n = c.ratio.size();
    const std::size_t take = std::min<std::size_t>(n, 512);
    std::vector<double> ps(take), ys(take);
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i * (n - 1) / (take - 1);
        ps[i] = c.ratio[j];
        ys[i] = (c.height_um[j] - cmin) / (cmax - cmin);
    }

    auto sse = [&](const std::array<double, 3>& q) {
        const double m = q[0], s = std::exp(q[1]), nu = std::exp(q[2]);
        double acc = 0.0;
        for (std::size_t i = 0; i < take; ++i) {
            const double t = (ps[i] - m) / s;
            const double yhat = std::pow(1.0 + std::exp(std::min(t, 500.0)), -nu);
            const double r = ys[i] - yhat;
            acc += r * r;
        }
        return acc;
    };

    // Fixed-iteration Nelder-Mead.
    std::array<std::array<double, 3>, 4> simplex = {{{0.5, std::log(0.1), 0.0},
                                                     {0.7, std::log(0.1), 0.0},
                                                     {0.5, std::log(0.25), 0.0},
                                                     {0.5, std::log(0.1), 1.0}}};
    std::array<double, 4> f;
    for (int i = 0; i < 4; ++i) f[i] = sse(simplex[i]);
    for (int it = 0; it < 400; ++it) {
        std::array<int, 4> ord = {0, 1, 2, 3};
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return f[a] < f[b]; });
        std::array<std::array<double, 3>, 4> sx;
        std::array<double, 4> fx;
        for (int i = 0; i < 4; ++i) {
            sx[i] = simplex[ord[i]];
            fx[i] = f[ord[i]];
        }
        simplex = sx;
        f = fx;
        std::array<double, 3> centroid = {0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int d = 0; d < 3; ++d) centroid[d] += simplex[i][d] / 3.0;
        auto mix = [&](double t) {
            std::array<double, 3> q;
            for (int d = 0; d < 3; ++d) q[d] = centroid[d] + t * (simplex[3][d] - centroid[d]);
            return q;
        };
        const auto xr = mix(-1.0);
        const double fr = sse(xr);
        if (fr < f[0]) {
            const auto xe = mix(-2.0);
            const double fe = sse(xe);
            if (fe < fr) {
                simplex[3] = xe;
                f[3] = fe;
            } else {
                simplex[3] = xr;
                f[3] = fr;
            }
        } else if (fr < f[2]) {
            simplex[3] = xr;
            f[3] = fr;
        } else {
            const auto xc = mix(0.5);
            const double fc = sse(xc);
            if (fc < f[3]) {
                simplex[3] = xc;
                f[3] = fc;
            } else {
                for (int i = 1; i < 4; ++i) {
                    for (int d = 0; d < 3; ++d)
                        simplex[i][d] = simplex[0][d] + 0.5 * (simplex[i][d] - simplex[0][d]);
                    f[i] = sse(simplex[i]);
                }
            }
        }
    }

    const auto& q = simplex[0];
    SShapeFit out;
    out.m = q[0];
    out.s = std::exp(q[1]);
    out.nu = std::exp(q[2]);
    out.inflexion_ratio = out.m - out.s * std::log(out.nu);
    const double base = 1.0 + 1.0 / out.nu;
    out.inflexion_height_um = cmin + (cmax - cmin) * std::pow(base, -out.nu);
    out.inflexion_slope_um = (cmax - cmin) * std::pow(base, -out.nu - 1.0) / out.s;
    return out;
}

}  // namespace gearlab::prof
