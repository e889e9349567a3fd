#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <gearlab/profile/material_ratio.hpp>

#include "support/oracles.hpp"

using namespace gearlab;
using namespace gearlab::prof;
using Catch::Approx;
namespace ts = testsupport;

TEST_CASE("material curve is nonincreasing with ratios spanning 0..1") {
    const auto c = material_curve(ts::make_noise(5000, 1.0, 0.4, 11u));
    CHECK(c.ratio.front() == 0.0);
    CHECK(c.ratio.back() == 1.0);
    for (std::size_t i = 1; i < c.height_um.size(); ++i) {
        CHECK(c.height_um[i] <= c.height_um[i - 1]);
        CHECK(c.ratio[i] > c.ratio[i - 1]);
    }
}

TEST_CASE("curve lookups are inverse to each other") {
    const auto c = material_curve(ts::make_noise(2000, 1.0, 0.4, 12u));
    for (double p : {0.05, 0.2, 0.5, 0.8, 0.95}) {
        const double h = height_at_ratio(c, p);
        CHECK(ratio_at_height(c, h) == Approx(p).margin(1e-3));
    }
}

// ---------------------------------------------------------------------------
// Core / reduced peak / reduced valley
// ---------------------------------------------------------------------------

TEST_CASE("triangle wave has a straight bearing line: core spans everything") {
    const auto c = material_curve(ts::make_triangle(20000, 0.1, 1.0, 100.0));
    const auto k = core_params(c);
    // The equivalent line is the curve itself: no reduced peak or valley.
    CHECK(k.core_depth_um == Approx(2.0).epsilon(0.01));
    CHECK(k.mr1 == Approx(0.0).margin(0.01));
    CHECK(k.mr2 == Approx(1.0).margin(0.01));
    CHECK(k.reduced_peak_um == Approx(0.0).margin(0.02));
    CHECK(k.reduced_valley_um == Approx(0.0).margin(0.02));
}

TEST_CASE("deep sparse grooves land in the reduced-valley term") {
    // Plateau with ripple plus deep grooves over 10% of the length.
    Profile p;
    p.dx_um = 1.0;
    for (int i = 0; i < 10000; ++i) {
        double z = 0.05 * std::sin(2.0 * pi * double(i) / 50.0);
        if (i % 1000 < 100) {
            const double t = double(i % 1000) / 100.0;
            z -= 3.0 * std::sin(pi * t);  // groove, depth 3 um
        }
        p.z.push_back(z);
    }
    const auto k = core_params(material_curve(p));
    CHECK(k.core_depth_um < 0.5);          // core stays in the ripple band
    CHECK(k.reduced_valley_um > 0.8);      // grooves dominate below
    CHECK(k.mr2 < 0.95);
    CHECK(k.mr1 < 0.1);
    CHECK(k.reduced_peak_um < 0.1);
}

TEST_CASE("core construction agrees with an independently coded scan") {
    const auto heights = ts::mixture_heights(20000);
    const auto c = material_curve(heights);
    const auto k = core_params(c);

    // Reference: scan the 40% window on a fresh uniform ratio grid.
    double best_drop = 1e300, best_p = 0.0;
    for (int i = 0; i <= 6000; ++i) {
        const double p0 = double(i) / 10000.0;
        const double drop = height_at_ratio(c, p0) - height_at_ratio(c, p0 + 0.4);
        if (drop < best_drop) {
            best_drop = drop;
            best_p = p0;
        }
    }
    const double slope = -best_drop / 0.4;
    const double c_at = height_at_ratio(c, best_p);
    const double lvl0 = c_at - best_p * slope;
    const double lvl1 = c_at + (1.0 - best_p) * slope;
    CHECK(k.core_depth_um == Approx(lvl0 - lvl1).epsilon(0.02));
    CHECK(k.mr1 == Approx(ratio_at_height(c, lvl0)).margin(0.01));
    CHECK(k.mr2 == Approx(ratio_at_height(c, lvl1)).margin(0.01));
}

TEST_CASE("core parameters are all zero on a flat surface") {
    std::vector<double> flat(100, 1.0);
    const auto k = core_params(material_curve(flat));
    CHECK(k.core_depth_um == 0.0);
    CHECK(k.reduced_peak_um == 0.0);
    CHECK(k.reduced_valley_um == 0.0);
    CHECK(k.mr1 == 0.0);
    CHECK(k.mr2 == 1.0);
}

// ---------------------------------------------------------------------------
// Probability construction
// ---------------------------------------------------------------------------

TEST_CASE("two-line probability surface is recovered exactly") {
    // Heights generated so the bearing curve IS two straight lines on the
    // quantile abscissa: plateau slope 0.1, groove slope 0.3, corner at 70%.
    const auto c = material_curve(ts::two_line_prob_heights(20000, 0.1, 0.3, 0.7));
    const auto pr = probability_params(c);
    CHECK(pr.peak_slope_um == Approx(0.1).margin(1e-3));
    CHECK(pr.valley_slope_um == Approx(0.3).margin(1e-3));
    CHECK(pr.transition_ratio == Approx(0.7).margin(1e-3));
}

TEST_CASE("single-process heights give equal slopes on both segments") {
    // Exact quantile grid of N(0, 0.25): the plot is one straight line, so
    // any split yields the same slope on each side.
    std::vector<double> h(20000);
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = 0.25 * ts::normal_quantile_bisect((double(i) + 0.5) / 20000.0);
    const auto pr = probability_params(material_curve(h));
    CHECK(pr.peak_slope_um == Approx(0.25).margin(1e-3));
    CHECK(pr.valley_slope_um == Approx(0.25).margin(1e-3));
}

TEST_CASE("stratified mixture: groove segment is steeper than plateau segment") {
    const auto pr = probability_params(material_curve(ts::mixture_heights(20000)));
    CHECK(pr.peak_slope_um < pr.valley_slope_um);
}

TEST_CASE("probability construction rejects flat data") {
    std::vector<double> flat(100, 0.5);
    CHECK_THROWS_AS(probability_params(material_curve(flat)), DegenerateCurve);
}

// ---------------------------------------------------------------------------
// S-shape fit
// ---------------------------------------------------------------------------

TEST_CASE("s-shape fit recovers a curve generated by its own model") {
    const double m = 0.45, s = 0.07, nu = 1.8, lo = -2.0, hi = 1.5;
    std::vector<double> heights;
    for (int i = 0; i < 4000; ++i) {
        const double p = (double(i) + 0.5) / 4000.0;
        const double y = std::pow(1.0 + std::exp((p - m) / s), -nu);
        heights.push_back(lo + (hi - lo) * y);
    }
    const auto c = material_curve(heights);
    const auto fit = sshape_fit(c);
    const double base = 1.0 + 1.0 / nu;
    const double want_slope = (hi - lo) * std::pow(base, -nu - 1.0) / s;
    const double want_height = lo + (hi - lo) * std::pow(base, -nu);
    CHECK(fit.inflexion_slope_um == Approx(want_slope).epsilon(0.02));
    CHECK(fit.inflexion_height_um == Approx(want_height).margin(0.02 * (hi - lo)));
    CHECK(fit.inflexion_ratio == Approx(m - s * std::log(nu)).margin(0.02));
}

TEST_CASE("s-shape fit is deterministic") {
    const auto c = material_curve(ts::mixture_heights(5000));
    const auto a = sshape_fit(c);
    const auto b = sshape_fit(c);
    CHECK(a.inflexion_slope_um == b.inflexion_slope_um);
    CHECK(a.inflexion_height_um == b.inflexion_height_um);
    CHECK(a.inflexion_ratio == b.inflexion_ratio);
}

TEST_CASE("s-shape fit rejects flat data") {
    std::vector<double> flat(100, 0.0);
    CHECK_THROWS_AS(sshape_fit(material_curve(flat)), DegenerateCurve);
}
