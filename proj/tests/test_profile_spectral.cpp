#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include <gearlab/profile/amplitude.hpp>
#include <gearlab/profile/spectral.hpp>

#include "support/oracles.hpp"

using namespace gearlab;
using namespace gearlab::prof;
using Catch::Approx;
namespace ts = testsupport;

// ---------------------------------------------------------------------------
// Autocorrelation
// ---------------------------------------------------------------------------

TEST_CASE("autocorrelation equals the direct-sum estimate") {
    auto p = ts::make_noise(2000, 0.5, 1.0, 7u);
    for (std::size_t i = 0; i < p.n(); ++i)
        p.z[i] += std::sin(2.0 * pi * double(i) / 40.0);
    const auto acf = autocorrelation(p);
    const auto ref = ts::direct_autocorr(p.z, p.n() / 2);
    REQUIRE(acf.value.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k)
        CHECK(acf.value[k] == Approx(ref[k]).margin(1e-10));
}

TEST_CASE("autocorrelation starts at one and stays bounded") {
    const auto acf = autocorrelation(ts::make_noise(4096, 1.0, 0.3, 99u));
    CHECK(acf.value[0] == 1.0);
    for (double v : acf.value) {
        CHECK(v <= 1.0 + 1e-12);
        CHECK(v >= -1.0 - 1e-12);
    }
    CHECK(acf.x[1] == Approx(1.0));
}

TEST_CASE("correlation length of a sine sits at the 0.1 crossing of its cosine") {
    // Long trace keeps the triangular-taper bias of the estimate small.
    const auto p = ts::make_sine(100000, 0.1, 1.0, 100.0);
    const auto acf = autocorrelation(p);
    const auto beta = correlation_length(acf, 0.1);
    REQUIRE(beta.has_value());
    CHECK(*beta == Approx(ts::frozen::acf_decay_frac * 100.0).epsilon(2e-3));
}

TEST_CASE("correlation length reports unreached thresholds as empty") {
    // White noise decorrelates to ~0 but never dips to -0.5, so that
    // threshold is never crossed; the default 0.1 is crossed immediately.
    const auto acf = autocorrelation(ts::make_noise(4000, 1.0, 0.5, 31u));
    CHECK_FALSE(correlation_length(acf, -0.5).has_value());
    const auto quick = correlation_length(acf, 0.1);
    REQUIRE(quick.has_value());
    CHECK(*quick < 5.0);
}

TEST_CASE("autocorrelation rejects flat traces") {
    Profile p;
    p.dx_um = 1.0;
    p.z.assign(256, 2.0);
    CHECK_THROWS_AS(autocorrelation(p), DegenerateCurve);
}

// ---------------------------------------------------------------------------
// Power spectrum
// ---------------------------------------------------------------------------

TEST_CASE("power spectrum matches a direct DFT and satisfies Parseval") {
    auto p = ts::make_noise(1024, 1.0, 0.5, 31u);
    const auto ps = power_spectrum(p);
    const auto ref = ts::direct_power_bins(p.z, p.dx_um);
    REQUIRE(ps.power.x.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(ps.power.x[i] == Approx(ref[i].first).epsilon(1e-12));
        CHECK(ps.power.value[i] == Approx(ref[i].second).margin(1e-12));
    }
    const auto a = amplitude_params(p);
    CHECK(ps.total_power_um2 == Approx(a.Pq * a.Pq).epsilon(1e-9));
    CHECK(ps.cumulated.value.back() == Approx(ps.total_power_um2).epsilon(1e-12));
}

TEST_CASE("spectrum of a sine concentrates in its wavelength bin") {
    const auto p = ts::make_sine(1000, 1.0, 0.7, 100.0);
    const auto ps = power_spectrum(p);
    const auto it = std::max_element(ps.power.value.begin(), ps.power.value.end());
    const std::size_t k = std::size_t(it - ps.power.value.begin());
    CHECK(ps.power.x[k] == Approx(100.0));
    CHECK(*it == Approx(0.7 * 0.7 / 2.0).epsilon(1e-9));  // A^2/2
    // Wavelengths ascend and the cumulated curve is nondecreasing.
    for (std::size_t i = 1; i < ps.power.x.size(); ++i) {
        CHECK(ps.power.x[i] > ps.power.x[i - 1]);
        CHECK(ps.cumulated.value[i] >= ps.cumulated.value[i - 1]);
    }
}

TEST_CASE("spectral density scales the bin power by the record length") {
    const auto p = ts::make_sine(1000, 1.0, 0.7, 100.0);
    const auto ps = power_spectrum(p);
    for (std::size_t i = 0; i < ps.power.value.size(); ++i)
        CHECK(ps.density.value[i] == Approx(ps.power.value[i] * 1000.0).epsilon(1e-12));
}

// ---------------------------------------------------------------------------
// Knee of the cumulated spectrum
// ---------------------------------------------------------------------------

TEST_CASE("knee of a pure sine is its wavelength") {
    const auto ps = power_spectrum(ts::make_sine(4000, 1.0, 1.0, 100.0));
    const auto knee = spectrum_knee(ps.cumulated);
    REQUIRE(knee.has_value());
    CHECK(*knee == Approx(100.0));
}

TEST_CASE("knee of a sine with weak noise still finds the sine") {
    auto p = ts::make_sine(4000, 1.0, 1.0, 100.0);
    auto noise = ts::make_noise(4000, 1.0, 0.02, 5u);
    for (std::size_t i = 0; i < p.n(); ++i) p.z[i] += noise.z[i];
    const auto ps = power_spectrum(p);
    const auto knee = spectrum_knee(ps.cumulated);
    REQUIRE(knee.has_value());
    CHECK(*knee == Approx(100.0));
}

TEST_CASE("knee of two equal-power sines lies between their wavelengths") {
    auto p = ts::make_sine(4000, 1.0, 1.0, 50.0);
    for (std::size_t i = 0; i < p.n(); ++i)
        p.z[i] += std::sin(2.0 * pi * double(i) / 400.0);
    const auto ps = power_spectrum(p);
    const auto knee = spectrum_knee(ps.cumulated);
    REQUIRE(knee.has_value());
    CHECK(*knee >= 50.0);
    CHECK(*knee <= 400.0);

    // Independent reference: majorant by gift-wrapping (steepest remaining
    // slope), curvature as inverse circumradius from the side lengths.
    const auto& c = ps.cumulated;
    const double lx0 = std::log10(c.x.front()), lx1 = std::log10(c.x.back());
    const double tot = c.value.back();
    auto X = [&](std::size_t j) { return (std::log10(c.x[j]) - lx0) / (lx1 - lx0); };
    auto Y = [&](std::size_t j) { return c.value[j] / tot; };
    std::vector<std::size_t> wrap{0};
    while (wrap.back() + 1 < c.x.size()) {
        const std::size_t i = wrap.back();
        std::size_t pick = i + 1;
        double steep = (Y(i + 1) - Y(i)) / (X(i + 1) - X(i));
        for (std::size_t j = i + 2; j < c.x.size(); ++j) {
            const double s = (Y(j) - Y(i)) / (X(j) - X(i));
            if (s > steep) {
                steep = s;
                pick = j;
            }
        }
        wrap.push_back(pick);
    }
    double best = 0.0, ref = -1.0;
    for (std::size_t j = 1; j + 1 < wrap.size(); ++j) {
        const std::size_t a = wrap[j - 1], b = wrap[j], cc = wrap[j + 1];
        const double l1 = std::hypot(X(b) - X(a), Y(b) - Y(a));
        const double l2 = std::hypot(X(cc) - X(b), Y(cc) - Y(b));
        const double l3 = std::hypot(X(cc) - X(a), Y(cc) - Y(a));
        const double s = 0.5 * (l1 + l2 + l3);
        const double area = std::sqrt(std::max(0.0, s * (s - l1) * (s - l2) * (s - l3)));
        const double curv = 4.0 * area / (l1 * l2 * l3);
        if (curv > best) {
            best = curv;
            ref = c.x[b];
        }
    }
    CHECK(*knee == Approx(ref));
}

TEST_CASE("knee of a triangle wave is its fundamental wavelength") {
    const auto ps = power_spectrum(ts::make_triangle(4000, 1.0, 1.0, 200.0));
    const auto knee = spectrum_knee(ps.cumulated);
    REQUIRE(knee.has_value());
    CHECK(*knee == Approx(200.0));
}

TEST_CASE("knee is undefined for degenerate spectra") {
    SpectrumSeries s;
    s.x = {10.0, 20.0};
    s.value = {1.0, 1.0};
    CHECK_FALSE(spectrum_knee(s).has_value());
    SpectrumSeries zero;
    zero.x = {10.0, 20.0, 40.0, 80.0};
    zero.value = {0.0, 0.0, 0.0, 0.0};
    CHECK_FALSE(spectrum_knee(zero).has_value());
}
