#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gearlab/areal/amplitude.hpp>
#include <gearlab/areal/filter.hpp>
#include <gearlab/areal/form.hpp>
#include <gearlab/areal/heightmap.hpp>
#include <gearlab/areal/hybrid.hpp>
#include <gearlab/areal/material.hpp>
#include <gearlab/areal/summits.hpp>
#include <gearlab/areal/volume.hpp>

#include "support/heightmaps.hpp"
#include "support/oracles.hpp"

using namespace gearlab;
using namespace gearlab::areal;
using Catch::Approx;
namespace ts = testsupport;

TEST_CASE("height map validation rejects degenerate grids") {
    Heightmap m = ts::make_map(32, 32, 5.0, 5.0, [](double, double) { return 1.0; });
    CHECK_NOTHROW(m.validate());

    Heightmap small = m;
    small.nx = 15;
    small.z_um.resize(15 * 32);
    CHECK_THROWS_AS(small.validate(), InvalidParams);

    Heightmap badstep = m;
    badstep.dy_um = 0.0;
    CHECK_THROWS_AS(badstep.validate(), InvalidParams);

    Heightmap mismatch = m;
    mismatch.z_um.pop_back();
    CHECK_THROWS_AS(mismatch.validate(), InvalidParams);

    Heightmap nan = m;
    nan.at(3, 4) = std::nan("");
    CHECK_THROWS_AS(nan.validate(), InvalidParams);
}

TEST_CASE("map extents and traces follow the grid") {
    const auto m = ts::make_map(40, 25, 2.0, 4.0, [](double x, double y) { return x + 10.0 * y; });
    CHECK(m.extent_x_um() == Approx(78.0));
    CHECK(m.extent_y_um() == Approx(96.0));
    CHECK(m.area_mm2() == Approx(78.0 * 96.0 * 1e-6));

    const auto row = row_trace(m, 3);
    REQUIRE(row.n() == 40);
    CHECK(row.dx_um == 2.0);
    CHECK(row.z[7] == Approx(14.0 + 120.0));

    const auto col = column_trace(m, 17);
    REQUIRE(col.n() == 25);
    CHECK(col.dx_um == 4.0);
    CHECK(col.z[6] == Approx(34.0 + 240.0));

    CHECK_THROWS_AS(row_trace(m, 25), InvalidParams);
    CHECK_THROWS_AS(column_trace(m, 40), InvalidParams);

    const auto centred = mean_removed(m);
    CHECK(map_mean(centred) == Approx(0.0).margin(1e-12));
}

TEST_CASE("plane removal recovers an exact tilted plane") {
    const auto m =
        ts::make_map(64, 64, 5.0, 5.0, [](double x, double y) { return 4.0 + 0.01 * x - 0.02 * y; });
    const auto fit = remove_form_areal(m, ArealForm::plane);
    double worst = 0.0;
    for (double z : fit.residual.z_um) worst = std::max(worst, std::abs(z));
    CHECK(worst < 1e-10);
    CHECK(fit.rms_residual_um < 1e-10);
    CHECK(fit.residual.nx == m.nx);
    CHECK(fit.residual.dx_um == m.dx_um);
}

TEST_CASE("plane removal leaves a superposed texture untouched") {
    const auto m = ts::make_map(256, 256, 5.0, 5.0, [](double x, double y) {
        return 2.0 + 0.005 * x - 0.003 * y +
               0.7 * std::sin(2.0 * pi * x / 320.0) * std::sin(2.0 * pi * y / 320.0);
    });
    const auto fit = remove_form_areal(m, ArealForm::plane);
    double worst = 0.0;
    for (std::size_t iy = 0; iy < m.ny; ++iy)
        for (std::size_t ix = 0; ix < m.nx; ++ix)
            worst = std::max(worst, std::abs(fit.residual.at(ix, iy) -
                                            0.7 * std::sin(2.0 * pi * double(ix) * 5.0 / 320.0) *
                                                std::sin(2.0 * pi * double(iy) * 5.0 / 320.0)));
    CHECK(worst < 1e-10);
}

TEST_CASE("fifth-degree removal annihilates a quintic surface") {
    const auto m = ts::make_map(48, 48, 5.0, 5.0, [](double x, double y) {
        const double u = x / 235.0, v = y / 235.0;
        return 3.0 + u - 2.0 * v + u * u * v - 0.5 * v * v * v + u * u * u * u * v -
               2.0 * u * v * v * v * v + 0.25 * u * u * u * u * u;
    });
    const auto fit = remove_form_areal(m, ArealForm::poly5);
    double worst = 0.0;
    for (double z : fit.residual.z_um) worst = std::max(worst, std::abs(z));
    CHECK(worst < 1e-9);
    CHECK(fit.coeffs.size() == 21);
}

TEST_CASE("form names map to the fit degrees") {
    CHECK(areal_form_from_name("plane") == ArealForm::plane);
    CHECK(areal_form_from_name("poly2") == ArealForm::poly2);
    CHECK(areal_form_from_name("poly5") == ArealForm::poly5);
    CHECK_THROWS_AS(areal_form_from_name("sphere"), InvalidParams);
}

namespace {

double interior_peak(const Heightmap& m) {
    double mx = 0.0;
    for (std::size_t iy = 160; iy < 240; ++iy)
        for (std::size_t ix = 160; ix < 240; ++ix) mx = std::max(mx, std::abs(m.at(ix, iy)));
    return mx;
}

}  // namespace

TEST_CASE("areal filter passes half of a cutoff-wavelength wave to each band") {
    for (int axis = 0; axis < 2; ++axis) {
        const auto m = ts::make_map(400, 400, 5.0, 5.0, [axis](double x, double y) {
            return std::sin(2.0 * pi * (axis == 0 ? x : y) / 800.0);
        });
        const auto f = gaussian_filter_areal(m, 0.8);
        CHECK(interior_peak(f.roughness) == Approx(0.5).margin(0.005));
        CHECK(interior_peak(f.waviness) == Approx(0.5).margin(0.005));
        CHECK(f.edge_zone_um == 400.0);
        CHECK(f.cutoff_mm == 0.8);
    }
}

TEST_CASE("areal filter keeps short waves almost entirely in the roughness band") {
    const auto m = ts::make_map(400, 400, 5.0, 5.0,
                                [](double x, double) { return std::sin(2.0 * pi * x * 3.0 / 800.0); });
    const auto f = gaussian_filter_areal(m, 0.8);
    CHECK(interior_peak(f.roughness) >= 0.995);
    CHECK(interior_peak(f.waviness) < 0.01);
}

TEST_CASE("areal filter bands sum back to the heights bit for bit") {
    // Heights share a binade (offset well above the texture), where the split
    // is guaranteed to reconstruct exactly.
    const auto m = ts::make_map(400, 400, 5.0, 5.0, [](double x, double y) {
        return 10.0 + std::sin(2.0 * pi * x / 800.0) + 0.2 * std::sin(2.0 * pi * y / 800.0);
    });
    const auto f = gaussian_filter_areal(m, 0.8);
    std::size_t bad = 0;
    for (std::size_t k = 0; k < m.z_um.size(); ++k)
        if (f.waviness.z_um[k] + f.roughness.z_um[k] != m.z_um[k]) ++bad;
    CHECK(bad == 0);
}

TEST_CASE("areal filter refuses maps shorter than twice the cutoff") {
    const auto tiny = ts::make_map(64, 64, 5.0, 5.0, [](double x, double) { return x; });
    CHECK_THROWS_AS(gaussian_filter_areal(tiny, 0.8), FilterLengthError);
    const auto narrow = ts::make_map(400, 64, 5.0, 5.0, [](double x, double) { return x; });
    CHECK_THROWS_AS(gaussian_filter_areal(narrow, 0.8), FilterLengthError);
    CHECK_NOTHROW(gaussian_filter_areal(narrow, 0.15));
}

TEST_CASE("crossed sine heights factor into the product of the trace means") {
    const auto m = ts::make_map(256, 256, 5.0, 5.0, [](double x, double y) {
        return std::sin(2.0 * pi * x / 320.0) * std::sin(2.0 * pi * y / 320.0);
    });
    // Mean |z| of the product grid is the square of the single-axis mean.
    double s1 = 0.0;
    for (int k = 0; k < 64; ++k) s1 += std::abs(std::sin(2.0 * pi * double(k) / 64.0));
    s1 /= 64.0;

    const auto hp = height_params(m);
    CHECK(hp.Sa == Approx(s1 * s1).margin(1e-12));
    CHECK(hp.Sa == Approx(4.0 / (pi * pi)).epsilon(0.005));
    CHECK(hp.Sq == Approx(0.5).margin(1e-9));
    CHECK(hp.St == Approx(2.0).margin(1e-12));
    CHECK(hp.Sp == Approx(1.0).margin(1e-12));
    CHECK(hp.Sv == Approx(1.0).margin(1e-12));
    REQUIRE(hp.Ssk);
    REQUIRE(hp.Sku);
    CHECK(*hp.Ssk == Approx(0.0).margin(1e-9));
    CHECK(*hp.Sku == Approx(2.25).margin(1e-9));
}

TEST_CASE("height moments of a wide gaussian field match the population") {
    const auto m = ts::make_noise_map(600, 600, 5.0, 1.0, 777u);
    const auto hp = height_params(m);
    CHECK(hp.Sq == Approx(1.001700).margin(5e-4));
    CHECK(hp.Sa == Approx(0.799455).margin(5e-4));
    CHECK(hp.Sa == Approx(std::sqrt(2.0 / pi)).epsilon(0.01));
    REQUIRE(hp.Ssk);
    REQUIRE(hp.Sku);
    CHECK(*hp.Ssk == Approx(0.002146).margin(5e-4));
    CHECK(*hp.Sku == Approx(3.004063).margin(5e-4));
    CHECK(std::abs(*hp.Ssk) < 0.02);
    CHECK(*hp.Sku == Approx(3.0).epsilon(0.02));
}

TEST_CASE("flat map has zero heights and undefined shape moments") {
    const auto m = ts::make_map(32, 32, 5.0, 5.0, [](double, double) { return 7.5; });
    const auto hp = height_params(m);
    CHECK(hp.Sa == 0.0);
    CHECK(hp.Sq == 0.0);
    CHECK(hp.St == 0.0);
    CHECK_FALSE(hp.Ssk);
    CHECK_FALSE(hp.Sku);
}

TEST_CASE("an isolated gaussian cap yields one summit with its analytic curvature") {
    const auto m = ts::make_map(128, 128, 5.0, 5.0, [](double x, double y) {
        const double dx = x - 320.0, dy = y - 320.0;
        return std::exp(-(dx * dx + dy * dy) / (2.0 * 50.0 * 50.0));
    });
    const auto s = find_summits(m);
    REQUIRE(s.size() == 1);
    CHECK(s[0].ix == 64);
    CHECK(s[0].iy == 64);
    CHECK(s[0].curv_x == s[0].curv_y);
    CHECK(s[0].curv_x == Approx(1.0 / 2500.0).epsilon(0.02));
    CHECK(s[0].curv_mean == Approx(1.0 / 2500.0).epsilon(0.02));
}

TEST_CASE("summit census of a crossed sine field") {
    const auto m = ts::make_map(256, 256, 5.0, 5.0, [](double x, double y) {
        return std::sin(2.0 * pi * x / 320.0) + std::sin(2.0 * pi * y / 320.0);
    });
    const auto sp = summit_params(m);
    REQUIRE(sp.summits.size() == 16);
    for (const auto& s : sp.summits) {
        CHECK(s.ix >= 1);
        CHECK(s.ix <= m.nx - 2);
        CHECK(s.iy >= 1);
        CHECK(s.iy <= m.ny - 2);
        CHECK(s.height_um == Approx(2.0).margin(1e-6));
    }
    CHECK(sp.Sds_per_mm2 == Approx(16.0 / m.area_mm2()).margin(1e-9));
    const double curv = std::pow(2.0 * pi / 320.0, 2);
    CHECK(sp.Ssc == Approx(curv).epsilon(0.005));
    CHECK(sp.Sscx == Approx(sp.Sscy).margin(1e-9));
}

TEST_CASE("featureless maps report no summits") {
    const auto flat = ts::make_map(32, 32, 5.0, 5.0, [](double, double) { return 1.0; });
    CHECK(find_summits(flat).empty());
    CHECK_THROWS_AS(summit_params(flat), NoFeatures);
    const auto ramp = ts::make_map(32, 32, 5.0, 5.0, [](double x, double) { return 0.1 * x; });
    CHECK_THROWS_AS(summit_params(ramp), NoFeatures);
}

TEST_CASE("slope family of a plane ramp is exact") {
    const auto m = ts::make_map(64, 64, 5.0, 5.0, [](double x, double) { return 0.05 * x; });
    const auto hp = hybrid_params(m);
    CHECK(hp.Sdax == Approx(0.05).margin(1e-9));
    CHECK(hp.Sday == 0.0);
    CHECK(hp.Sdq == Approx(0.05).margin(1e-12));
    CHECK(hp.Sdr_pct == Approx((std::sqrt(1.0025) - 1.0) * 100.0).margin(1e-9));
}

TEST_CASE("slope family separates the two axes of a double ramp") {
    const auto m =
        ts::make_map(64, 64, 5.0, 5.0, [](double x, double y) { return 0.05 * x + 0.02 * y; });
    const auto hp = hybrid_params(m);
    CHECK(hp.Sdax == Approx(0.05).margin(1e-9));
    CHECK(hp.Sday == Approx(0.02).margin(1e-9));
    CHECK(hp.Sdq == Approx(std::hypot(0.05, 0.02)).margin(1e-9));
}

TEST_CASE("mean slope of a sine field approaches the analytic value") {
    const auto m = ts::make_map(500, 64, 2.0, 2.0,
                                [](double x, double) { return std::sin(2.0 * pi * x / 100.0); });
    const auto hp = hybrid_params(m);
    // Mean |slope| of an amplitude-1 sine at wavelength 100 um is 4/100.
    CHECK(hp.Sdax == Approx(0.04).epsilon(0.01));
    CHECK(hp.Sday == 0.0);
}

TEST_CASE("volume split of a three-level plateau field") {
    Heightmap m;
    m.nx = m.ny = 100;
    m.dx_um = m.dy_um = 5.0;
    m.z_um.resize(m.nx * m.ny);
    for (std::size_t iy = 0; iy < m.ny; ++iy)
        for (std::size_t ix = 0; ix < m.nx; ++ix)
            m.at(ix, iy) = iy < 60 ? 0.0 : iy < 85 ? -8.0 : -20.0;

    const auto vp = volume_params(m);
    CHECK(vp.Smmr_mm3_mm2 == Approx(0.015).margin(1e-12));
    CHECK(vp.Smvr_mm3_mm2 == Approx(0.005).margin(1e-12));
    CHECK(vp.Smmr_mm3_mm2 + vp.Smvr_mm3_mm2 == 20.0 * 1e-3);

    // With 60% at 0, 25% at -8 and 15% at -20 about the mean plane, the
    // bearing levels and void volumes reduce to closed-form values.
    const double sq = std::sqrt(51.0);
    REQUIRE(vp.Sbi);
    REQUIRE(vp.Sci);
    REQUIRE(vp.Svi);
    CHECK(*vp.Sbi == Approx(sq / 5.0).margin(1e-6));
    CHECK(*vp.Sci == Approx(3.2 / sq).margin(1e-6));
    CHECK(*vp.Svi == Approx(1.8 / sq).margin(1e-6));
}

TEST_CASE("material and void volumes always sum to the total height") {
    std::mt19937 seeds(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = ts::make_noise_map(32 + 7 * trial % 64, 32 + 5 * trial % 48, 2.0,
                                          0.1 + 0.4 * trial, std::uint32_t(seeds()));
        const auto vp = volume_params(m);
        const auto [lo, hi] = std::minmax_element(m.z_um.begin(), m.z_um.end());
        CHECK(vp.Smmr_mm3_mm2 + vp.Smvr_mm3_mm2 == (*hi - *lo) * 1e-3);
    }
}

TEST_CASE("void volume shrinks as the bearing level descends") {
    const auto m = ts::make_noise_map(64, 64, 5.0, 1.0, 31u);
    const auto c = areal_material_curve(m);
    double prev = 1e300;
    for (double p : {0.05, 0.2, 0.5, 0.8, 0.95}) {
        const double vv = void_volume_um(m, c, p);
        CHECK(vv < prev);
        CHECK(vv >= 0.0);
        prev = vv;
    }
}

TEST_CASE("flat map has zero volumes and undefined bearing indices") {
    const auto m = ts::make_map(32, 32, 5.0, 5.0, [](double, double) { return -2.0; });
    const auto vp = volume_params(m);
    CHECK(vp.Smmr_mm3_mm2 == 0.0);
    CHECK(vp.Smvr_mm3_mm2 == 0.0);
    CHECK_FALSE(vp.Sbi);
    CHECK_FALSE(vp.Sci);
    CHECK_FALSE(vp.Svi);
}

TEST_CASE("two-slope height population recovers its transition ratio") {
    // Heights drawn from a piecewise-linear transform of exact normal
    // quantiles: slope 0.1 for the top 70%, slope 0.3 below.
    std::vector<double> h(40000);
    auto nq = [](double p) {
        double lo = -10.0, hi = 10.0;
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (lo + hi);
            (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double us = nq(0.7);
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double u = nq((double(i) + 0.5) / 40000.0);
        h[i] = u <= us ? -0.1 * u : -0.1 * us - 0.3 * (u - us);
    }
    std::mt19937 rng(99);
    std::shuffle(h.begin(), h.end(), rng);
    Heightmap m;
    m.nx = m.ny = 200;
    m.dx_um = m.dy_um = 5.0;
    m.z_um = std::move(h);

    const auto mp = areal_material_params(m);
    REQUIRE(mp.prob);
    CHECK(mp.prob->transition_ratio == Approx(0.7).margin(0.03));
    CHECK(mp.prob->transition_ratio == Approx(0.699895).margin(1e-4));
    CHECK(mp.prob->peak_slope_um == Approx(0.1).margin(0.003));
    CHECK(mp.prob->valley_slope_um == Approx(0.3).margin(0.003));

    CHECK(mp.core.core_depth_um == Approx(0.2622).margin(0.002));
    CHECK(mp.core.reduced_peak_um == Approx(0.0936).margin(0.002));
    CHECK(mp.core.reduced_valley_um == Approx(0.3421).margin(0.002));
    CHECK(mp.core.mr1 == Approx(0.0949).margin(0.002));
    CHECK(mp.core.mr2 == Approx(0.7842).margin(0.002));

    REQUIRE(mp.sshape);
    CHECK(mp.sshape->inflexion_slope_um == Approx(0.8832).margin(0.002));
    CHECK(mp.sshape->inflexion_height_um == Approx(-0.5779).margin(0.002));
}

TEST_CASE("flat map material parameters collapse to zero with unset fits") {
    const auto m = ts::make_map(32, 32, 5.0, 5.0, [](double, double) { return 4.0; });
    const auto mp = areal_material_params(m);
    CHECK(mp.core.core_depth_um == 0.0);
    CHECK(mp.core.reduced_peak_um == 0.0);
    CHECK(mp.core.reduced_valley_um == 0.0);
    CHECK(mp.core.mr1 == 0.0);
    CHECK(mp.core.mr2 == 1.0);
    CHECK_FALSE(mp.prob);
    CHECK_FALSE(mp.sshape);
}
