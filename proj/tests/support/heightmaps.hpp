#pragma once
// Deterministic height-map builders shared by the areal tests.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <gearlab/areal/heightmap.hpp>
#include <gearlab/detail/fft.hpp>

#include "oracles.hpp"

namespace testsupport {

template <class F>
gearlab::areal::Heightmap make_map(std::size_t nx, std::size_t ny, double dx_um, double dy_um,
                                   F&& f) {
    gearlab::areal::Heightmap m;
    m.nx = nx;
    m.ny = ny;
    m.dx_um = dx_um;
    m.dy_um = dy_um;
    m.z_um.resize(nx * ny);
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix)
            m.at(ix, iy) = f(double(ix) * dx_um, double(iy) * dy_um);
    return m;
}

inline gearlab::areal::Heightmap make_noise_map(std::size_t nx, std::size_t ny, double d_um,
                                                double sigma_um, std::uint32_t seed) {
    NoiseGen g(seed);
    gearlab::areal::Heightmap m;
    m.nx = nx;
    m.ny = ny;
    m.dx_um = m.dy_um = d_um;
    m.z_um.resize(nx * ny);
    for (auto& z : m.z_um) z = sigma_um * g.gauss();
    return m;
}

inline gearlab::areal::Heightmap transposed(const gearlab::areal::Heightmap& m) {
    gearlab::areal::Heightmap t;
    t.nx = m.ny;
    t.ny = m.nx;
    t.dx_um = m.dy_um;
    t.dy_um = m.dx_um;
    t.z_um.resize(m.z_um.size());
    for (std::size_t iy = 0; iy < t.ny; ++iy)
        for (std::size_t ix = 0; ix < t.nx; ++ix) t.at(ix, iy) = m.at(iy, ix);
    return t;
}

// Self-affine synthesis: half-spectrum amplitudes fall off as f^-(H+1) with
// Gaussian coefficients, so the surface has Hurst exponent H and an expected
// fractal dimension of 3 - H. Rescaled to zero mean and unit Sq.
inline gearlab::areal::Heightmap self_affine_map(std::size_t n, double d_um, double hurst,
                                                 std::uint32_t seed) {
    NoiseGen g(seed);
    const std::size_t nxh = n / 2 + 1;
    std::vector<std::complex<double>> spec(n * nxh);
    for (std::size_t ky = 0; ky < n; ++ky) {
        for (std::size_t kx = 0; kx < nxh; ++kx) {
            if (kx == 0 && ky == 0) continue;
            const std::ptrdiff_t sy =
                ky <= n / 2 ? std::ptrdiff_t(ky) : std::ptrdiff_t(ky) - std::ptrdiff_t(n);
            const double fx = double(kx) / (double(n) * d_um);
            const double fy = double(sy) / (double(n) * d_um);
            const double amp = std::pow(std::hypot(fx, fy), -(hurst + 1.0));
            spec[ky * nxh + kx] = {amp * g.gauss(), amp * g.gauss()};
        }
    }
    // The kx = 0 and kx = n/2 columns are their own conjugate images: force
    // Hermitian symmetry there so the inverse transform is real.
    for (std::size_t kx : {std::size_t(0), n / 2}) {
        for (std::size_t ky = 1; ky < n / 2; ++ky)
            spec[(n - ky) * nxh + kx] = std::conj(spec[ky * nxh + kx]);
        spec[(n / 2) * nxh + kx] = {spec[(n / 2) * nxh + kx].real(), 0.0};
        if (kx != 0) spec[kx] = {spec[kx].real(), 0.0};
    }
    gearlab::areal::Heightmap m;
    m.nx = m.ny = n;
    m.dx_um = m.dy_um = d_um;
    m.z_um = gearlab::detail::fft_c2r_2d(spec, n, n);
    double mu = 0.0;
    for (double v : m.z_um) mu += v;
    mu /= double(m.z_um.size());
    double s2 = 0.0;
    for (double v : m.z_um) s2 += (v - mu) * (v - mu);
    const double sq = std::sqrt(s2 / double(m.z_um.size()));
    for (double& v : m.z_um) v = (v - mu) / sq;
    return m;
}

}  // namespace testsupport
