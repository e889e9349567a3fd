#pragma once
// Thin FFTW wrappers. All transforms copy their input, use FFTW_ESTIMATE
// plans and follow FFTW's unnormalised conventions (the caller scales).

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <vector>

#include "../core.hpp"

namespace gearlab::detail {

// Real-to-complex forward transform; returns n/2+1 bins.
inline std::vector<std::complex<double>> fft_r2c(const std::vector<double>& in) {
    if (in.empty()) throw InvalidParams("fft_r2c: empty input");
    const std::size_t n = in.size();
    std::vector<double> buf(in);
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(int(n), buf.data(),
                                          reinterpret_cast<fftw_complex*>(out.data()),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

// Complex-to-real inverse of the above; result is unnormalised (scale by 1/n).
inline std::vector<double> fft_c2r(const std::vector<std::complex<double>>& in, std::size_t n) {
    if (in.size() != n / 2 + 1) throw InvalidParams("fft_c2r: bin count does not match length");
    std::vector<std::complex<double>> buf(in);
    std::vector<double> out(n);
    fftw_plan plan = fftw_plan_dft_c2r_1d(int(n), reinterpret_cast<fftw_complex*>(buf.data()),
                                          out.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

// 2-d real-to-complex transform of row-major data (ny rows of nx, x fastest).
// Output is ny * (nx/2+1), row-major.
inline std::vector<std::complex<double>> fft_r2c_2d(const std::vector<double>& in, std::size_t nx,
                                                    std::size_t ny) {
    if (in.size() != nx * ny) throw InvalidParams("fft_r2c_2d: size mismatch");
    std::vector<double> buf(in);
    std::vector<std::complex<double>> out(ny * (nx / 2 + 1));
    fftw_plan plan = fftw_plan_dft_r2c_2d(int(ny), int(nx), buf.data(),
                                          reinterpret_cast<fftw_complex*>(out.data()),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

// Inverse of fft_r2c_2d; unnormalised (scale by 1/(nx*ny)).
inline std::vector<double> fft_c2r_2d(const std::vector<std::complex<double>>& in, std::size_t nx,
                                      std::size_t ny) {
    if (in.size() != ny * (nx / 2 + 1)) throw InvalidParams("fft_c2r_2d: size mismatch");
    std::vector<std::complex<double>> buf(in);
    std::vector<double> out(nx * ny);
    fftw_plan plan = fftw_plan_dft_c2r_2d(int(ny), int(nx),
                                          reinterpret_cast<fftw_complex*>(buf.data()), out.data(),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace gearlab::detail
