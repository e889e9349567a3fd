#pragma once
// Least-squares reference surfaces removed from raw maps before texture
// analysis: plane, full quadric, or full degree-5 polynomial in (x, y).

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "heightmap.hpp"

namespace gearlab::areal {

enum class ArealForm { plane, poly2, poly5 };

inline ArealForm areal_form_from_name(const std::string& name) {
    if (name == "plane") return ArealForm::plane;
    if (name == "poly2") return ArealForm::poly2;
    if (name == "poly5") return ArealForm::poly5;
    throw InvalidParams("unknown areal form: " + name);
}

struct ArealFormFit {
    Heightmap residual;
    ArealForm form = ArealForm::plane;
    std::vector<double> coeffs;  // monomials x^i y^j, i+j <= degree, on [-1,1]^2
    double rms_residual_um = 0.0;
};

inline ArealFormFit remove_form_areal(const Heightmap& m, ArealForm form) {
    m.validate();
    const int degree = form == ArealForm::plane ? 1 : form == ArealForm::poly2 ? 2 : 5;
    const int terms = (degree + 1) * (degree + 2) / 2;
    const std::size_t n = m.samples();
    if (n < std::size_t(terms) + 2)
        throw InsufficientData("remove_form_areal: too few samples for the surface degree");

    // Monomial basis on coordinates normalised to [-1, 1] for conditioning.
    const double hx = 0.5 * m.extent_x_um(), hy = 0.5 * m.extent_y_um();
    Eigen::MatrixXd A(n, terms);
    Eigen::VectorXd b(n);
    std::vector<double> px(std::size_t(degree) + 1), py(std::size_t(degree) + 1);
    for (std::size_t iy = 0; iy < m.ny; ++iy) {
        const double ty = (double(iy) * m.dy_um - hy) / hy;
        for (std::size_t ix = 0; ix < m.nx; ++ix) {
            const double tx = (double(ix) * m.dx_um - hx) / hx;
            px[0] = py[0] = 1.0;
            for (int k = 1; k <= degree; ++k) {
                px[std::size_t(k)] = px[std::size_t(k - 1)] * tx;
                py[std::size_t(k)] = py[std::size_t(k - 1)] * ty;
            }
            const std::size_t row = iy * m.nx + ix;
            int col = 0;
            for (int i = 0; i <= degree; ++i)
                for (int j = 0; j <= degree - i; ++j)
                    A(row, col++) = px[std::size_t(i)] * py[std::size_t(j)];
            b(row) = m.z_um[row];
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < terms)
        throw FitFailure("remove_form_areal: rank-deficient design (degenerate grid)");
    Eigen::VectorXd c = qr.solve(b);

    ArealFormFit out;
    out.form = form;
    out.coeffs.assign(c.data(), c.data() + c.size());
    out.residual = m;
    Eigen::VectorXd fit = A * c;
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        out.residual.z_um[k] = m.z_um[k] - fit(Eigen::Index(k));
        ss += out.residual.z_um[k] * out.residual.z_um[k];
    }
    out.rms_residual_um = std::sqrt(ss / double(n));
    return out;
}

}  // namespace gearlab::areal
