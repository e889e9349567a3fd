#pragma once
// Least-squares reference forms removed from raw traces before filtering:
// straight line, degree-5 polynomial, or circle arc (radial residuals).

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "profile.hpp"

namespace gearlab::prof {

enum class ReferenceForm { line, poly5, circle };

inline ReferenceForm reference_form_from_name(const std::string& name) {
    if (name == "line") return ReferenceForm::line;
    if (name == "poly5") return ReferenceForm::poly5;
    if (name == "circle") return ReferenceForm::circle;
    throw InvalidParams("unknown reference form: " + name);
}

struct ReferenceFit {
    Profile residual;             // trace minus reference, um
    ReferenceForm form = ReferenceForm::line;
    std::vector<double> coeffs;   // polynomial: ascending powers of centred x
    double radius_um = 0.0;       // circle only
    double rms_residual_um = 0.0;
};

namespace fitdetail {

// Polynomial LSQ on x normalised to [-1, 1] for conditioning.
inline ReferenceFit fit_poly(const Profile& p, int degree) {
    const std::size_t n = p.n();
    if (n < std::size_t(degree + 2))
        throw InsufficientData("reference fit: too few samples for polynomial degree");
    const double half = 0.5 * p.evaluation_length_um();
    Eigen::MatrixXd A(n, degree + 1);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (p.x_at(i) - half) / half;
        double pw = 1.0;
        for (int j = 0; j <= degree; ++j) {
            A(i, j) = pw;
            pw *= t;
        }
        b(i) = p.z[i];
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    ReferenceFit out;
    out.form = degree == 1 ? ReferenceForm::line : ReferenceForm::poly5;
    out.coeffs.assign(c.data(), c.data() + c.size());
    out.residual = p;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (p.x_at(i) - half) / half;
        double fit = 0.0, pw = 1.0;
        for (int j = 0; j <= degree; ++j) {
            fit += c(j) * pw;
            pw *= t;
        }
        out.residual.z[i] = p.z[i] - fit;
        ss += out.residual.z[i] * out.residual.z[i];
    }
    out.rms_residual_um = std::sqrt(ss / double(n));
    return out;
}

// Circle fit: algebraic (Kasa) start, Gauss-Newton refinement on signed
// radial residuals. Straight data has no circle: detected and rejected.
inline ReferenceFit fit_circle(const Profile& p) {
    const std::size_t n = p.n();
    if (n < 6) throw InsufficientData("reference fit: need at least 6 samples for a circle");
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = p.x_at(i), y = p.z[i];
        A(i, 0) = 2.0 * x;
        A(i, 1) = 2.0 * y;
        A(i, 2) = 1.0;
        b(i) = x * x + y * y;
    }
    Eigen::VectorXd s = A.colPivHouseholderQr().solve(b);
    double cx = s(0), cy = s(1);
    double r2 = s(2) + cx * cx + cy * cy;
    if (!(r2 > 0.0) || !std::isfinite(r2))
        throw FitFailure("circle fit: data has no measurable curvature");
    double r = std::sqrt(r2);
    const double span = p.evaluation_length_um();
    if (r > 1e6 * span) throw FitFailure("circle fit: data has no measurable curvature");

    for (int it = 0; it < 50; ++it) {
        Eigen::MatrixXd J(n, 3);
        Eigen::VectorXd res(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = p.x_at(i) - cx, dy = p.z[i] - cy;
            const double d = std::hypot(dx, dy);
            if (d < 1e-12) throw FitFailure("circle fit: degenerate point at centre");
            res(i) = d - r;
            J(i, 0) = -dx / d;
            J(i, 1) = -dy / d;
            J(i, 2) = -1.0;
        }
        Eigen::Vector3d step = J.colPivHouseholderQr().solve(-res);
        cx += step(0);
        cy += step(1);
        r += step(2);
        if (!(r > 0.0) || !std::isfinite(r) || r > 1e7 * span)
            throw FitFailure("circle fit: diverged (data has no measurable curvature)");
        if (step.norm() < 1e-12 * std::max(1.0, r)) break;
    }

    ReferenceFit out;
    out.form = ReferenceForm::circle;
    out.radius_um = r;
    out.coeffs = {cx, cy, r};
    out.residual = p;
    double ss = 0.0;
    // Signed radial residual, oriented so "up" in z stays positive.
    const double sign = cy > detail::mean(p.z) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::hypot(p.x_at(i) - cx, p.z[i] - cy);
        out.residual.z[i] = sign * (d - r);
        ss += out.residual.z[i] * out.residual.z[i];
    }
    out.rms_residual_um = std::sqrt(ss / double(n));
    return out;
}

}  // namespace fitdetail

inline ReferenceFit fit_reference(const Profile& p, ReferenceForm form) {
    p.validate();
    switch (form) {
        case ReferenceForm::line: return fitdetail::fit_poly(p, 1);
        case ReferenceForm::poly5: return fitdetail::fit_poly(p, 5);
        case ReferenceForm::circle: return fitdetail::fit_circle(p);
    }
    throw InvalidParams("fit_reference: unknown form");
}

}  // namespace gearlab::prof
