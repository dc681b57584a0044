#include "cosy/ambient.hpp"

#include <algorithm>
#include <cmath>

namespace cosy {

double StructureReport::max_residual() const {
    return std::max({phi_square_residual, eta_xi_residual, phi_xi_residual, eta_phi_residual,
                     compatibility_residual, skew_residual});
}

AmbientModel make_standard_structure(int m, double c) {
    if (m < 1) throw ValidationError("ambient m must be >= 1");
    AmbientModel model;
    model.m = m;
    model.c = c;
    const int d = model.dim();
    model.phi = Matrix(d, d);
    for (int i = 0; i < m; ++i) {
        model.phi(m + i, i) = 1.0;   // phi dx_i = dy_i
        model.phi(i, m + i) = -1.0;  // phi dy_i = -dx_i
    }
    model.xi = unit_vector(d, d - 1);
    return model;
}

StructureReport check_almost_contact(const AmbientModel& model) {
    const int d = model.dim();
    if (model.phi.rows() != d || model.phi.cols() != d || static_cast<int>(model.xi.size()) != d)
        throw ValidationError("ambient model has inconsistent dimensions");

    StructureReport r;

    const Matrix phi2 = model.phi * model.phi;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double expected = -(i == j ? 1.0 : 0.0) + model.xi[i] * model.xi[j];
            r.phi_square_residual = std::max(r.phi_square_residual, std::fabs(phi2(i, j) - expected));
        }

    r.eta_xi_residual = std::fabs(model.eta(model.xi) - 1.0);
    r.phi_xi_residual = max_abs(model.phi * model.xi);

    // eta o phi: row vector xi^T phi
    const Vec eta_phi = transpose(model.phi) * model.xi;
    r.eta_phi_residual = max_abs(eta_phi);

    const Matrix gram = transpose(model.phi) * model.phi;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double expected = (i == j ? 1.0 : 0.0) - model.xi[i] * model.xi[j];
            r.compatibility_residual =
                std::max(r.compatibility_residual, std::fabs(gram(i, j) - expected));
        }

    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            r.skew_residual = std::max(r.skew_residual, std::fabs(model.phi(i, j) + model.phi(j, i)));

    r.pass = r.max_residual() < 1e-10;
    return r;
}

double ambient_curvature(const AmbientModel& model, const Vec& x, const Vec& y, const Vec& z,
                         const Vec& w) {
    const Vec px = model.phi * x;
    const Vec py = model.phi * y;
    const Vec pz = model.phi * z;
    const Vec pw = model.phi * w;
    const double ex = model.eta(x), ey = model.eta(y), ez = model.eta(z), ew = model.eta(w);

    const double term = dot(x, w) * dot(y, z) - dot(x, z) * dot(y, w)
                      + dot(x, pw) * dot(y, pz) - dot(x, pz) * dot(y, pw)
                      - 2.0 * dot(x, py) * dot(z, pw)
                      - dot(x, w) * ey * ez + dot(x, z) * ey * ew
                      - dot(y, z) * ex * ew + dot(y, w) * ex * ez;
    return 0.25 * model.c * term;
}

double ambient_curvature(const AmbientModel& model, const CurvatureQuery& q) {
    return ambient_curvature(model, q.x, q.y, q.z, q.w);
}

double ambient_sectional(const AmbientModel& model, const Vec& u, const Vec& v) {
    const double gram_det = dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v);
    if (gram_det < kRankTol) throw ValidationError("ambient_sectional: degenerate plane");
    if (std::fabs(norm(u) - 1.0) > 1e-8 || std::fabs(norm(v) - 1.0) > 1e-8 ||
        std::fabs(dot(u, v)) > 1e-8)
        throw ValidationError("ambient_sectional: plane basis not orthonormal within 1e-8");
    return ambient_curvature(model, u, v, v, u);
}

}  // namespace cosy
