#pragma once

#include "cosy/numerics.hpp"

namespace cosy {

/// Pointwise data of a (2m+1)-dimensional cosymplectic space form: the almost
/// contact metric structure (phi, xi, eta, g) in canonical orthonormal
/// coordinates (metric = identity, eta = metric dual of xi) together with the
/// constant phi-sectional curvature c. Immutable after construction.
struct AmbientModel {
    int m = 1;
    double c = 0.0;
    Matrix phi;
    Vec xi;

    int dim() const { return 2 * m + 1; }
    double eta(const Vec& x) const { return dot(xi, x); }
};

/// Arguments of a full curvature tensor evaluation R(x, y, z, w).
struct CurvatureQuery {
    Vec x, y, z, w;
};

/// Max-abs residual of each structure identity; pass iff all below 1e-10.
struct StructureReport {
    double phi_square_residual = 0.0;    // phi^2 + I - xi eta^T
    double eta_xi_residual = 0.0;        // eta(xi) - 1
    double phi_xi_residual = 0.0;        // phi xi
    double eta_phi_residual = 0.0;       // eta o phi
    double compatibility_residual = 0.0; // g(phi X, phi Y) - g(X, Y) + eta(X) eta(Y)
    double skew_residual = 0.0;          // g(X, phi Y) + g(phi X, Y)
    bool pass = false;

    double max_residual() const;
};

/// Canonical structure on R^(2m+1): phi maps the x-block to the y-block
/// (phi dx_i = dy_i, phi dy_i = -dx_i, phi xi = 0), xi = last coordinate axis.
AmbientModel make_standard_structure(int m, double c);

/// Evaluate every almost-contact-metric identity on the given model.
StructureReport check_almost_contact(const AmbientModel& model);

/// Curvature tensor of a cosymplectic space form of constant phi-sectional
/// curvature c, evaluated on four ambient vectors.
double ambient_curvature(const AmbientModel& model, const Vec& x, const Vec& y, const Vec& z,
                         const Vec& w);
double ambient_curvature(const AmbientModel& model, const CurvatureQuery& q);

/// Sectional curvature of the plane spanned by u, v (orthonormal within 1e-8).
/// Rejects degenerate (near-collinear) input.
double ambient_sectional(const AmbientModel& model, const Vec& u, const Vec& v);

}  // namespace cosy
