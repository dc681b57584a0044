#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cosy/ambient.hpp"
#include "cosy/numerics.hpp"

namespace cosy {

/// An orthonormal 2-frame in tangent-frame coordinates; carries K, alpha, beta.
struct PlaneSection {
    Vec u, v;
};

/// Validates |u| = |v| = 1, u.v = 0 within 1e-8 and rejects planes whose
/// 2-frame Gram determinant is below 1e-8.
PlaneSection make_plane(Vec u, Vec v);
/// Plane spanned by frame vectors i and j (0-based) of an (n+1)-frame.
PlaneSection coordinate_plane(int i, int j, int dim);

/// Tangential / normal split of phi restricted to the tangent space:
/// phi X = (tangential lift of P X) + (normal lift of F X).
struct TangentPhiSplit {
    Matrix p;  ///< (n+1)x(n+1), skew: p(j,i) = g(e_j, phi e_i)
    Matrix f;  ///< (2m-n)x(n+1): f(r,i) = g(nu_r, phi e_i)
};

/// One symmetric shape operator per normal direction: shape[r](i,j) = h^r_ij.
using ShapeOperatorSet = std::vector<Matrix>;

/// Pointwise submanifold data: orthonormal tangent/normal frames completing a
/// basis of the ambient space, second-fundamental-form coefficients, and the
/// structure vector tangency that every result here assumes.
///
/// geometric_mode additionally enforces h(., xi) = 0, the constraint satisfied
/// by genuine xi-tangent submanifolds of cosymplectic ambients. With the mode
/// off, h is arbitrary symmetric data; the curvature identities downstream
/// are pure Gauss-equation algebra and still apply.
struct SubmanifoldPoint {
    AmbientModel ambient;
    std::vector<Vec> tangent_frame;  ///< n+1 ambient vectors, n >= 2
    std::vector<Vec> normal_frame;   ///< 2m-n ambient vectors
    ShapeOperatorSet shape;          ///< one (n+1)x(n+1) symmetric matrix per normal
    bool geometric_mode = true;
    Vec xi_tangent;                  ///< xi in tangent-frame coordinates (cached)

    int n() const { return static_cast<int>(tangent_frame.size()) - 1; }
    int dim_tangent() const { return static_cast<int>(tangent_frame.size()); }
    int codim() const { return static_cast<int>(normal_frame.size()); }
};

/// Validate all invariants (frame orthonormality and completeness, xi
/// tangency, exact h symmetry, geometric-mode constraint) and cache
/// xi_tangent. Throws ValidationError naming the violated condition.
SubmanifoldPoint make_submanifold_point(AmbientModel ambient, std::vector<Vec> tangent_frame,
                                        std::vector<Vec> normal_frame, ShapeOperatorSet shape,
                                        bool geometric_mode);

/// Random instance: frame from seeded_random_orthonormal_frame with xi fixed
/// first, h coefficients i.i.d. uniform on [-2, 2] (xi row zeroed in
/// geometric mode).
SubmanifoldPoint make_random_point(int n, int m, double c, bool geometric_mode,
                                   std::uint64_t seed);
SubmanifoldPoint make_random_point(int n, int m, double c, bool geometric_mode, Rng& rng);

/// Random plane section drawn from the given stream.
PlaneSection random_plane(int dim, Rng& rng);

TangentPhiSplit phi_split(const SubmanifoldPoint& pt);

/// |P|^2 = sum_ij g(e_i, P e_j)^2, in [0, n+1].
double p_norm_squared(const TangentPhiSplit& split);

/// (alpha, beta) of a plane: alpha = g(e1', P e2')^2, beta = eta(e1')^2 +
/// eta(e2')^2 for an orthonormal basis of the plane; both in [0,1], both
/// invariant under rotation of the plane basis.
std::pair<double, double> alpha_beta(const SubmanifoldPoint& pt, const PlaneSection& plane);

/// Mean curvature vector in normal-frame coordinates: H_r = tr(A_r) / (n+1).
Vec mean_curvature(const SubmanifoldPoint& pt);
double mean_norm_squared(const SubmanifoldPoint& pt);

/// |h|^2 = sum_{r,i,j} (h^r_ij)^2.
double h_norm_squared(const SubmanifoldPoint& pt);

/// Intrinsic curvature tensor via the Gauss equation,
/// R(X,Y,Z,W) = R~(X,Y,Z,W) + g(h(X,W), h(Y,Z)) - g(h(X,Z), h(Y,W)),
/// on tangent-frame-coordinate vectors.
double induced_curvature(const SubmanifoldPoint& pt, const Vec& x, const Vec& y, const Vec& z,
                         const Vec& w);

/// Ambient curvature restricted to the tangent frame, computed purely from
/// frame-side data (P matrix and eta components).
double ambient_curvature_tangent(const SubmanifoldPoint& pt, int i, int j, int k, int l);

/// K(plane) from induced_curvature on an orthonormal basis of the plane.
double sectional_curvature(const SubmanifoldPoint& pt, const PlaneSection& plane);

/// tau = sum_{i<j} K(span{e_i, e_j}) by direct double summation.
double scalar_curvature(const SubmanifoldPoint& pt);

/// Relative residual of the closed-form identity
/// 2 tau = (c/4)(3|P|^2 + n(n-1)) + (n+1)^2 |H|^2 - |h|^2.
double scalar_identity_residual(const SubmanifoldPoint& pt);

/// rho = 2 tau - ((n+1)^2 (n-1)/n) |H|^2 - (c/4)(3|P|^2 + n(n-1)).
double rho_invariant(const SubmanifoldPoint& pt);

/// Relative residual of the rearrangement (n+1)^2 |H|^2 = n (|h|^2 + rho).
double rho_identity_residual(const SubmanifoldPoint& pt);

}  // namespace cosy
