#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cosy/submanifold.hpp"

namespace cosy {

/// n+2 reals (a_1..a_{n+1}, a) on the quadric (sum a_i)^2 = n (sum a_i^2 + a).
struct LemmaInstance {
    Vec a_values;
    double a = 0.0;
    int n = 1;
};

/// Validates the quadric constraint within 1e-9 relative.
LemmaInstance make_lemma_instance(Vec a_values, double a);

/// Draw a_i uniform on [-2, 2] and solve the constraint for a. With
/// force_equality the tail is pinned to a_1 + a_2, which lands exactly on the
/// equality locus.
LemmaInstance sample_lemma_instance(int n, Rng& rng, bool force_equality = false);

struct LemmaCheck {
    bool holds = false;             ///< 2 a_1 a_2 >= a - tol
    bool equality = false;          ///< |2 a_1 a_2 - a| <= tol
    bool characterization = false;  ///< a_1 + a_2 = a_3 = ... = a_{n+1} within tol
    bool consistent = false;        ///< equality == characterization
    double slack = 0.0;             ///< 2 a_1 a_2 - a
};

LemmaCheck chen_lemma_check(const LemmaInstance& inst, double tol = 1e-9);

enum class Verdict { holds, equality, violated };

std::string to_string(Verdict v);

/// Residuals of the equality canonical-form conditions, measured on shape
/// operators expressed in a frame adapted to the checked plane.
struct EqualityResiduals {
    double block_border = 0.0;   ///< entries forced to zero outside the 2x2 blocks, plus tracelessness of the non-mean blocks
    double diagonal_tail = 0.0;  ///< mean-direction tail diagonal minus (first two diagonal entries summed)
    double plane_offdiag = 0.0;  ///< mean-direction off-diagonal entry inside the plane
    double max() const;
};

/// Both sides of the pinching inequality at a plane, with diagnostics.
struct InequalityReport {
    double lhs = 0.0;   ///< tau - K(plane)
    double rhs = 0.0;
    double slack = 0.0; ///< rhs - lhs
    double tau = 0.0, k_pi = 0.0, h_norm2 = 0.0, mean_norm2 = 0.0, p_norm2 = 0.0;
    double alpha = 0.0, beta = 0.0, rho = 0.0;
    EqualityResiduals equality_residuals;  ///< measured after the audit rotation
    Verdict verdict = Verdict::holds;
};

/// tau - K(pi) <= ((n+1)^2 (n-1) / 2n) |H|^2
///              + (c/8) (3|P|^2 - 6 alpha + 2 beta + (n+1)(n-2)).
InequalityReport main_inequality(const SubmanifoldPoint& pt, const PlaneSection& plane,
                                 double tol = 1e-9);

/// Residuals and slacks of every intermediate step of the inequality's
/// derivation, evaluated after rotating the tangent frame onto the plane and
/// the normal frame onto the mean-curvature direction (plus the residual
/// in-plane rotation that kills the mean-direction off-diagonal entry). A
/// tight step has zero slack, so equality diagnosis localizes.
struct ProofAudit {
    double quadric_residual = 0.0;     ///< trace identity feeding the lemma
    double gauss_plane_residual = 0.0; ///< K(plane) against its shape-coefficient expansion
    double lemma_slack = 0.0;          ///< product bound from the lemma
    double dropped_terms_slack = 0.0;  ///< bound keeping the nonnegative remainder terms
    double final_slack = 0.0;          ///< bound with the remainder dropped
    EqualityResiduals equality_residuals;
    bool mean_degenerate = false;      ///< |H| ~ 0: slot chosen as the largest shape operator
};

ProofAudit proof_step_audit(const SubmanifoldPoint& pt, const PlaneSection& plane);

/// Verbatim canonical-form check in the frames as given (no rotation): the
/// plane must be the span of two tangent-frame vectors. lambda and mu are the
/// two plane-slot diagonal entries of the mean-direction operator.
struct ShapeCheck {
    bool canonical = false;
    EqualityResiduals residuals;
    double lambda = 0.0, mu = 0.0;
};

ShapeCheck equality_shape_check(const SubmanifoldPoint& pt, const PlaneSection& plane,
                                double tol = 1e-9);

/// Parameters of a constructed equality point: the mean-direction operator is
/// diag(lambda, mu, (lambda+mu) I_{n-1}), every other operator a traceless
/// symmetric 2x2 block (a_r, b_r) bordered by zeros, frames random orthonormal
/// with xi placed at xi_index inside the tangent frame (-1 = last).
struct EqualityParams {
    int n = 2;
    int m = 3;
    double c = 0.0;
    double lambda = 1.0;
    double mu = 2.0;
    std::vector<std::pair<double, double>> blocks;  ///< one (a_r, b_r) per extra normal direction
    int xi_index = -1;
    bool geometric_mode = false;
    std::uint64_t frame_seed = 7;
};

/// Point whose main_inequality at the plane of the first two tangent vectors
/// reports equality. In geometric mode the placement of xi is validated:
/// xi in the trace block forces lambda + mu = 0; xi in a plane slot forces
/// that slot's diagonal entry and the block coefficients to vanish.
SubmanifoldPoint construct_equality_instance(const EqualityParams& params);

enum class CurvatureSign { c_zero, c_negative, c_positive };

std::string to_string(CurvatureSign s);

struct DeltaBound {
    double bound = 0.0;
    CurvatureSign sign = CurvatureSign::c_zero;
};

/// Upper bound for delta = tau - inf K:
///   c = 0:  ((n+1)^2 (n-1) / 2n) |H|^2
///   c < 0:  ... + ((n+1)(n-2)/2) (c/4)
///   c > 0:  ... + (n(n+2)/2) (c/4)
DeltaBound delta_upper_bound(const SubmanifoldPoint& pt);

enum class SubmanifoldKind { invariant, anti_invariant, semi_invariant, generic };

std::string to_string(SubmanifoldKind k);

/// Pointwise classification by the rank and kernel of P: invariant iff F ~ 0,
/// anti-invariant iff P ~ 0, semi-invariant iff P is an f-structure
/// (P^3 + P ~ 0, equivalently the image of P is phi-closed), generic
/// otherwise. rank(P) is even; dim_d_perp = (n+1) - rank(P) - 1.
struct ClassificationResult {
    SubmanifoldKind kind = SubmanifoldKind::generic;
    int rank_p = 0;
    int dim_d_perp = 0;
};

ClassificationResult classify_submanifold(const SubmanifoldPoint& pt, double tol = 1e-8);

enum class CertificateVerdict { totally_geodesic, hypotheses_inconsistent };

/// Numerical replay of the proof that an invariant equality point with c > 0
/// is totally geodesic: (i) invariance forces minimality, so the traces must
/// vanish; (ii) the anticommutation A_r P + P A_r = 0 is reported; (iii) the
/// xi column of every operator must be proportional to xi; (iv) the
/// eigen-argument A_r (P e_2) = c_r (P e_2) against the zero block forces the
/// remaining principal curvature to vanish. The verdict is totally_geodesic
/// exactly when max |h| ends below tol; otherwise the first violated gate is
/// named.
struct GeodesicCertificate {
    CertificateVerdict verdict = CertificateVerdict::hypotheses_inconsistent;
    std::string failed_step;  ///< empty when totally_geodesic
    double minimality_residual = 0.0;
    double anticommutation_residual = 0.0;
    double xi_column_residual = 0.0;
    double principal_residual = 0.0;
    double max_h = 0.0;
};

/// Requires an invariant point whose shape operators are in canonical form
/// with xi inside the plane block; rejects anything else.
GeodesicCertificate totally_geodesic_certificate(const SubmanifoldPoint& pt, double tol = 1e-9);

}  // namespace cosy
