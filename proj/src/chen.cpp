#include "cosy/chen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cosy {

LemmaInstance make_lemma_instance(Vec a_values, double a) {
    if (a_values.size() < 2) throw ValidationError("lemma instance needs at least two values");
    const int n = static_cast<int>(a_values.size()) - 1;
    const double s = std::accumulate(a_values.begin(), a_values.end(), 0.0);
    double sq = 0.0;
    for (double x : a_values) sq += x * x;
    const double lhs = s * s;
    const double rhs = n * (sq + a);
    if (std::fabs(lhs - rhs) > 1e-9 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)}))
        throw ValidationError("lemma instance is not on the quadric constraint");
    return LemmaInstance{std::move(a_values), a, n};
}

LemmaInstance sample_lemma_instance(int n, Rng& rng, bool force_equality) {
    if (n < 1) throw ValidationError("lemma instance requires n >= 1");
    Vec values(n + 1);
    if (force_equality) {
        values[0] = rng.uniform(-2.0, 2.0);
        values[1] = rng.uniform(-2.0, 2.0);
        for (int k = 2; k <= n; ++k) values[k] = values[0] + values[1];
    } else {
        for (double& x : values) x = rng.uniform(-2.0, 2.0);
    }
    const double s = std::accumulate(values.begin(), values.end(), 0.0);
    double sq = 0.0;
    for (double x : values) sq += x * x;
    const double a = s * s / n - sq;
    return LemmaInstance{std::move(values), a, n};
}

LemmaCheck chen_lemma_check(const LemmaInstance& inst, double tol) {
    // revalidate: callers may have built the struct directly
    make_lemma_instance(inst.a_values, inst.a);
    LemmaCheck out;
    out.slack = 2.0 * inst.a_values[0] * inst.a_values[1] - inst.a;
    out.holds = out.slack >= -tol;
    out.equality = std::fabs(out.slack) <= tol;
    const double head = inst.a_values[0] + inst.a_values[1];
    double dev = 0.0;
    for (std::size_t k = 2; k < inst.a_values.size(); ++k)
        dev = std::max(dev, std::fabs(inst.a_values[k] - head));
    out.characterization = dev <= tol;
    out.consistent = (out.equality == out.characterization);
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::equality: return "equality";
        case Verdict::violated: return "violated";
    }
    return "unknown";
}

std::string to_string(CurvatureSign s) {
    switch (s) {
        case CurvatureSign::c_zero: return "c_zero";
        case CurvatureSign::c_negative: return "c_negative";
        case CurvatureSign::c_positive: return "c_positive";
    }
    return "unknown";
}

std::string to_string(SubmanifoldKind k) {
    switch (k) {
        case SubmanifoldKind::invariant: return "invariant";
        case SubmanifoldKind::anti_invariant: return "anti_invariant";
        case SubmanifoldKind::semi_invariant: return "semi_invariant";
        case SubmanifoldKind::generic: return "generic";
    }
    return "unknown";
}

double EqualityResiduals::max() const {
    return std::max({block_border, diagonal_tail, plane_offdiag});
}

namespace {

// Canonical-form residuals of a set of operators whose plane block sits at
// indices (i, j) and whose mean direction is `slot`.
EqualityResiduals shape_residuals(const ShapeOperatorSet& ops, int slot, int i, int j,
                                  double* lambda_out = nullptr, double* mu_out = nullptr) {
    EqualityResiduals res;
    const int nt = ops.front().rows();
    const Matrix& s = ops[slot];
    auto in_block = [&](int a) { return a == i || a == j; };

    for (int a = 0; a < nt; ++a)
        for (int b = a + 1; b < nt; ++b) {
            if (in_block(a) && in_block(b)) continue;  // plane off-diagonal handled separately
            res.block_border = std::max(res.block_border, std::fabs(s(a, b)));
        }
    for (int a = 0; a < nt; ++a) {
        if (in_block(a)) continue;
        res.diagonal_tail = std::max(res.diagonal_tail, std::fabs(s(a, a) - (s(i, i) + s(j, j))));
    }
    res.plane_offdiag = std::fabs(s(i, j));

    for (int r = 0; r < static_cast<int>(ops.size()); ++r) {
        if (r == slot) continue;
        const Matrix& a_r = ops[r];
        for (int a = 0; a < nt; ++a)
            for (int b = a; b < nt; ++b) {
                if (in_block(a) && in_block(b)) continue;
                res.block_border = std::max(res.block_border, std::fabs(a_r(a, b)));
            }
        res.block_border = std::max(res.block_border, std::fabs(a_r(i, i) + a_r(j, j)));
    }

    if (lambda_out) *lambda_out = s(i, i);
    if (mu_out) *mu_out = s(j, j);
    return res;
}

int mean_slot_index(const SubmanifoldPoint& pt, bool* degenerate = nullptr) {
    const Vec h = mean_curvature(pt);
    double scale = 0.0;
    for (const Matrix& a : pt.shape) scale = std::max(scale, max_abs(a));
    if (norm(h) > 1e-12 * (1.0 + scale)) {
        if (degenerate) *degenerate = false;
        int slot = 0;
        for (int r = 1; r < pt.codim(); ++r)
            if (std::fabs(h[r]) > std::fabs(h[slot])) slot = r;
        return slot;
    }
    // The proof's choice of mean direction is arbitrary here; pick the
    // largest operator for numerical stability.
    if (degenerate) *degenerate = true;
    int slot = 0;
    for (int r = 1; r < pt.codim(); ++r)
        if (frobenius_norm(pt.shape[r]) > frobenius_norm(pt.shape[slot])) slot = r;
    return slot;
}

struct AuditedOperators {
    ShapeOperatorSet ops;  // ops[0] is the mean direction; plane = span{e0, e1}
    bool mean_degenerate = false;
};

// Rotate the tangent frame so the plane becomes span{e0, e1}, the normal
// frame so the mean curvature vector is the first direction, and finally
// e0, e1 within the plane so the mean-direction off-diagonal entry vanishes.
AuditedOperators rotate_to_audit_frame(const SubmanifoldPoint& pt, const PlaneSection& plane,
                                       bool zero_plane_offdiag) {
    const int nt = pt.dim_tangent();
    const int codim = pt.codim();

    Vec u = normalized(plane.u);
    Vec v = plane.v;
    axpy(-dot(u, v), u, v);
    axpy(-dot(u, v), u, v);
    v = normalized(v);

    const std::vector<Vec> basis = complete_basis({u, v}, nt);
    Matrix b(nt, nt);
    for (int col = 0; col < nt; ++col)
        for (int row = 0; row < nt; ++row) b(row, col) = basis[col][row];
    const Matrix bt = transpose(b);

    ShapeOperatorSet rotated(codim);
    for (int r = 0; r < codim; ++r) rotated[r] = bt * (pt.shape[r] * b);

    AuditedOperators out;
    const int slot = mean_slot_index(pt, &out.mean_degenerate);

    // Normal rotation: first column is the mean direction (or the chosen
    // slot axis when degenerate); the rest completes orthonormally.
    Vec first(codim, 0.0);
    if (out.mean_degenerate) {
        first[slot] = 1.0;
    } else {
        const Vec h = mean_curvature(pt);
        first = normalized(h);
    }
    const std::vector<Vec> normal_basis = complete_basis({first}, codim);
    out.ops.assign(codim, Matrix(nt, nt));
    for (int s = 0; s < codim; ++s)
        for (int r = 0; r < codim; ++r) {
            const double w = normal_basis[s][r];
            if (w == 0.0) continue;
            for (int ii = 0; ii < nt; ++ii)
                for (int jj = 0; jj < nt; ++jj) out.ops[s](ii, jj) += w * rotated[r](ii, jj);
        }

    if (zero_plane_offdiag) {
        const Matrix& s0 = out.ops[0];
        const double apq = s0(0, 1);
        if (std::fabs(apq) > 1e-300) {
            const double theta = (s0(1, 1) - s0(0, 0)) / (2.0 * apq);
            const double t =
                (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
            const double c = 1.0 / std::sqrt(t * t + 1.0);
            const double sn = t * c;
            for (Matrix& a : out.ops) {
                for (int k = 0; k < nt; ++k) {  // columns
                    const double a0 = a(k, 0), a1 = a(k, 1);
                    a(k, 0) = c * a0 - sn * a1;
                    a(k, 1) = sn * a0 + c * a1;
                }
                for (int k = 0; k < nt; ++k) {  // rows
                    const double a0 = a(0, k), a1 = a(1, k);
                    a(0, k) = c * a0 - sn * a1;
                    a(1, k) = sn * a0 + c * a1;
                }
            }
        }
    }
    return out;
}

}  // namespace

ProofAudit proof_step_audit(const SubmanifoldPoint& pt, const PlaneSection& plane) {
    const int nt = pt.dim_tangent();
    const double n = pt.n();
    const double c = pt.ambient.c;

    const AuditedOperators audited = rotate_to_audit_frame(pt, plane, true);
    const ShapeOperatorSet& ops = audited.ops;
    const Matrix& s = ops[0];

    const double rho = rho_invariant(pt);
    const double k_pi = sectional_curvature(pt, plane);
    const auto [alpha, beta] = alpha_beta(pt, plane);
    const double ambient_k = 0.25 * c * (1.0 + 3.0 * alpha - beta);

    double slot_diag_sq = 0.0, slot_off_sq = 0.0;
    for (int i = 0; i < nt; ++i) {
        slot_diag_sq += s(i, i) * s(i, i);
        for (int j = 0; j < nt; ++j)
            if (i != j) slot_off_sq += s(i, j) * s(i, j);
    }
    double rest_sq = 0.0;
    for (std::size_t r = 1; r < ops.size(); ++r) {
        const double f = frobenius_norm(ops[r]);
        rest_sq += f * f;
    }

    ProofAudit out;
    out.mean_degenerate = audited.mean_degenerate;

    const double tr = trace(s);
    const double quadric_lhs = tr * tr;
    const double quadric_rhs = n * (slot_diag_sq + slot_off_sq + rest_sq + rho);
    out.quadric_residual = std::fabs(quadric_lhs - quadric_rhs) /
                           std::max({1.0, std::fabs(quadric_lhs), std::fabs(quadric_rhs)});

    out.lemma_slack = s(0, 0) * s(1, 1) - 0.5 * (slot_off_sq + rest_sq + rho);

    double gauss_plane = s(0, 0) * s(1, 1) - s(0, 1) * s(0, 1);
    for (std::size_t r = 1; r < ops.size(); ++r)
        gauss_plane += ops[r](0, 0) * ops[r](1, 1) - ops[r](0, 1) * ops[r](0, 1);
    out.gauss_plane_residual = std::fabs(k_pi - (ambient_k + gauss_plane)) /
                               std::max(1.0, std::fabs(k_pi));

    // Nonnegative remainder dropped between the two bound forms.
    double remainder = 0.0;
    for (const Matrix& a : ops)
        for (int j = 2; j < nt; ++j) remainder += a(0, j) * a(0, j) + a(1, j) * a(1, j);
    for (int i = 2; i < nt; ++i)
        for (int j = 2; j < nt; ++j)
            if (i != j) remainder += 0.5 * s(i, j) * s(i, j);
    for (std::size_t r = 1; r < ops.size(); ++r) {
        const Matrix& a = ops[r];
        for (int i = 2; i < nt; ++i)
            for (int j = 2; j < nt; ++j) remainder += 0.5 * a(i, j) * a(i, j);
        const double tr2 = a(0, 0) + a(1, 1);
        remainder += 0.5 * tr2 * tr2;
    }

    out.dropped_terms_slack = k_pi - (ambient_k + 0.5 * rho + remainder);
    out.final_slack = k_pi - (ambient_k + 0.5 * rho);
    out.equality_residuals = shape_residuals(ops, 0, 0, 1);
    return out;
}

InequalityReport main_inequality(const SubmanifoldPoint& pt, const PlaneSection& plane,
                                 double tol) {
    const double n = pt.n();
    if (n < 2) throw ValidationError("main inequality requires n >= 2");

    InequalityReport rep;
    rep.tau = scalar_curvature(pt);
    rep.k_pi = sectional_curvature(pt, plane);
    rep.h_norm2 = h_norm_squared(pt);
    rep.mean_norm2 = mean_norm_squared(pt);
    rep.p_norm2 = p_norm_squared(phi_split(pt));
    std::tie(rep.alpha, rep.beta) = alpha_beta(pt, plane);
    rep.rho = rho_invariant(pt);

    rep.lhs = rep.tau - rep.k_pi;
    rep.rhs = (n + 1.0) * (n + 1.0) * (n - 1.0) / (2.0 * n) * rep.mean_norm2 +
              pt.ambient.c / 8.0 *
                  (3.0 * rep.p_norm2 - 6.0 * rep.alpha + 2.0 * rep.beta + (n + 1.0) * (n - 2.0));
    rep.slack = rep.rhs - rep.lhs;

    rep.equality_residuals = proof_step_audit(pt, plane).equality_residuals;

    if (rep.slack < -tol)
        rep.verdict = Verdict::violated;
    else if (std::fabs(rep.slack) <= tol)
        rep.verdict = Verdict::equality;
    else
        rep.verdict = Verdict::holds;
    return rep;
}

ShapeCheck equality_shape_check(const SubmanifoldPoint& pt, const PlaneSection& plane,
                                double tol) {
    const int nt = pt.dim_tangent();
    int i = -1, j = -1;
    for (int k = 0; k < nt; ++k) {
        if (std::max(std::fabs(plane.u[k]), std::fabs(plane.v[k])) > 1e-8) {
            if (i < 0)
                i = k;
            else if (j < 0)
                j = k;
            else
                throw ValidationError(
                    "equality_shape_check: plane must be the span of two tangent-frame vectors");
        }
    }
    if (j < 0) throw ValidationError("equality_shape_check: degenerate plane");

    ShapeCheck out;
    const int slot = mean_slot_index(pt);
    out.residuals = shape_residuals(pt.shape, slot, i, j, &out.lambda, &out.mu);
    out.canonical = out.residuals.max() <= tol;
    return out;
}

SubmanifoldPoint construct_equality_instance(const EqualityParams& params) {
    const int n = params.n;
    const int m = params.m;
    if (n < 2) throw ValidationError("equality instance requires n >= 2");
    const int nt = n + 1;
    const int codim = 2 * m - n;
    if (codim < 1) throw ValidationError("equality instance requires positive codimension");
    if (static_cast<int>(params.blocks.size()) > codim - 1)
        throw ValidationError("more block coefficients than extra normal directions");

    int xi_index = params.xi_index < 0 ? n : params.xi_index;
    if (xi_index < 0 || xi_index > n) throw ValidationError("xi_index out of range");

    if (params.geometric_mode) {
        if (xi_index >= 2) {
            if (std::fabs(params.lambda + params.mu) > 1e-12)
                throw ValidationError(
                    "geometric placement: xi in the trace block forces lambda + mu = 0");
        } else {
            const double slot_diag = (xi_index == 0) ? params.lambda : params.mu;
            if (std::fabs(slot_diag) > 1e-12)
                throw ValidationError(
                    "geometric placement: xi at a plane slot forces that diagonal entry to 0");
            for (const auto& [a, bcoef] : params.blocks)
                if (std::fabs(a) > 1e-12 || std::fabs(bcoef) > 1e-12)
                    throw ValidationError(
                        "geometric placement: xi at a plane slot forces zero block coefficients");
        }
    }

    AmbientModel ambient = make_standard_structure(m, params.c);
    const std::vector<Vec> frame =
        seeded_random_orthonormal_frame(2 * m + 1, ambient.xi, params.frame_seed);

    std::vector<Vec> tangent(nt);
    int next = 1;  // frame[0] is xi
    for (int k = 0; k < nt; ++k) tangent[k] = (k == xi_index) ? frame[0] : frame[next++];
    std::vector<Vec> normal(frame.begin() + nt, frame.end());

    ShapeOperatorSet shape(codim, Matrix(nt, nt));
    shape[0](0, 0) = params.lambda;
    shape[0](1, 1) = params.mu;
    for (int k = 2; k < nt; ++k) shape[0](k, k) = params.lambda + params.mu;
    for (std::size_t b = 0; b < params.blocks.size(); ++b) {
        Matrix& a = shape[b + 1];
        a(0, 0) = params.blocks[b].first;
        a(1, 1) = -params.blocks[b].first;
        a(0, 1) = params.blocks[b].second;
        a(1, 0) = params.blocks[b].second;
    }

    return make_submanifold_point(std::move(ambient), std::move(tangent), std::move(normal),
                                  std::move(shape), params.geometric_mode);
}

DeltaBound delta_upper_bound(const SubmanifoldPoint& pt) {
    const double n = pt.n();
    if (n < 2) throw ValidationError("delta bound requires n >= 2");
    DeltaBound out;
    out.bound = (n + 1.0) * (n + 1.0) * (n - 1.0) / (2.0 * n) * mean_norm_squared(pt);
    const double c = pt.ambient.c;
    if (c < 0.0) {
        out.sign = CurvatureSign::c_negative;
        out.bound += (n + 1.0) * (n - 2.0) / 2.0 * (c / 4.0);
    } else if (c > 0.0) {
        out.sign = CurvatureSign::c_positive;
        out.bound += n * (n + 2.0) / 2.0 * (c / 4.0);
    }
    return out;
}

ClassificationResult classify_submanifold(const SubmanifoldPoint& pt, double tol) {
    const TangentPhiSplit split = phi_split(pt);
    const int nt = pt.dim_tangent();

    const double f_max = pt.codim() > 0 ? max_abs(split.f) : 0.0;
    const double p_max = max_abs(split.p);

    const Matrix p2 = split.p * split.p;
    const double f_structure_residual = max_abs(split.p * p2 + split.p);

    // Singular values of the skew matrix P from -P^2 (symmetric PSD).
    const SymEigen eig = sym_eigen(-1.0 * p2);
    int rank = 0;
    for (double lam : eig.values)
        if (std::sqrt(std::max(lam, 0.0)) > tol) ++rank;

    ClassificationResult out;
    out.rank_p = rank;
    out.dim_d_perp = nt - rank - 1;
    if (f_max <= tol)
        out.kind = SubmanifoldKind::invariant;
    else if (p_max <= tol)
        out.kind = SubmanifoldKind::anti_invariant;
    else if (f_structure_residual <= tol)
        out.kind = SubmanifoldKind::semi_invariant;
    else
        out.kind = SubmanifoldKind::generic;
    return out;
}

GeodesicCertificate totally_geodesic_certificate(const SubmanifoldPoint& pt, double tol) {
    const int nt = pt.dim_tangent();
    const TangentPhiSplit split = phi_split(pt);
    double scale = 1.0;
    for (const Matrix& a : pt.shape) scale = std::max(scale, max_abs(a));

    if (pt.codim() > 0 && max_abs(split.f) > 1e-8)
        throw ValidationError("certificate requires an invariant point (F ~ 0)");

    // xi must lie in the plane block span{e0, e1} of the canonical frame.
    const double xi0 = pt.xi_tangent[0], xi1 = pt.xi_tangent[1];
    const double in_plane = std::sqrt(xi0 * xi0 + xi1 * xi1);
    if (std::fabs(in_plane - 1.0) > 1e-8)
        throw ValidationError("certificate requires xi inside the canonical plane block");

    // Rotate within the plane so e0 = xi; operators and P transform alike.
    const double c0 = xi0 / in_plane, s0 = xi1 / in_plane;
    auto rotate01 = [&](Matrix a) {
        for (int k = 0; k < nt; ++k) {
            const double x = a(k, 0), y = a(k, 1);
            a(k, 0) = c0 * x + s0 * y;
            a(k, 1) = -s0 * x + c0 * y;
        }
        for (int k = 0; k < nt; ++k) {
            const double x = a(0, k), y = a(1, k);
            a(0, k) = c0 * x + s0 * y;
            a(1, k) = -s0 * x + c0 * y;
        }
        return a;
    };

    ShapeOperatorSet ops(pt.shape.size());
    for (std::size_t r = 0; r < ops.size(); ++r) ops[r] = rotate01(pt.shape[r]);
    const Matrix p = rotate01(split.p);

    // Canonical-structure gate: outside the 2x2 plane block only the
    // mean-direction trace diagonal may survive.
    const int slot = mean_slot_index(pt);
    double structure = 0.0;
    for (int r = 0; r < static_cast<int>(ops.size()); ++r) {
        const Matrix& a = ops[r];
        for (int i = 0; i < nt; ++i)
            for (int j = i; j < nt; ++j) {
                const bool block = (i < 2 && j < 2);
                const bool slot_tail_diag = (r == slot && i == j);
                if (block || slot_tail_diag) continue;
                structure = std::max(structure, std::fabs(a(i, j)));
            }
        if (r == slot)
            for (int k = 2; k < nt; ++k)
                structure = std::max(structure, std::fabs(a(k, k) - (a(0, 0) + a(1, 1))));
        else
            for (int k = 2; k < nt; ++k) structure = std::max(structure, std::fabs(a(k, k)));
    }
    if (structure > 1e-6 * (1.0 + scale))
        throw ValidationError("certificate requires shape operators in equality canonical form");

    GeodesicCertificate cert;
    for (const Matrix& a : ops) {
        cert.minimality_residual = std::max(cert.minimality_residual, std::fabs(trace(a)));
        cert.anticommutation_residual =
            std::max(cert.anticommutation_residual, max_abs(a * p + p * a));
        for (int i = 1; i < nt; ++i)
            cert.xi_column_residual = std::max(cert.xi_column_residual, std::fabs(a(i, 0)));
        cert.max_h = std::max(cert.max_h, max_abs(a));
    }

    // Eigen-argument: A_r (P e2) = c_r (P e2) with c_r = -(A_r)_{22}; the
    // canonical zero block forces c_r = 0 when consistent.
    const Vec e2 = unit_vector(nt, 1);
    const Vec pe2 = p * e2;
    for (const Matrix& a : ops) {
        const double c_r = -a(1, 1);
        Vec lhs = a * pe2;
        axpy(-c_r, pe2, lhs);
        cert.principal_residual = std::max(cert.principal_residual, max_abs(lhs));
    }

    if (cert.minimality_residual > tol)
        cert.failed_step = "minimality";
    else if (cert.xi_column_residual > tol)
        cert.failed_step = "xi_column";
    else if (cert.principal_residual > tol)
        cert.failed_step = "principal_curvature";
    else if (cert.max_h > tol)
        cert.failed_step = "residual_h";

    cert.verdict = (cert.max_h <= tol) ? CertificateVerdict::totally_geodesic
                                       : CertificateVerdict::hypotheses_inconsistent;
    if (cert.verdict == CertificateVerdict::totally_geodesic) cert.failed_step.clear();
    return cert;
}

}  // namespace cosy
