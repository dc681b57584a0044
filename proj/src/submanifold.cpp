#include "cosy/submanifold.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cosy {

namespace {

// Orthonormal basis of a plane section, normalized to machine precision so
// downstream residuals are not polluted by the 1e-8 construction slop.
std::pair<Vec, Vec> exact_plane_basis(const PlaneSection& plane) {
    Vec u = normalized(plane.u);
    Vec v = plane.v;
    axpy(-dot(u, v), u, v);
    axpy(-dot(u, v), u, v);
    return {std::move(u), normalized(v)};
}

}  // namespace

PlaneSection make_plane(Vec u, Vec v) {
    if (u.size() != v.size() || u.empty()) throw ValidationError("plane: basis length mismatch");
    const double gram_det = dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v);
    if (gram_det < 1e-8) throw ValidationError("plane: degenerate 2-frame (Gram determinant < 1e-8)");
    if (std::fabs(norm(u) - 1.0) > 1e-8 || std::fabs(norm(v) - 1.0) > 1e-8 ||
        std::fabs(dot(u, v)) > 1e-8)
        throw ValidationError("plane: basis not orthonormal within 1e-8");
    return PlaneSection{std::move(u), std::move(v)};
}

PlaneSection coordinate_plane(int i, int j, int dim) {
    if (i == j) throw ValidationError("coordinate_plane: indices must differ");
    return PlaneSection{unit_vector(dim, i), unit_vector(dim, j)};
}

SubmanifoldPoint make_submanifold_point(AmbientModel ambient, std::vector<Vec> tangent_frame,
                                        std::vector<Vec> normal_frame, ShapeOperatorSet shape,
                                        bool geometric_mode) {
    const int d = ambient.dim();
    const int nt = static_cast<int>(tangent_frame.size());
    const int nn = static_cast<int>(normal_frame.size());
    if (nt < 3) throw ValidationError("tangent frame must have n+1 >= 3 vectors (n >= 2)");
    if (nt + nn != d)
        throw ValidationError("tangent and normal frames must complete a basis of the ambient space");

    std::vector<const Vec*> all;
    all.reserve(d);
    for (const Vec& t : tangent_frame) all.push_back(&t);
    for (const Vec& nvec : normal_frame) all.push_back(&nvec);
    for (int a = 0; a < d; ++a) {
        if (static_cast<int>(all[a]->size()) != d)
            throw ValidationError("frame vector has wrong ambient dimension");
        for (int b = a; b < d; ++b) {
            const double g = dot(*all[a], *all[b]);
            const double expected = (a == b) ? 1.0 : 0.0;
            if (std::fabs(g - expected) > kOrthoTol)
                throw ValidationError("combined frame not orthonormal within 1e-10");
        }
    }

    // xi must lie in the tangent span.
    Vec xi_tangent(nt);
    Vec residual = ambient.xi;
    for (int i = 0; i < nt; ++i) {
        xi_tangent[i] = dot(tangent_frame[i], ambient.xi);
        axpy(-xi_tangent[i], tangent_frame[i], residual);
    }
    if (norm(residual) > kOrthoTol)
        throw ValidationError("structure vector xi is not tangent within 1e-10");

    if (static_cast<int>(shape.size()) != nn)
        throw ValidationError("shape operator count must equal the codimension");
    for (int r = 0; r < nn; ++r) {
        if (shape[r].rows() != nt || shape[r].cols() != nt)
            throw ValidationError("shape operator " + std::to_string(r) + " has wrong dimensions");
        if (!shape[r].all_finite())
            throw ValidationError("shape operator " + std::to_string(r) + " has non-finite entries");
        for (int i = 0; i < nt; ++i)
            for (int j = i + 1; j < nt; ++j)
                if (shape[r](i, j) != shape[r](j, i))
                    throw ValidationError("h[" + std::to_string(r) + "][" + std::to_string(i) + "][" +
                                          std::to_string(j) + "] breaks exact symmetry");
    }

    if (geometric_mode) {
        for (int r = 0; r < nn; ++r) {
            const Vec col = shape[r] * xi_tangent;
            if (max_abs(col) > 1e-12)
                throw ValidationError("geometric mode requires h(., xi) = 0 within 1e-12 (violated by A_" +
                                      std::to_string(r) + ")");
        }
    }

    SubmanifoldPoint pt;
    pt.ambient = std::move(ambient);
    pt.tangent_frame = std::move(tangent_frame);
    pt.normal_frame = std::move(normal_frame);
    pt.shape = std::move(shape);
    pt.geometric_mode = geometric_mode;
    pt.xi_tangent = std::move(xi_tangent);
    return pt;
}

SubmanifoldPoint make_random_point(int n, int m, double c, bool geometric_mode, Rng& rng) {
    if (n < 2) throw ValidationError("random point requires n >= 2");
    const int d = 2 * m + 1;
    if (n + 1 >= d) throw ValidationError("random point requires positive codimension");

    AmbientModel ambient = make_standard_structure(m, c);
    std::vector<Vec> frame = random_orthonormal_frame(d, ambient.xi, rng);
    std::vector<Vec> tangent(frame.begin(), frame.begin() + n + 1);
    std::vector<Vec> normal(frame.begin() + n + 1, frame.end());

    ShapeOperatorSet shape(normal.size(), Matrix(n + 1, n + 1));
    for (auto& a : shape)
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) {
                const double x = rng.uniform(-2.0, 2.0);
                a(i, j) = x;
                a(j, i) = x;
            }
    if (geometric_mode) {
        // xi is the first tangent frame vector; zero its row and column.
        for (auto& a : shape)
            for (int i = 0; i <= n; ++i) {
                a(0, i) = 0.0;
                a(i, 0) = 0.0;
            }
    }
    return make_submanifold_point(std::move(ambient), std::move(tangent), std::move(normal),
                                  std::move(shape), geometric_mode);
}

SubmanifoldPoint make_random_point(int n, int m, double c, bool geometric_mode,
                                   std::uint64_t seed) {
    Rng rng(seed);
    return make_random_point(n, m, c, geometric_mode, rng);
}

PlaneSection random_plane(int dim, Rng& rng) {
    while (true) {
        Vec u(dim), v(dim);
        for (double& x : u) x = rng.gaussian();
        for (double& x : v) x = rng.gaussian();
        const double gram_det = dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v);
        if (gram_det < 1e-6) continue;
        u = normalized(u);
        axpy(-dot(u, v), u, v);
        axpy(-dot(u, v), u, v);
        return PlaneSection{u, normalized(v)};
    }
}

TangentPhiSplit phi_split(const SubmanifoldPoint& pt) {
    const int nt = pt.dim_tangent();
    const int nn = pt.codim();
    TangentPhiSplit split;
    split.p = Matrix(nt, nt);
    split.f = nn > 0 ? Matrix(nn, nt) : Matrix();
    for (int i = 0; i < nt; ++i) {
        const Vec phi_ei = pt.ambient.phi * pt.tangent_frame[i];
        for (int j = 0; j < nt; ++j) split.p(j, i) = dot(pt.tangent_frame[j], phi_ei);
        for (int r = 0; r < nn; ++r) split.f(r, i) = dot(pt.normal_frame[r], phi_ei);
    }
    return split;
}

double p_norm_squared(const TangentPhiSplit& split) {
    double s = 0.0;
    for (double x : split.p.entries()) s += x * x;
    return s;
}

std::pair<double, double> alpha_beta(const SubmanifoldPoint& pt, const PlaneSection& plane) {
    const auto [u, v] = exact_plane_basis(plane);
    const TangentPhiSplit split = phi_split(pt);
    const double g_u_pv = dot(u, split.p * v);
    const double eu = dot(u, pt.xi_tangent);
    const double ev = dot(v, pt.xi_tangent);
    return {g_u_pv * g_u_pv, eu * eu + ev * ev};
}

Vec mean_curvature(const SubmanifoldPoint& pt) {
    const double inv = 1.0 / pt.dim_tangent();
    Vec h(pt.codim());
    for (int r = 0; r < pt.codim(); ++r) h[r] = trace(pt.shape[r]) * inv;
    return h;
}

double mean_norm_squared(const SubmanifoldPoint& pt) {
    const Vec h = mean_curvature(pt);
    return dot(h, h);
}

double h_norm_squared(const SubmanifoldPoint& pt) {
    double s = 0.0;
    for (const Matrix& a : pt.shape)
        for (double x : a.entries()) s += x * x;
    return s;
}

double ambient_curvature_tangent(const SubmanifoldPoint& pt, int i, int j, int k, int l) {
    const TangentPhiSplit split = phi_split(pt);
    const Matrix& p = split.p;
    const Vec& e = pt.xi_tangent;
    auto kron = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    const double term = kron(i, l) * kron(j, k) - kron(i, k) * kron(j, l)
                      + p(i, l) * p(j, k) - p(i, k) * p(j, l) - 2.0 * p(i, j) * p(k, l)
                      - kron(i, l) * e[j] * e[k] + kron(i, k) * e[j] * e[l]
                      - kron(j, k) * e[i] * e[l] + kron(j, l) * e[i] * e[k];
    return 0.25 * pt.ambient.c * term;
}

namespace {

Vec lift_to_ambient(const SubmanifoldPoint& pt, const Vec& coords) {
    Vec out(pt.ambient.dim(), 0.0);
    for (int i = 0; i < pt.dim_tangent(); ++i) axpy(coords[i], pt.tangent_frame[i], out);
    return out;
}

}  // namespace

double induced_curvature(const SubmanifoldPoint& pt, const Vec& x, const Vec& y, const Vec& z,
                         const Vec& w) {
    const int nt = pt.dim_tangent();
    if (static_cast<int>(x.size()) != nt || static_cast<int>(y.size()) != nt ||
        static_cast<int>(z.size()) != nt || static_cast<int>(w.size()) != nt)
        throw ValidationError("induced_curvature expects tangent-frame coordinate vectors");

    const double ambient_part = ambient_curvature(
        pt.ambient, lift_to_ambient(pt, x), lift_to_ambient(pt, y), lift_to_ambient(pt, z),
        lift_to_ambient(pt, w));

    double gauss = 0.0;
    for (const Matrix& a : pt.shape) {
        const double h_xw = dot(x, a * w);
        const double h_yz = dot(y, a * z);
        const double h_xz = dot(x, a * z);
        const double h_yw = dot(y, a * w);
        gauss += h_xw * h_yz - h_xz * h_yw;
    }
    return ambient_part + gauss;
}

double sectional_curvature(const SubmanifoldPoint& pt, const PlaneSection& plane) {
    const double gram_det = dot(plane.u, plane.u) * dot(plane.v, plane.v) -
                            dot(plane.u, plane.v) * dot(plane.u, plane.v);
    if (gram_det < 1e-8) throw ValidationError("sectional_curvature: degenerate plane");
    const auto [u, v] = exact_plane_basis(plane);
    return induced_curvature(pt, u, v, v, u);
}

double scalar_curvature(const SubmanifoldPoint& pt) {
    const int nt = pt.dim_tangent();
    double tau = 0.0;
    for (int i = 0; i < nt; ++i)
        for (int j = i + 1; j < nt; ++j)
            tau += sectional_curvature(pt, coordinate_plane(i, j, nt));
    return tau;
}

namespace {

double scalar_identity_rhs(const SubmanifoldPoint& pt) {
    const double n = pt.n();
    const double pn2 = p_norm_squared(phi_split(pt));
    return 0.25 * pt.ambient.c * (3.0 * pn2 + n * (n - 1.0)) +
           (n + 1.0) * (n + 1.0) * mean_norm_squared(pt) - h_norm_squared(pt);
}

}  // namespace

double scalar_identity_residual(const SubmanifoldPoint& pt) {
    const double lhs = 2.0 * scalar_curvature(pt);
    const double rhs = scalar_identity_rhs(pt);
    return std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}

double rho_invariant(const SubmanifoldPoint& pt) {
    const double n = pt.n();
    const double pn2 = p_norm_squared(phi_split(pt));
    return 2.0 * scalar_curvature(pt) -
           (n + 1.0) * (n + 1.0) * (n - 1.0) / n * mean_norm_squared(pt) -
           0.25 * pt.ambient.c * (3.0 * pn2 + n * (n - 1.0));
}

double rho_identity_residual(const SubmanifoldPoint& pt) {
    const double n = pt.n();
    const double lhs = (n + 1.0) * (n + 1.0) * mean_norm_squared(pt);
    const double rhs = n * (h_norm_squared(pt) + rho_invariant(pt));
    return std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}

}  // namespace cosy
