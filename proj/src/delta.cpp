#include "cosy/delta.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "cosy/parallel.hpp"

namespace cosy {

namespace {

struct BivectorBasis {
    int nt = 0;
    std::vector<std::pair<int, int>> pairs;  // (i, j), i < j, lexicographic

    explicit BivectorBasis(int nt_) : nt(nt_) {
        for (int i = 0; i < nt; ++i)
            for (int j = i + 1; j < nt; ++j) pairs.emplace_back(i, j);
    }
};

// Quadratic form of the curvature operator on decomposable unit bivectors.
class SectionalForm {
public:
    explicit SectionalForm(const SubmanifoldPoint& pt)
        : basis_(pt.dim_tangent()), op_(curvature_operator_matrix(pt)) {}

    int dim() const { return basis_.nt; }

    // u, v orthonormal in tangent-frame coordinates
    double operator()(const Vec& u, const Vec& v) const {
        const int nb = static_cast<int>(basis_.pairs.size());
        Vec w(nb);
        for (int a = 0; a < nb; ++a) {
            const auto [i, j] = basis_.pairs[a];
            w[a] = u[i] * v[j] - u[j] * v[i];
        }
        double k = 0.0;
        for (int a = 0; a < nb; ++a) {
            double row = 0.0;
            for (int b = 0; b < nb; ++b) row += op_(a, b) * w[b];
            k += w[a] * row;
        }
        return k;
    }

private:
    BivectorBasis basis_;
    Matrix op_;
};

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double frac(double x) { return x - std::floor(x); }

// Low-discrepancy point mapped to a unit vector: a Weyl (Kronecker) sequence
// pushed through Box-Muller and normalized, so the samples are quasi-uniform
// on the sphere and fully deterministic.
Vec weyl_sphere_point(int dim, long long index, int prime_offset) {
    const int pair_count = (dim + 1) / 2;
    Vec g(dim);
    const double two_pi = 6.283185307179586476925286766559;
    for (int p = 0; p < pair_count; ++p) {
        const double a1 = std::sqrt(static_cast<double>(kPrimes[(prime_offset + 2 * p) % 16]));
        const double a2 = std::sqrt(static_cast<double>(kPrimes[(prime_offset + 2 * p + 1) % 16]));
        double u1 = frac(0.5 + (index + 1) * frac(a1));
        const double u2 = frac(0.5 + (index + 1) * frac(a2));
        if (u1 < 1e-12) u1 = 1e-12;
        const double r = std::sqrt(-2.0 * std::log(u1));
        g[2 * p] = r * std::cos(two_pi * u2);
        if (2 * p + 1 < dim) g[2 * p + 1] = r * std::sin(two_pi * u2);
    }
    const double n = norm(g);
    if (n < 1e-9) return unit_vector(dim, index % dim);
    return scaled(g, 1.0 / n);
}

struct Candidate {
    Vec u, v;
};

// Deterministic plane sample: coordinate planes first, then the
// quasi-uniform grid. For nt == 3 the grid is a Fibonacci covering of the
// projective plane of normals, one plane per normal.
std::vector<Candidate> plane_grid(int nt, int resolution) {
    std::vector<Candidate> planes;
    for (int i = 0; i < nt; ++i)
        for (int j = i + 1; j < nt; ++j)
            planes.push_back({unit_vector(nt, i), unit_vector(nt, j)});

    if (nt == 3) {
        const long long count = static_cast<long long>(resolution) * resolution;
        const double golden_angle = 2.399963229728653;  // 2*pi*(2 - golden ratio)
        for (long long k = 0; k < count; ++k) {
            const double z = 1.0 - (2.0 * k + 1.0) / static_cast<double>(count);
            const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double th = golden_angle * static_cast<double>(k);
            const Vec w = {rad * std::cos(th), rad * std::sin(th), z};
            const auto full = complete_basis({w}, 3);
            planes.push_back({full[1], full[2]});
        }
        return planes;
    }

    const long long u_count = static_cast<long long>(resolution) * resolution;
    for (long long a = 0; a < u_count; ++a) {
        const Vec u = weyl_sphere_point(nt, a, 0);
        for (int b = 0; b < resolution; ++b) {
            Vec v = weyl_sphere_point(nt, a * resolution + b, 5);
            axpy(-dot(u, v), u, v);
            const double r = norm(v);
            if (r < 1e-6) continue;
            planes.push_back({u, scaled(v, 1.0 / r)});
        }
    }
    return planes;
}

// Best-of-pattern zoom around a plane: rotate each frame leg toward each
// orthogonal direction by +-radius, keep the best improvement, shrink.
// Written as systematic neighborhood enumeration so it can serve as an
// independent polish of the grid minimum.
void zoom_refine(const SectionalForm& form, Vec& u, Vec& v, double& value, double radius0) {
    const int nt = form.dim();
    double radius = radius0;
    while (radius > 1e-9) {
        std::vector<Vec> comp = complete_basis({u, v}, nt);
        bool improved = false;
        Vec best_u = u, best_v = v;
        double best = value;
        for (int k = 2; k < nt; ++k) {
            const Vec& w = comp[k];
            for (int leg = 0; leg < 2; ++leg) {
                const Vec& moving = (leg == 0) ? u : v;
                const Vec& fixed = (leg == 0) ? v : u;
                for (double sign : {1.0, -1.0}) {
                    const double c = std::cos(sign * radius), s = std::sin(sign * radius);
                    Vec cand(nt);
                    for (int t = 0; t < nt; ++t) cand[t] = c * moving[t] + s * w[t];
                    const double k_val = (leg == 0) ? form(cand, fixed) : form(fixed, cand);
                    if (k_val < best) {
                        best = k_val;
                        best_u = (leg == 0) ? cand : fixed;
                        best_v = (leg == 0) ? fixed : cand;
                        improved = true;
                    }
                }
            }
        }
        if (improved) {
            u = best_u;
            v = best_v;
            value = best;
        } else {
            radius *= 0.5;
        }
    }
}

// Adaptive-step first-improvement descent by Givens rotations mixing a frame
// leg with a direction orthogonal to the plane.
PlaneValue descend(const SectionalForm& form, Vec u, Vec v, int max_iters) {
    const int nt = form.dim();
    double value = form(u, v);
    std::vector<Vec> comp = complete_basis({u, v}, nt);
    double step = 0.5;
    bool converged = false;

    for (int iter = 0; iter < max_iters; ++iter) {
        double pass_improvement = 0.0;
        for (int k = 2; k < nt; ++k) {
            for (int leg = 0; leg < 2; ++leg) {
                Vec& moving = (leg == 0) ? u : v;
                const Vec& fixed = (leg == 0) ? v : u;
                for (double sign : {1.0, -1.0}) {
                    const double c = std::cos(sign * step), s = std::sin(sign * step);
                    Vec cand(nt), new_w(nt);
                    for (int t = 0; t < nt; ++t) {
                        cand[t] = c * moving[t] + s * comp[k][t];
                        new_w[t] = -s * moving[t] + c * comp[k][t];
                    }
                    const double k_val = (leg == 0) ? form(cand, fixed) : form(fixed, cand);
                    if (k_val < value) {
                        pass_improvement += value - k_val;
                        value = k_val;
                        moving = cand;
                        comp[k] = new_w;
                        break;  // keep the winning sign, move on
                    }
                }
            }
        }
        if (pass_improvement < 1e-12) {
            step *= 0.5;
            if (step < 1e-10) {
                converged = true;
                break;
            }
        }
    }
    return PlaneValue{value, PlaneSection{std::move(u), std::move(v)}, converged};
}

}  // namespace

Matrix curvature_operator_matrix(const SubmanifoldPoint& pt) {
    const int nt = pt.dim_tangent();
    const BivectorBasis basis(nt);
    const int nb = static_cast<int>(basis.pairs.size());

    const TangentPhiSplit split = phi_split(pt);
    const Matrix& p = split.p;
    const Vec& e = pt.xi_tangent;
    const double c4 = 0.25 * pt.ambient.c;
    auto kron = [](int a, int b) { return a == b ? 1.0 : 0.0; };

    // Full induced tensor R(e_i, e_j, e_k, e_l) from the ambient form plus
    // the Gauss products of the shape operators.
    auto component = [&](int i, int j, int k, int l) {
        double r = c4 * (kron(i, l) * kron(j, k) - kron(i, k) * kron(j, l)
                         + p(i, l) * p(j, k) - p(i, k) * p(j, l) - 2.0 * p(i, j) * p(k, l)
                         - kron(i, l) * e[j] * e[k] + kron(i, k) * e[j] * e[l]
                         - kron(j, k) * e[i] * e[l] + kron(j, l) * e[i] * e[k]);
        for (const Matrix& a : pt.shape) r += a(i, l) * a(j, k) - a(i, k) * a(j, l);
        return r;
    };

    Matrix op(nb, nb);
    for (int a = 0; a < nb; ++a) {
        const auto [i, j] = basis.pairs[a];
        for (int b = a; b < nb; ++b) {
            const auto [k, l] = basis.pairs[b];
            const double entry = component(i, j, l, k);
            op(a, b) = entry;
            op(b, a) = entry;
        }
    }
    return op;
}

double curvature_operator_bound(const SubmanifoldPoint& pt) {
    return sym_eigen(curvature_operator_matrix(pt)).values.front();
}

PlaneValue inf_sectional_bruteforce(const SubmanifoldPoint& pt, int resolution, bool refine,
                                    bool parallel) {
    if (resolution < 4) throw ValidationError("inf_sectional_bruteforce: resolution must be >= 4");
    const SectionalForm form(pt);
    const std::vector<Candidate> planes = plane_grid(pt.dim_tangent(), resolution);

    std::vector<double> values(planes.size());
    parallel_for(planes.size(), parallel,
                 [&](std::size_t i) { values[i] = form(planes[i].u, planes[i].v); });

    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[best] - 1e-12) best = i;

    PlaneValue out;
    out.value = values[best];
    out.plane = PlaneSection{planes[best].u, planes[best].v};
    out.converged = true;
    if (refine) {
        Vec u = out.plane.u, v = out.plane.v;
        zoom_refine(form, u, v, out.value, 6.283185307179586 / resolution);
        out.plane = PlaneSection{std::move(u), std::move(v)};
    }
    return out;
}

PlaneValue inf_sectional_optimize(const SubmanifoldPoint& pt, const DeltaOptions& opts) {
    if (opts.restarts < 1) throw ValidationError("inf_sectional_optimize: restarts must be >= 1");
    const SectionalForm form(pt);
    const int nt = pt.dim_tangent();

    std::vector<Candidate> seeds;
    const PlaneValue grid_best = inf_sectional_bruteforce(pt, opts.grid_resolution, false, opts.parallel);
    seeds.push_back({grid_best.plane.u, grid_best.plane.v});
    for (int i = 0; i < nt; ++i)
        for (int j = i + 1; j < nt; ++j)
            seeds.push_back({unit_vector(nt, i), unit_vector(nt, j)});
    for (int k = 0; k < opts.restarts; ++k) {
        Rng rng(Rng::stream_seed(opts.seed, static_cast<std::uint64_t>(k)));
        PlaneSection plane = random_plane(nt, rng);
        seeds.push_back({std::move(plane.u), std::move(plane.v)});
    }

    std::vector<PlaneValue> results(seeds.size());
    parallel_for(seeds.size(), opts.parallel, [&](std::size_t i) {
        results[i] = descend(form, seeds[i].u, seeds[i].v, opts.max_iters);
    });

    // Deterministic merge: best value wins, earlier seed index on a tie.
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].value < results[best].value - 1e-12) best = i;

    PlaneValue out = results[best];
    out.value = std::min(out.value, grid_best.value);
    return out;
}

DeltaResult delta_invariant(const SubmanifoldPoint& pt, const DeltaOptions& opts) {
    const PlaneValue inf_k = inf_sectional_optimize(pt, opts);
    DeltaResult out;
    out.inf_k = inf_k.value;
    out.delta = scalar_curvature(pt) - inf_k.value;
    out.minimizing_plane = inf_k.plane;
    out.eigen_lower_bound = curvature_operator_bound(pt);
    out.restarts_used = opts.restarts;
    out.grid_resolution = opts.grid_resolution;
    out.converged = inf_k.converged;
    return out;
}

}  // namespace cosy
