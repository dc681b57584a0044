#include "cosy/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cosy {

namespace {

Vec evaluate(const ImmersionSpec& spec, const Vec& u, double t) {
    Vec p = spec.map(u, t);
    if (static_cast<int>(p.size()) != 2 * spec.ambient_m + 1)
        throw ValidationError("immersion map returned a point of wrong ambient dimension");
    return p;
}

Vec shifted(const Vec& u, int k, double delta) {
    Vec v = u;
    v[k] += delta;
    return v;
}

// Spatial Jacobian columns by central differences, plus a product-form probe
// of the axis column.
std::vector<Vec> spatial_jacobian(const ImmersionSpec& spec, double step) {
    std::vector<Vec> cols(spec.param_count);
    for (int k = 0; k < spec.param_count; ++k) {
        const Vec fp = evaluate(spec, shifted(spec.base_point, k, step), spec.base_t);
        const Vec fm = evaluate(spec, shifted(spec.base_point, k, -step), spec.base_t);
        cols[k] = scaled(sub(fp, fm), 0.5 / step);
    }
    return cols;
}

void check_product_form(const ImmersionSpec& spec) {
    const int d = 2 * spec.ambient_m + 1;
    const double step = spec.fd_step;
    const Vec fp = evaluate(spec, spec.base_point, spec.base_t + step);
    const Vec fm = evaluate(spec, spec.base_point, spec.base_t - step);
    const Vec axis = scaled(sub(fp, fm), 0.5 / step);
    Vec xi = unit_vector(d, d - 1);
    if (max_abs(sub(axis, xi)) > 1e-9)
        throw ValidationError("immersion is not of product form (axis column is not xi)");
}

// Solve the small SPD system (J^T J) a = J^T tau.
Vec solve_in_column_span(const std::vector<Vec>& jac, const Vec& tau) {
    const int n = static_cast<int>(jac.size());
    Matrix g(n, n);
    Vec b(n);
    for (int i = 0; i < n; ++i) {
        b[i] = dot(jac[i], tau);
        for (int j = 0; j < n; ++j) g(i, j) = dot(jac[i], jac[j]);
    }
    const SymEigen eig = sym_eigen(g);
    if (eig.values.front() < 1e-12 * std::max(1.0, eig.values.back()))
        throw NumericalError("immersion Jacobian is rank-deficient at the base point");
    Vec a(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double coeff = 0.0;
        for (int i = 0; i < n; ++i) coeff += eig.vectors(i, k) * b[i];
        coeff /= eig.values[k];
        for (int i = 0; i < n; ++i) a[i] += coeff * eig.vectors(i, k);
    }
    return a;
}

ImmersionFrames frames_for_step(const ImmersionSpec& spec, double step) {
    const int d = 2 * spec.ambient_m + 1;
    const std::vector<Vec> jac = spatial_jacobian(spec, step);

    std::vector<Vec> seeds;
    seeds.push_back(unit_vector(d, d - 1));  // xi pinned first
    for (const Vec& col : jac) seeds.push_back(col);

    ImmersionFrames frames;
    try {
        frames.tangent = gram_schmidt(seeds);
    } catch (const NumericalError&) {
        throw NumericalError("immersion Jacobian is rank-deficient at the base point");
    }
    const std::vector<Vec> full = complete_basis(frames.tangent, d);
    frames.normal.assign(full.begin() + frames.tangent.size(), full.end());
    return frames;
}

ShapeOperatorSet sff_for_step(const ImmersionSpec& spec, const ImmersionFrames& frames,
                              double step) {
    const int n = spec.param_count;
    const int nt = n + 1;
    const int codim = static_cast<int>(frames.normal.size());
    const std::vector<Vec> jac = spatial_jacobian(spec, step);
    const Vec f0 = evaluate(spec, spec.base_point, spec.base_t);

    // Spatial Hessian columns of the immersion (the axis direction is affine,
    // so every second derivative involving it vanishes identically).
    std::vector<std::vector<Vec>> hess(n, std::vector<Vec>(n));
    for (int k = 0; k < n; ++k) {
        const Vec fp = evaluate(spec, shifted(spec.base_point, k, step), spec.base_t);
        const Vec fm = evaluate(spec, shifted(spec.base_point, k, -step), spec.base_t);
        Vec second = add(fp, fm);
        axpy(-2.0, f0, second);
        hess[k][k] = scaled(second, 1.0 / (step * step));
    }
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            const Vec fpp = evaluate(spec, shifted(shifted(spec.base_point, k, step), l, step),
                                     spec.base_t);
            const Vec fpm = evaluate(spec, shifted(shifted(spec.base_point, k, step), l, -step),
                                     spec.base_t);
            const Vec fmp = evaluate(spec, shifted(shifted(spec.base_point, k, -step), l, step),
                                     spec.base_t);
            const Vec fmm = evaluate(spec, shifted(shifted(spec.base_point, k, -step), l, -step),
                                     spec.base_t);
            Vec mixed = sub(sub(fpp, fpm), sub(fmp, fmm));
            hess[k][l] = scaled(mixed, 0.25 / (step * step));
            hess[l][k] = hess[k][l];
        }

    // Pull the orthonormalized spatial frame directions back to parameter
    // coefficients; frames.tangent[0] is xi and stays a zero row.
    std::vector<Vec> coeffs(n);
    for (int i = 0; i < n; ++i) coeffs[i] = solve_in_column_span(jac, frames.tangent[i + 1]);

    ShapeOperatorSet shape(codim, Matrix(nt, nt));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Vec second(2 * spec.ambient_m + 1, 0.0);
            for (int k = 0; k < n; ++k) {
                if (coeffs[i][k] == 0.0) continue;
                for (int l = 0; l < n; ++l)
                    axpy(coeffs[i][k] * coeffs[j][l], hess[k][l], second);
            }
            for (int r = 0; r < codim; ++r) {
                const double value = dot(frames.normal[r], second);
                shape[r](i + 1, j + 1) = value;
                shape[r](j + 1, i + 1) = value;
            }
        }
    return shape;
}

double max_entry(const ShapeOperatorSet& shape) {
    double m = 0.0;
    for (const Matrix& a : shape) m = std::max(m, max_abs(a));
    return m;
}

void check_params(const std::string& name, const std::map<std::string, double>& params,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, value] : params) {
        (void)value;
        if (!allowed.count(key))
            throw ValidationError("unknown parameter '" + key + "' for immersion family " + name);
    }
}

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

ImmersionFrames frame_at(const ImmersionSpec& spec) {
    if (spec.fd_step <= 0.0) throw ValidationError("fd_step must be positive");
    if (static_cast<int>(spec.base_point.size()) != spec.param_count)
        throw ValidationError("base_point length must equal param_count");
    check_product_form(spec);
    return frames_for_step(spec, spec.fd_step);
}

ShapeOperatorSet second_fundamental_form_at(const ImmersionSpec& spec) {
    const ImmersionFrames frames = frame_at(spec);
    const ShapeOperatorSet fine = sff_for_step(spec, frames, spec.fd_step);
    const ShapeOperatorSet coarse = sff_for_step(spec, frames, 2.0 * spec.fd_step);

    double disagreement = 0.0;
    for (std::size_t r = 0; r < fine.size(); ++r)
        disagreement = std::max(disagreement, max_abs(fine[r] - coarse[r]));
    if (disagreement > 0.10 * std::max(1.0, max_entry(fine)))
        throw NumericalError(
            "fd_step unreliable: Richardson cross-check at twice the step disagrees by more "
            "than 10%");
    return fine;
}

SubmanifoldPoint to_submanifold_point(const ImmersionSpec& spec) {
    const ImmersionFrames frames = frame_at(spec);
    ShapeOperatorSet shape = second_fundamental_form_at(spec);
    AmbientModel ambient = make_standard_structure(spec.ambient_m, 0.0);
    return make_submanifold_point(std::move(ambient), frames.tangent, frames.normal,
                                  std::move(shape), true);
}

ImmersionSpec builtin_catalog(const std::string& name,
                              const std::map<std::string, double>& params) {
    ImmersionSpec spec;
    spec.name = name;

    if (name == "linear_subspace") {
        check_params(name, params, {"n", "m"});
        const int n = static_cast<int>(get_param(params, "n", 2));
        const int m = static_cast<int>(get_param(params, "m", 2));
        if (n < 2 || n > 2 * m) throw ValidationError("linear_subspace requires 2 <= n <= 2m");
        spec.ambient_m = m;
        spec.param_count = n;
        spec.base_point.assign(n, 0.0);
        spec.map = [n, m](const Vec& u, double t) {
            Vec p(2 * m + 1, 0.0);
            for (int k = 0; k < n; ++k) p[k] = u[k];
            p[2 * m] = t;
            return p;
        };
        return spec;
    }

    if (name == "sphere_product") {
        check_params(name, params, {"r", "k", "m"});
        const double r = get_param(params, "r", 1.0);
        const int k = static_cast<int>(get_param(params, "k", 2));
        const int m = static_cast<int>(get_param(params, "m", 2));
        if (r <= 0.0) throw ValidationError("sphere_product requires r > 0");
        if (k < 2 || k + 1 > 2 * m)
            throw ValidationError("sphere_product requires 2 <= k and k+1 <= 2m");
        spec.ambient_m = m;
        spec.param_count = k;
        spec.base_point.resize(k);
        for (int i = 0; i < k; ++i) spec.base_point[i] = 0.4 + 0.1 * i;
        spec.map = [r, k, m](const Vec& u, double t) {
            Vec p(2 * m + 1, 0.0);
            double sines = 1.0;
            for (int i = 0; i < k; ++i) {
                p[i] = r * sines * std::cos(u[i]);
                sines *= std::sin(u[i]);
            }
            p[k] = r * sines;
            p[2 * m] = t;
            return p;
        };
        return spec;
    }

    if (name == "torus_product") {
        check_params(name, params, {"r1", "r2", "m"});
        const double r1 = get_param(params, "r1", 1.0);
        const double r2 = get_param(params, "r2", 1.0);
        const int m = static_cast<int>(get_param(params, "m", 2));
        if (r1 <= 0.0 || r2 <= 0.0) throw ValidationError("torus_product requires r1, r2 > 0");
        if (2 * m < 4) throw ValidationError("torus_product requires m >= 2");
        spec.ambient_m = m;
        spec.param_count = 2;
        spec.base_point = {0.3, 0.4};
        spec.map = [r1, r2, m](const Vec& u, double t) {
            Vec p(2 * m + 1, 0.0);
            p[0] = r1 * std::cos(u[0]);
            p[1] = r1 * std::sin(u[0]);
            p[2] = r2 * std::cos(u[1]);
            p[3] = r2 * std::sin(u[1]);
            p[2 * m] = t;
            return p;
        };
        return spec;
    }

    throw ValidationError("unknown immersion family '" + name +
                          "' (known: linear_subspace, sphere_product, torus_product)");
}

}  // namespace cosy
