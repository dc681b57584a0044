#include "cosy/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cosy {

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows <= 0 || cols <= 0) throw ValidationError("Matrix dimensions must be positive");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), [](double x) { return std::isfinite(x); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ValidationError("matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("matrix sum shape mismatch");
    Matrix c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("matrix difference shape mismatch");
    Matrix c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (double& x : c.entries()) x *= s;
    return c;
}

Vec operator*(const Matrix& a, const Vec& x) {
    if (static_cast<int>(x.size()) != a.cols()) throw ValidationError("matrix-vector shape mismatch");
    Vec y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double x : a.entries()) m = std::max(m, std::fabs(x));
    return m;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double x : a.entries()) s += x * x;
    return std::sqrt(s);
}

double trace(const Matrix& a) {
    double s = 0.0;
    const int n = std::min(a.rows(), a.cols());
    for (int i = 0; i < n; ++i) s += a(i, i);
    return s;
}

double symmetry_defect(const Matrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("symmetry defect needs a square matrix");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j) - a(j, i)));
    return m;
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ValidationError("dot product length mismatch");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

double max_abs(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

Vec scaled(const Vec& v, double s) {
    Vec w = v;
    for (double& x : w) x *= s;
    return w;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ValidationError("vector sum length mismatch");
    Vec c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ValidationError("vector difference length mismatch");
    Vec c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
    return c;
}

void axpy(double s, const Vec& x, Vec& y) {
    if (x.size() != y.size()) throw ValidationError("axpy length mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

Vec unit_vector(int dim, int index) {
    if (index < 0 || index >= dim) throw ValidationError("unit_vector index out of range");
    Vec v(dim, 0.0);
    v[index] = 1.0;
    return v;
}

Vec normalized(const Vec& v, double tol) {
    const double n = norm(v);
    if (n < tol) throw NumericalError("cannot normalize a near-zero vector");
    return scaled(v, 1.0 / n);
}

namespace {

// One orthogonalization pass of v against an orthonormal set.
void project_out(const std::vector<Vec>& basis, Vec& v) {
    for (const Vec& b : basis) axpy(-dot(b, v), b, v);
}

}  // namespace

std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors, double tol) {
    if (vectors.empty()) return {};
    const std::size_t dim = vectors.front().size();
    std::vector<Vec> out;
    out.reserve(vectors.size());
    for (const Vec& input : vectors) {
        if (input.size() != dim) throw ValidationError("gram_schmidt: inconsistent vector lengths");
        const double input_norm = norm(input);
        Vec v = input;
        project_out(out, v);
        project_out(out, v);  // second pass restores orthogonality lost to cancellation
        const double r = norm(v);
        if (input_norm == 0.0 || r < tol * input_norm)
            throw NumericalError("gram_schmidt: rank-deficient input (residual below tolerance)");
        out.push_back(scaled(v, 1.0 / r));
    }
    return out;
}

std::vector<Vec> complete_basis(const std::vector<Vec>& fixed, int dim, double tol) {
    std::vector<Vec> out = fixed;
    for (int axis = 0; axis < dim && static_cast<int>(out.size()) < dim; ++axis) {
        Vec v = unit_vector(dim, axis);
        project_out(out, v);
        project_out(out, v);
        const double r = norm(v);
        if (r < tol) continue;
        out.push_back(scaled(v, 1.0 / r));
    }
    if (static_cast<int>(out.size()) != dim)
        throw NumericalError("complete_basis: could not complete to a full basis");
    return out;
}

SymEigen sym_eigen(const Matrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("sym_eigen: matrix must be square");
    if (symmetry_defect(a) > 1e-10) throw ValidationError("sym_eigen: matrix is not symmetric within 1e-10");

    const int n = a.rows();
    Matrix w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = 0.5 * (a(i, j) + a(j, i));
    Matrix v = Matrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += w(i, j) * w(i, j);
        return std::sqrt(2.0 * s);
    };

    const double scale = std::max(1.0, max_abs(w));
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > 1e-14 * scale; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = w(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double wkp = w(k, p), wkq = w(k, q);
                    w(k, p) = c * wkp - s * wkq;
                    w(k, q) = s * wkp + c * wkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double wpk = w(p, k), wqk = w(q, k);
                    w(p, k) = c * wpk - s * wqk;
                    w(q, k) = s * wpk + c * wqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return w(i, i) < w(j, j); });

    SymEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int col = 0; col < n; ++col) {
        out.values[col] = w(order[col], order[col]);
        for (int row = 0; row < n; ++row) out.vectors(row, col) = v(row, order[col]);
    }
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    cached_gaussian_ = r * std::sin(two_pi * u2);
    has_cached_gaussian_ = true;
    return r * std::cos(two_pi * u2);
}

std::uint64_t Rng::stream_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t s = base + (index + 1) * 0x9E3779B97F4A7C15ull;
    return splitmix64(s);
}

std::vector<Vec> random_orthonormal_frame(int dim, const std::optional<Vec>& fixed_first, Rng& rng) {
    if (dim <= 0) throw ValidationError("frame dimension must be positive");
    std::vector<Vec> out;
    if (fixed_first) {
        if (static_cast<int>(fixed_first->size()) != dim)
            throw ValidationError("fixed_first has wrong dimension");
        if (std::fabs(norm(*fixed_first) - 1.0) > kOrthoTol)
            throw ValidationError("fixed_first must be a unit vector within 1e-10");
        out.push_back(*fixed_first);
    }
    while (static_cast<int>(out.size()) < dim) {
        Vec v(dim);
        for (double& x : v) x = rng.gaussian();
        const double raw = norm(v);
        project_out(out, v);
        project_out(out, v);
        const double r = norm(v);
        if (raw == 0.0 || r < kRankTol * raw) continue;  // redraw, deterministically
        out.push_back(scaled(v, 1.0 / r));
    }
    return out;
}

std::vector<Vec> seeded_random_orthonormal_frame(int dim,
                                                 const std::optional<Vec>& fixed_first,
                                                 std::uint64_t seed) {
    Rng rng(seed);
    return random_orthonormal_frame(dim, fixed_first, rng);
}

}  // namespace cosy
