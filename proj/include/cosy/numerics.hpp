#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cosy {

using Vec = std::vector<double>;

/// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid input data: bad documents, violated preconditions, inconsistent frames.
struct ValidationError : Error {
    using Error::Error;
};

/// Numerical breakdown: rank deficiency, finite-difference cancellation.
struct NumericalError : Error {
    using Error::Error;
};

/// Default tolerance below which a vector is treated as linearly dependent.
inline constexpr double kRankTol = 1e-8;
/// Default tolerance for orthonormality checks.
inline constexpr double kOrthoTol = 1e-10;

/// Small dense real matrix, row-major storage.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0);

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& entries() const { return entries_; }
    std::vector<double>& entries() { return entries_; }

    bool all_finite() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> entries_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vec operator*(const Matrix& a, const Vec& x);
Matrix transpose(const Matrix& a);

double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);
double trace(const Matrix& a);
/// max |a_ij - a_ji|
double symmetry_defect(const Matrix& a);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
double max_abs(const Vec& v);
Vec scaled(const Vec& v, double s);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
/// y += s*x
void axpy(double s, const Vec& x, Vec& y);
Vec unit_vector(int dim, int index);
/// v / |v|; throws NumericalError when |v| < tol.
Vec normalized(const Vec& v, double tol = kRankTol);

/// Gram-Schmidt orthonormalization. The first input's direction is preserved;
/// the output spans the same subspace. A vector whose residual after
/// orthogonalization drops below tol (relative to its input norm) signals
/// linearly dependent input and raises NumericalError.
std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors, double tol = kRankTol);

/// Extend `fixed` (assumed orthonormal) to an orthonormal basis of R^dim by
/// orthogonalizing the coordinate axes against it and keeping the survivors.
std::vector<Vec> complete_basis(const std::vector<Vec>& fixed, int dim, double tol = kRankTol);

struct SymEigen {
    Vec values;      ///< ascending
    Matrix vectors;  ///< column i pairs with values[i]
};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Deterministic and accurate for the small dense problems used here.
/// Rejects input whose symmetry defect exceeds 1e-10.
SymEigen sym_eigen(const Matrix& a);

/// Deterministic 64-bit generator: xoshiro256++ seeded through SplitMix64.
/// Every randomized routine in the library takes either a seed or an Rng so
/// parallel sweeps can give each instance its own stream and reproduce the
/// serial output exactly.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    /// uniform in [0, 1)
    double uniform();
    double uniform(double lo, double hi);
    /// standard normal via Box-Muller (pairs cached)
    double gaussian();

    /// Seed for the index-th independent stream derived from a base seed.
    static std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index);

private:
    std::uint64_t state_[4];
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

/// Deterministic random orthonormal basis of R^dim. When fixed_first is
/// given it must be unit within 1e-10 and becomes the first output vector.
std::vector<Vec> seeded_random_orthonormal_frame(int dim,
                                                 const std::optional<Vec>& fixed_first,
                                                 std::uint64_t seed);

/// Same, drawing from an existing stream.
std::vector<Vec> random_orthonormal_frame(int dim, const std::optional<Vec>& fixed_first, Rng& rng);

}  // namespace cosy
