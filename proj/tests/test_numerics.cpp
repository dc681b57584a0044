#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cosy/numerics.hpp"

using namespace cosy;

namespace {

// Closed-form eigenvalues of a symmetric 2x2 matrix.
std::pair<double, double> eigen2x2(double a, double b, double c) {
    const double mid = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    return {mid - rad, mid + rad};
}

// Trigonometric closed form for symmetric 3x3 eigenvalues (ascending).
Vec eigen3x3(const Matrix& a) {
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (p1 == 0.0) {
        Vec v = {a(0, 0), a(1, 1), a(2, 2)};
        std::sort(v.begin(), v.end());
        return v;
    }
    const double q = trace(a) / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Matrix b = a;
    for (int i = 0; i < 3; ++i) b(i, i) -= q;
    for (double& x : b.entries()) x /= p;
    const double detb = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                        b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                        b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    const double r = std::clamp(0.5 * detb, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double two_pi_3 = 2.0943951023931953;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * two_pi_3);
    const double e2 = 3.0 * q - e1 - e3;
    Vec v = {e1, e2, e3};
    std::sort(v.begin(), v.end());
    return v;
}

double gram_identity_defect(const std::vector<Vec>& frame) {
    double defect = 0.0;
    for (std::size_t i = 0; i < frame.size(); ++i)
        for (std::size_t j = 0; j < frame.size(); ++j) {
            const double expected = (i == j) ? 1.0 : 0.0;
            defect = std::max(defect, std::fabs(dot(frame[i], frame[j]) - expected));
        }
    return defect;
}

}  // namespace

TEST_CASE("gram_schmidt completes an already-orthogonal direction") {
    const auto out = gram_schmidt({{1, 0, 0}, {1, 1, 0}});
    REQUIRE(out.size() == 2);
    CHECK(max_abs(sub(out[0], {1, 0, 0})) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(max_abs(sub(out[1], {0, 1, 0})) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("gram_schmidt normalizes a single vector") {
    const auto out = gram_schmidt({{2, 0, 0}});
    REQUIRE(out.size() == 1);
    CHECK(out[0] == Vec{1, 0, 0});
}

TEST_CASE("gram_schmidt flags rank deficiency at the tolerance") {
    CHECK_THROWS_AS(gram_schmidt({{1, 0, 0}, {1, 1e-12, 0}}, 1e-8), NumericalError);
}

TEST_CASE("gram_schmidt output is orthonormal on fuzz inputs") {
    Rng rng(314);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 2 + static_cast<int>(rng.next_u64() % 7);
        const int count = 1 + static_cast<int>(rng.next_u64() % dim);
        std::vector<Vec> input(count, Vec(dim));
        for (auto& v : input)
            for (double& x : v) x = rng.gaussian();
        std::vector<Vec> out;
        try {
            out = gram_schmidt(input);
        } catch (const NumericalError&) {
            continue;  // genuinely near-dependent draw
        }
        CHECK(gram_identity_defect(out) < 1e-10);
        // first input's direction preserved
        CHECK(dot(out[0], normalized(input[0])) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sym_eigen on the identity") {
    const SymEigen eig = sym_eigen(Matrix::identity(3));
    for (double v : eig.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sym_eigen sorts a diagonal matrix") {
    Matrix a(3, 3);
    a(0, 0) = 3;
    a(1, 1) = 1;
    a(2, 2) = 2;
    const SymEigen eig = sym_eigen(a);
    CHECK(eig.values[0] == doctest::Approx(1.0));
    CHECK(eig.values[1] == doctest::Approx(2.0));
    CHECK(eig.values[2] == doctest::Approx(3.0));
}

TEST_CASE("sym_eigen reconstructs random symmetric matrices") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix a(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j) {
                const double x = rng.uniform(-3.0, 3.0);
                a(i, j) = x;
                a(j, i) = x;
            }
        const SymEigen eig = sym_eigen(a);
        // V Lambda V^T against A, and the residual bound per eigenpair
        const double scale = 1.0 + max_abs(a);
        for (int k = 0; k < 6; ++k) {
            Vec v(6), av(6, 0.0);
            for (int i = 0; i < 6; ++i) v[i] = eig.vectors(i, k);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) av[i] += a(i, j) * v[j];
            axpy(-eig.values[k], v, av);
            CHECK(norm(av) <= 1e-9 * scale);
        }
        Matrix recon(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                double s = 0.0;
                for (int k = 0; k < 6; ++k)
                    s += eig.vectors(i, k) * eig.values[k] * eig.vectors(j, k);
                recon(i, j) = s;
            }
        CHECK(max_abs(recon - a) <= 1e-9 * scale);
    }
}

TEST_CASE("sym_eigen matches characteristic-polynomial roots, 2x2 and 3x3") {
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        Matrix a(2, 2);
        a(0, 0) = rng.uniform(-5, 5);
        a(1, 1) = rng.uniform(-5, 5);
        a(0, 1) = a(1, 0) = rng.uniform(-5, 5);
        const auto [lo, hi] = eigen2x2(a(0, 0), a(0, 1), a(1, 1));
        const SymEigen eig = sym_eigen(a);
        CHECK(std::fabs(eig.values[0] - lo) <= 1e-9 * (1.0 + std::fabs(lo)));
        CHECK(std::fabs(eig.values[1] - hi) <= 1e-9 * (1.0 + std::fabs(hi)));
    }
    for (int trial = 0; trial < 200; ++trial) {
        Matrix a(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                const double x = rng.uniform(-5, 5);
                a(i, j) = x;
                a(j, i) = x;
            }
        const Vec expected = eigen3x3(a);
        const SymEigen eig = sym_eigen(a);
        for (int k = 0; k < 3; ++k)
            CHECK(std::fabs(eig.values[k] - expected[k]) <= 1e-9 * (1.0 + std::fabs(expected[k])));
    }
}

TEST_CASE("sym_eigen rejects asymmetric input") {
    Matrix a(2, 2);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(sym_eigen(a), ValidationError);
}

TEST_CASE("random frame honors the pinned first vector") {
    const Vec xi = {0, 0, 1};
    const auto frame = seeded_random_orthonormal_frame(3, xi, 7);
    REQUIRE(frame.size() == 3);
    CHECK(frame[0] == xi);
    CHECK(gram_identity_defect(frame) < 1e-10);
}

TEST_CASE("random frame is bitwise deterministic in the seed") {
    const auto a = seeded_random_orthonormal_frame(6, std::nullopt, 2024);
    const auto b = seeded_random_orthonormal_frame(6, std::nullopt, 2024);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    const auto c = seeded_random_orthonormal_frame(6, std::nullopt, 2025);
    CHECK(a[0] != c[0]);
}

TEST_CASE("random frame gram matrix is the identity within 1e-10") {
    const auto frame = seeded_random_orthonormal_frame(5, std::nullopt, 1);
    CHECK(gram_identity_defect(frame) < 1e-10);
}

TEST_CASE("random frame rejects a non-unit pinned vector") {
    CHECK_THROWS_AS(seeded_random_orthonormal_frame(3, Vec{0, 0, 2}, 7), ValidationError);
}

TEST_CASE("stream seeds decorrelate instances deterministically") {
    CHECK(Rng::stream_seed(42, 0) == Rng::stream_seed(42, 0));
    CHECK(Rng::stream_seed(42, 0) != Rng::stream_seed(42, 1));
    CHECK(Rng::stream_seed(42, 1) != Rng::stream_seed(43, 1));
}
