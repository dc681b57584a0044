#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cosy/ambient.hpp"

using namespace cosy;

namespace {

Vec random_unit(int dim, Rng& rng) {
    Vec v(dim);
    for (double& x : v) x = rng.gaussian();
    return normalized(v);
}

}  // namespace

TEST_CASE("standard structure, m = 1: canonical block form") {
    const AmbientModel model = make_standard_structure(1, 0.0);
    const double expected[3][3] = {{0, -1, 0}, {1, 0, 0}, {0, 0, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(model.phi(i, j) == expected[i][j]);
    CHECK(model.xi == Vec{0, 0, 1});
}

TEST_CASE("standard structure satisfies phi^2 = -I + xi eta^T exactly") {
    for (int m = 1; m <= 4; ++m) {
        const AmbientModel model = make_standard_structure(m, 1.0);
        const StructureReport report = check_almost_contact(model);
        CHECK(report.phi_square_residual == 0.0);
        CHECK(report.max_residual() == 0.0);
        CHECK(report.pass);
    }
}

TEST_CASE("standard structure stores dimension and curvature") {
    const AmbientModel model = make_standard_structure(2, -4.0);
    CHECK(model.dim() == 5);
    CHECK(model.c == -4.0);
}

TEST_CASE("check_almost_contact flags a scaled phi") {
    AmbientModel model = make_standard_structure(2, 0.0);
    model.phi = 2.0 * model.phi;
    const StructureReport report = check_almost_contact(model);
    CHECK(report.phi_square_residual == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_FALSE(report.pass);
}

TEST_CASE("check_almost_contact flags a non-unit xi") {
    AmbientModel model = make_standard_structure(2, 0.0);
    model.xi = scaled(model.xi, 2.0);
    const StructureReport report = check_almost_contact(model);
    CHECK(report.eta_xi_residual == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_FALSE(report.pass);
}

TEST_CASE("curvature vanishes whenever xi fills a slot") {
    const AmbientModel model = make_standard_structure(2, 4.0);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec y = random_unit(5, rng), z = random_unit(5, rng), w = random_unit(5, rng);
        CHECK(ambient_curvature(model, model.xi, y, z, w) == 0.0);
    }
}

TEST_CASE("plane orthogonal to xi with phi-alignment zero has curvature c/4") {
    const AmbientModel model = make_standard_structure(2, 4.0);
    const Vec x = unit_vector(5, 0);  // x1 axis
    const Vec y = unit_vector(5, 1);  // x2 axis: g(y, phi x) = 0
    CHECK(ambient_curvature(model, CurvatureQuery{x, y, y, x}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("phi-sections have curvature c") {
    const AmbientModel model = make_standard_structure(2, 4.0);
    const Vec x = unit_vector(5, 0);
    const Vec y = model.phi * x;
    CHECK(ambient_curvature(model, x, y, y, x) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("sectional curvature specializations") {
    SUBCASE("plane containing xi is flat") {
        const AmbientModel model = make_standard_structure(3, 2.5);
        Rng rng(17);
        for (int trial = 0; trial < 10; ++trial) {
            Vec u = random_unit(7, rng);
            axpy(-dot(u, model.xi), model.xi, u);
            u = normalized(u);
            CHECK(std::fabs(ambient_sectional(model, model.xi, u)) < 1e-14);
        }
    }
    SUBCASE("phi-section with c = -4") {
        const AmbientModel model = make_standard_structure(2, -4.0);
        const Vec u = unit_vector(5, 1);
        const Vec v = model.phi * u;
        CHECK(ambient_sectional(model, u, v) == doctest::Approx(-4.0).epsilon(1e-14));
    }
    SUBCASE("xi-orthogonal plane with no phi-alignment, c = 4") {
        const AmbientModel model = make_standard_structure(2, 4.0);
        CHECK(ambient_sectional(model, unit_vector(5, 0), unit_vector(5, 1)) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("closed form (c/4)(1 + 3 g(u, phi v)^2 - eta(u)^2 - eta(v)^2)") {
        const AmbientModel model = make_standard_structure(3, 3.0);
        Rng rng(23);
        for (int trial = 0; trial < 50; ++trial) {
            Vec u = random_unit(7, rng);
            Vec v = random_unit(7, rng);
            axpy(-dot(u, v), u, v);
            if (norm(v) < 1e-3) continue;
            v = normalized(v);
            const double g = dot(u, model.phi * v);
            const double expected = 0.25 * 3.0 *
                                    (1.0 + 3.0 * g * g - model.eta(u) * model.eta(u) -
                                     model.eta(v) * model.eta(v));
            CHECK(ambient_sectional(model, u, v) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("degenerate plane rejected") {
        const AmbientModel model = make_standard_structure(2, 1.0);
        CHECK_THROWS_AS(ambient_sectional(model, unit_vector(5, 0), unit_vector(5, 0)),
                        ValidationError);
    }
}

TEST_CASE("tensor symmetries on random inputs") {
    const AmbientModel model = make_standard_structure(3, 2.5);
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = random_unit(7, rng), y = random_unit(7, rng);
        const Vec z = random_unit(7, rng), w = random_unit(7, rng);
        const double r = ambient_curvature(model, x, y, z, w);
        CHECK(std::fabs(r + ambient_curvature(model, y, x, z, w)) < 1e-12);
        CHECK(std::fabs(r + ambient_curvature(model, x, y, w, z)) < 1e-12);
        CHECK(std::fabs(r - ambient_curvature(model, z, w, x, y)) < 1e-12);
    }
}

TEST_CASE("first Bianchi identity on random inputs") {
    const AmbientModel model = make_standard_structure(2, -3.0);
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = random_unit(5, rng), y = random_unit(5, rng);
        const Vec z = random_unit(5, rng), w = random_unit(5, rng);
        const double cyc = ambient_curvature(model, x, y, z, w) +
                           ambient_curvature(model, y, z, x, w) +
                           ambient_curvature(model, z, x, y, w);
        CHECK(std::fabs(cyc) < 1e-12);
    }
}

TEST_CASE("multilinearity in each slot") {
    const AmbientModel model = make_standard_structure(2, 1.5);
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const Vec x1 = random_unit(5, rng), x2 = random_unit(5, rng);
        const Vec y = random_unit(5, rng), z = random_unit(5, rng), w = random_unit(5, rng);
        const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        Vec combo = scaled(x1, a);
        axpy(b, x2, combo);
        const double lhs = ambient_curvature(model, combo, y, z, w);
        const double rhs =
            a * ambient_curvature(model, x1, y, z, w) + b * ambient_curvature(model, x2, y, z, w);
        CHECK(std::fabs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("sectional curvature is invariant under rotation of the plane basis") {
    const AmbientModel model = make_standard_structure(3, -2.0);
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        Vec u = random_unit(7, rng);
        Vec v = random_unit(7, rng);
        axpy(-dot(u, v), u, v);
        if (norm(v) < 1e-3) continue;
        v = normalized(v);
        const double k = ambient_sectional(model, u, v);
        const double theta = rng.uniform(0.0, 6.28);
        Vec u2 = scaled(u, std::cos(theta));
        axpy(std::sin(theta), v, u2);
        Vec v2 = scaled(u, -std::sin(theta));
        axpy(std::cos(theta), v, v2);
        CHECK(std::fabs(ambient_sectional(model, u2, v2) - k) < 1e-10);
    }
}
