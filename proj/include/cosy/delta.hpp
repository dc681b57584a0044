#pragma once

#include <cstdint>

#include "cosy/submanifold.hpp"

namespace cosy {

struct DeltaOptions {
    int restarts = 64;
    int max_iters = 500;
    int grid_resolution = 48;
    std::uint64_t seed = 0x1d5eedULL;
    bool parallel = false;  ///< restarts are independent; merge order is deterministic either way
};

struct PlaneValue {
    double value = 0.0;
    PlaneSection plane;
    bool converged = false;
};

/// delta = tau - inf K plus the optimizer metadata backing the value.
struct DeltaResult {
    double delta = 0.0;
    double inf_k = 0.0;
    PlaneSection minimizing_plane;
    double eigen_lower_bound = 0.0;
    int restarts_used = 0;
    int grid_resolution = 0;
    bool converged = false;
};

/// Symmetric matrix of the curvature operator on Lambda^2 T_pM in the
/// orthonormal bivector basis {e_i ^ e_j : i < j}, entry
/// M[(ij),(kl)] = R(e_i, e_j, e_l, e_k). Sectional curvature is its quadratic
/// form on unit decomposable bivectors.
Matrix curvature_operator_matrix(const SubmanifoldPoint& pt);

/// lambda_min of the curvature operator: a lower bound for inf K. For
/// three-dimensional tangent spaces every unit bivector is decomposable, so
/// the bound is exact there.
double curvature_operator_bound(const SubmanifoldPoint& pt);

/// Minimum of K over a deterministic quasi-uniform sample of 2-planes plus
/// all coordinate planes: an upper bound on the true infimum. For n+1 = 3 the
/// sample is a Fibonacci grid of resolution^2 plane normals; otherwise
/// resolution^2 sphere points for the first leg crossed with resolution
/// choices of the second. With refine = true a zoom search around the grid
/// minimizer polishes the value.
PlaneValue inf_sectional_bruteforce(const SubmanifoldPoint& pt, int resolution,
                                    bool refine = false, bool parallel = false);

/// Local descent by Givens rotations mixing the 2-frame with orthogonal
/// directions, run from the coordinate planes, the grid minimizer, and random
/// restarts; returns the best plane found.
PlaneValue inf_sectional_optimize(const SubmanifoldPoint& pt, const DeltaOptions& opts = {});

DeltaResult delta_invariant(const SubmanifoldPoint& pt, const DeltaOptions& opts = {});

}  // namespace cosy
