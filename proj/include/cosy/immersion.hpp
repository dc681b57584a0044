#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cosy/submanifold.hpp"

namespace cosy {

/// Explicit immersion into the flat (c = 0) cosymplectic R^(2m+1). The map
/// must have product form (F(u), t): the last ambient coordinate is the axis
/// parameter itself, which keeps xi tangent by construction. The map must be
/// pure (same input, same output) so finite differencing is well defined.
struct ImmersionSpec {
    int ambient_m = 2;
    int param_count = 2;  ///< spatial parameters; the axis parameter is extra
    std::function<Vec(const Vec& u, double t)> map;
    Vec base_point;       ///< spatial parameters at the evaluation point
    double base_t = 0.0;
    double fd_step = 1e-4;
    std::string name;
};

struct ImmersionFrames {
    std::vector<Vec> tangent;  ///< xi first, then the orthonormalized spatial directions
    std::vector<Vec> normal;   ///< completion of the ambient basis
};

/// Central-difference Jacobian columns, orthonormalized with the xi direction
/// pinned first. Raises NumericalError on rank deficiency at the base point.
ImmersionFrames frame_at(const ImmersionSpec& spec);

/// h^r_ij = <normal_r, d^2 f / ds_i ds_j> with s the arclength-normalized
/// frame parameters (second-order central differences, mandatory Richardson
/// cross-check at twice the step). The xi row vanishes by the product form.
ShapeOperatorSet second_fundamental_form_at(const ImmersionSpec& spec);

/// Bundle frames and coefficients into a geometric-mode point with c = 0.
SubmanifoldPoint to_submanifold_point(const ImmersionSpec& spec);

/// Built-in families:
///   linear_subspace  params: n (tangent spatial dims), m          -- totally geodesic R^(n+1)
///   sphere_product   params: r (radius), k (sphere dim), m        -- S^k(r) x R
///   torus_product    params: r1, r2, m                            -- S^1(r1) x S^1(r2) x R
ImmersionSpec builtin_catalog(const std::string& name,
                              const std::map<std::string, double>& params);

}  // namespace cosy
