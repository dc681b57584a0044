#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cosy/chen.hpp"
#include "cosy/delta.hpp"

namespace cosy {

/// Batch verification of the pinching inequality on seeded random instances
/// (or constructed equality instances), one plane per instance. Instances get
/// independent streams derived from the base seed, so parallel and serial
/// runs produce identical rows.
struct SweepConfig {
    long long count = 100;
    int n = 2;
    int m = 3;
    double c_min = -4.0;
    double c_max = 4.0;
    std::uint64_t seed = 42;
    bool geometric_mode = true;
    bool construct_equality = false;
    bool with_delta = true;
    DeltaOptions delta;  ///< light settings are appropriate for large sweeps
    double tol = 1e-9;
    bool parallel = true;
};

struct SweepRow {
    long long id = 0;
    int n = 0, m = 0;
    double c = 0.0;
    double tau = 0.0, inf_k = 0.0, delta = 0.0;
    double h_norm2 = 0.0, mean_norm2 = 0.0, p_norm2 = 0.0;
    double lhs = 0.0, rhs = 0.0, slack = 0.0;
    Verdict verdict = Verdict::holds;
    SubmanifoldKind classification = SubmanifoldKind::generic;
    double equality_residual_max = 0.0;
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double min_slack = 0.0;
    long long violations = 0;
};

SweepResult run_sweep(const SweepConfig& config);

/// CSV with a fixed column set and order (schema_version 1); numbers use 17
/// significant digits, so repeated seeded runs are byte-identical.
std::string sweep_csv_header();
std::string sweep_csv(const SweepResult& result);

/// On-quadric fuzz of the product bound: a_i sampled, a solved from the
/// constraint; a deterministic fraction of instances is pinned to the exact
/// equality locus so the equality counter is exercised.
struct LemmaFuzzConfig {
    long long count = 1000;
    int n_min = 2;
    int n_max = 8;
    std::uint64_t seed = 7;
    double equality_fraction = 0.1;
    double tol = 1e-9;
    bool parallel = true;
};

struct LemmaFuzzResult {
    long long violations = 0;
    long long equality_count = 0;
    long long characterization_mismatches = 0;
    double min_slack = 0.0;
};

LemmaFuzzResult run_lemma_fuzz(const LemmaFuzzConfig& config);

}  // namespace cosy
