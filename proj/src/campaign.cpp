#include "cosy/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cosy/instance_io.hpp"
#include "cosy/parallel.hpp"

namespace cosy {

namespace {

SweepRow sweep_instance(const SweepConfig& config, long long id) {
    const std::uint64_t instance_seed = Rng::stream_seed(config.seed, static_cast<std::uint64_t>(id));
    Rng rng(instance_seed);
    const double c = (config.c_min == config.c_max) ? config.c_min
                                                    : rng.uniform(config.c_min, config.c_max);

    SubmanifoldPoint pt;
    PlaneSection plane;
    if (config.construct_equality) {
        EqualityParams params;
        params.n = config.n;
        params.m = config.m;
        params.c = c;
        params.geometric_mode = config.geometric_mode;
        params.frame_seed = rng.next_u64();
        params.lambda = rng.uniform(-2.0, 2.0);
        params.mu = config.geometric_mode ? -params.lambda : rng.uniform(-2.0, 2.0);
        const int extra = 2 * config.m - config.n - 1;
        for (int b = 0; b < extra; ++b)
            params.blocks.emplace_back(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        pt = construct_equality_instance(params);
        plane = coordinate_plane(0, 1, config.n + 1);
    } else {
        pt = make_random_point(config.n, config.m, c, config.geometric_mode, rng);
        plane = random_plane(config.n + 1, rng);
    }

    const InequalityReport report = main_inequality(pt, plane, config.tol);
    const ClassificationResult cls = classify_submanifold(pt);

    SweepRow row;
    row.id = id;
    row.n = config.n;
    row.m = config.m;
    row.c = c;
    row.tau = report.tau;
    row.h_norm2 = report.h_norm2;
    row.mean_norm2 = report.mean_norm2;
    row.p_norm2 = report.p_norm2;
    row.lhs = report.lhs;
    row.rhs = report.rhs;
    row.slack = report.slack;
    row.verdict = report.verdict;
    row.classification = cls.kind;
    row.equality_residual_max = report.equality_residuals.max();
    row.seed = instance_seed;

    if (config.with_delta) {
        DeltaOptions opts = config.delta;
        opts.parallel = false;  // the sweep already parallelizes across instances
        const DeltaResult delta = delta_invariant(pt, opts);
        row.inf_k = delta.inf_k;
        row.delta = delta.delta;
    }
    return row;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
    if (config.count < 1) throw ValidationError("sweep count must be >= 1");
    SweepResult result;
    result.rows.resize(static_cast<std::size_t>(config.count));
    parallel_for(static_cast<std::size_t>(config.count), config.parallel,
                 [&](std::size_t i) { result.rows[i] = sweep_instance(config, static_cast<long long>(i)); });

    result.min_slack = result.rows.front().slack;
    for (const SweepRow& row : result.rows) {
        result.min_slack = std::min(result.min_slack, row.slack);
        if (row.verdict == Verdict::violated) ++result.violations;
    }
    return result;
}

std::string sweep_csv_header() {
    return "id,n,m,c,tau,inf_k,delta,h_norm2,mean_norm2,p_norm2,lhs,rhs,slack,verdict,"
           "classification,equality_residual_max,seed";
}

std::string sweep_csv(const SweepResult& result) {
    std::ostringstream out;
    out << sweep_csv_header() << '\n';
    for (const SweepRow& r : result.rows) {
        out << r.id << ',' << r.n << ',' << r.m << ',' << format_double(r.c) << ','
            << format_double(r.tau) << ',' << format_double(r.inf_k) << ','
            << format_double(r.delta) << ',' << format_double(r.h_norm2) << ','
            << format_double(r.mean_norm2) << ',' << format_double(r.p_norm2) << ','
            << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
            << format_double(r.slack) << ',' << to_string(r.verdict) << ','
            << to_string(r.classification) << ',' << format_double(r.equality_residual_max) << ','
            << r.seed << '\n';
    }
    return out.str();
}

LemmaFuzzResult run_lemma_fuzz(const LemmaFuzzConfig& config) {
    if (config.count < 1) throw ValidationError("lemma fuzz count must be >= 1");
    if (config.n_min < 1 || config.n_max < config.n_min)
        throw ValidationError("lemma fuzz needs 1 <= n_min <= n_max");

    const long long stride =
        config.equality_fraction > 0.0
            ? std::max<long long>(1, std::llround(1.0 / config.equality_fraction))
            : 0;

    std::vector<LemmaCheck> checks(static_cast<std::size_t>(config.count));
    parallel_for(static_cast<std::size_t>(config.count), config.parallel, [&](std::size_t i) {
        Rng rng(Rng::stream_seed(config.seed, static_cast<std::uint64_t>(i)));
        const int span = config.n_max - config.n_min + 1;
        const int n = config.n_min + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(span));
        const bool force_equality = stride > 0 && (static_cast<long long>(i) % stride == 0);
        const LemmaInstance inst = sample_lemma_instance(n, rng, force_equality);
        checks[i] = chen_lemma_check(inst, config.tol);
    });

    LemmaFuzzResult result;
    result.min_slack = checks.front().slack;
    for (const LemmaCheck& check : checks) {
        result.min_slack = std::min(result.min_slack, check.slack);
        if (!check.holds) ++result.violations;
        if (check.equality) ++result.equality_count;
        if (!check.consistent) ++result.characterization_mismatches;
    }
    return result;
}

}  // namespace cosy
