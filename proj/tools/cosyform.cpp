// cosyform: verification workbench for the curvature pinching inequality of
// submanifolds tangent to the structure vector field in cosymplectic space
// forms. Subcommands: gen, check, delta, sweep, equality, immerse, lemma-fuzz.
//
// Exit codes: 0 = success (inequality holds / no violations), 1 = a property
// violation was found, 2 = invalid input.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cosy/campaign.hpp"
#include "cosy/chen.hpp"
#include "cosy/delta.hpp"
#include "cosy/immersion.hpp"
#include "cosy/instance_io.hpp"

namespace {

using namespace cosy;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write output file: " + path);
    out << text;
}

// Plane specs: "e1,e3" (1-based frame indices) or "u0,u1,...;v0,v1,..."
PlaneSection parse_plane(const std::string& spec, int dim) {
    if (spec.empty()) return coordinate_plane(0, 1, dim);
    if (spec[0] == 'e') {
        int i = 0, j = 0;
        if (std::sscanf(spec.c_str(), "e%d,e%d", &i, &j) != 2)
            throw ValidationError("plane spec: expected the form e<i>,e<j>");
        if (i < 1 || j < 1 || i > dim || j > dim || i == j)
            throw ValidationError("plane spec: frame indices out of range");
        return coordinate_plane(i - 1, j - 1, dim);
    }
    const auto semi = spec.find(';');
    if (semi == std::string::npos)
        throw ValidationError("plane spec: expected e<i>,e<j> or u-coords;v-coords");
    auto parse_coords = [&](const std::string& part) {
        Vec v;
        std::stringstream ss(part);
        std::string tok;
        while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
        if (static_cast<int>(v.size()) != dim)
            throw ValidationError("plane spec: coordinate count must be n+1");
        return v;
    };
    return make_plane(parse_coords(spec.substr(0, semi)), parse_coords(spec.substr(semi + 1)));
}

void print_report(const InequalityReport& rep) {
    std::cout << "verdict: " << to_string(rep.verdict) << "\n";
    std::cout << "lhs: " << format_double(rep.lhs) << "\n";
    std::cout << "rhs: " << format_double(rep.rhs) << "\n";
    std::cout << "slack: " << format_double(rep.slack) << "\n";
    std::cout << "tau: " << format_double(rep.tau) << "\n";
    std::cout << "k_pi: " << format_double(rep.k_pi) << "\n";
    std::cout << "h_norm2: " << format_double(rep.h_norm2) << "\n";
    std::cout << "mean_norm2: " << format_double(rep.mean_norm2) << "\n";
    std::cout << "p_norm2: " << format_double(rep.p_norm2) << "\n";
    std::cout << "alpha: " << format_double(rep.alpha) << "\n";
    std::cout << "beta: " << format_double(rep.beta) << "\n";
    std::cout << "rho: " << format_double(rep.rho) << "\n";
    std::cout << "equality_residual_block: " << format_double(rep.equality_residuals.block_border)
              << "\n";
    std::cout << "equality_residual_diagonal: "
              << format_double(rep.equality_residuals.diagonal_tail) << "\n";
    std::cout << "equality_residual_offdiag: "
              << format_double(rep.equality_residuals.plane_offdiag) << "\n";
}

void print_audit(const ProofAudit& audit) {
    std::cout << "audit_quadric_residual: " << format_double(audit.quadric_residual) << "\n";
    std::cout << "audit_gauss_plane_residual: " << format_double(audit.gauss_plane_residual)
              << "\n";
    std::cout << "audit_lemma_slack: " << format_double(audit.lemma_slack) << "\n";
    std::cout << "audit_dropped_terms_slack: " << format_double(audit.dropped_terms_slack) << "\n";
    std::cout << "audit_final_slack: " << format_double(audit.final_slack) << "\n";
    std::cout << "audit_mean_degenerate: " << (audit.mean_degenerate ? "true" : "false") << "\n";
}

void print_delta(const DeltaResult& delta, const DeltaBound& bound, double tol) {
    std::cout << "delta: " << format_double(delta.delta) << "\n";
    std::cout << "inf_k: " << format_double(delta.inf_k) << "\n";
    std::cout << "eigen_lower_bound: " << format_double(delta.eigen_lower_bound) << "\n";
    std::cout << "restarts_used: " << delta.restarts_used << "\n";
    std::cout << "grid_resolution: " << delta.grid_resolution << "\n";
    std::cout << "converged: " << (delta.converged ? "true" : "false") << "\n";
    std::cout << "bound: " << format_double(bound.bound) << "\n";
    std::cout << "bound_case: " << to_string(bound.sign) << "\n";
    const double slack = bound.bound - delta.delta;
    std::cout << "bound_slack: " << format_double(slack) << "\n";
    std::cout << "bound_verdict: "
              << (slack < -tol ? "violated" : (std::fabs(slack) <= tol ? "equality" : "holds"))
              << "\n";
}

ImmersionSpec immersion_from_flags(const std::string& family, double r, double r1, double r2,
                                   int k, int n, int m, double fd_step,
                                   const std::string& base) {
    std::map<std::string, double> params;
    if (family == "sphere_product") params = {{"r", r}, {"k", static_cast<double>(k)},
                                              {"m", static_cast<double>(m)}};
    else if (family == "torus_product") params = {{"r1", r1}, {"r2", r2},
                                                  {"m", static_cast<double>(m)}};
    else if (family == "linear_subspace") params = {{"n", static_cast<double>(n)},
                                                    {"m", static_cast<double>(m)}};
    else params = {};  // let the catalog report the unknown name
    ImmersionSpec spec = builtin_catalog(family, params);
    spec.fd_step = fd_step;
    if (!base.empty()) {
        Vec b;
        std::stringstream ss(base);
        std::string tok;
        while (std::getline(ss, tok, ',')) b.push_back(std::stod(tok));
        if (static_cast<int>(b.size()) != spec.param_count)
            throw ValidationError("base point must have one value per spatial parameter");
        spec.base_point = b;
    }
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cosyform: numerical verification of curvature pinching for submanifolds "
                 "tangent to the structure vector field in cosymplectic space forms"};
    app.set_config("--config");
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a seeded random instance document");
    int gen_n = 2, gen_m = 3;
    double gen_c = 0.0;
    bool gen_random_c = false;
    double gen_c_min = -4.0, gen_c_max = 4.0;
    std::uint64_t gen_seed = 42;
    bool gen_algebraic = false;
    std::string gen_out;
    gen->add_option("--n", gen_n, "submanifold dimension is n+1");
    gen->add_option("--m", gen_m, "ambient dimension is 2m+1");
    gen->add_option("--c", gen_c, "phi-sectional curvature (fixed value)");
    gen->add_flag("--random-c", gen_random_c, "draw c uniformly from [--c-min, --c-max]");
    gen->add_option("--c-min", gen_c_min, "lower end of the curvature range");
    gen->add_option("--c-max", gen_c_max, "upper end of the curvature range");
    gen->add_option("--seed", gen_seed, "instance seed");
    gen->add_flag("--algebraic", gen_algebraic,
                  "drop the geometric h(.,xi)=0 constraint (arbitrary symmetric h)");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // ---- check ----
    auto* check = app.add_subcommand("check", "evaluate the inequality on an instance document");
    std::string check_in, check_plane = "e1,e2";
    double check_tol = 1e-9;
    bool check_audit = false;
    check->add_option("--in", check_in, "instance document path")->required();
    check->add_option("--plane", check_plane, "plane spec: e<i>,e<j> or coords;coords");
    check->add_option("--tol", check_tol, "equality/violation tolerance");
    check->add_flag("--audit", check_audit, "also print the per-step derivation audit");

    // ---- delta ----
    auto* delta_cmd = app.add_subcommand("delta", "compute delta = tau - inf K with metadata");
    std::string delta_in, delta_family, delta_base;
    double delta_r = 1.0, delta_r1 = 1.0, delta_r2 = 1.0, delta_fd = 1e-4;
    int delta_k = 2, delta_fam_n = 2, delta_fam_m = 2;
    DeltaOptions delta_opts;
    double delta_tol = 1e-9;
    bool delta_serial = false;
    delta_cmd->add_option("--in", delta_in, "instance document path");
    delta_cmd->add_option("--immersion", delta_family,
                          "built-in immersion family instead of a document");
    delta_cmd->add_option("--r", delta_r, "sphere radius");
    delta_cmd->add_option("--r1", delta_r1, "first torus radius");
    delta_cmd->add_option("--r2", delta_r2, "second torus radius");
    delta_cmd->add_option("--k", delta_k, "sphere factor dimension");
    delta_cmd->add_option("--fam-n", delta_fam_n, "linear subspace spatial dimension");
    delta_cmd->add_option("--fam-m", delta_fam_m, "ambient m for immersion families");
    delta_cmd->add_option("--fd-step", delta_fd, "finite-difference step");
    delta_cmd->add_option("--base", delta_base, "comma-separated base point parameters");
    delta_cmd->add_option("--restarts", delta_opts.restarts, "optimizer restarts");
    delta_cmd->add_option("--max-iters", delta_opts.max_iters, "descent iteration cap");
    delta_cmd->add_option("--grid-resolution", delta_opts.grid_resolution,
                          "brute-force seeding grid resolution");
    delta_cmd->add_option("--opt-seed", delta_opts.seed, "optimizer restart seed");
    delta_cmd->add_option("--tol", delta_tol, "bound comparison tolerance");
    delta_cmd->add_flag("--serial", delta_serial, "disable parallel restarts");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "batch-verify the inequality on seeded instances");
    SweepConfig sweep_config;
    bool sweep_algebraic = false, sweep_serial = false, sweep_no_delta = false;
    bool sweep_fixed_c = false;
    double sweep_c = 0.0;
    std::string sweep_out;
    sweep->add_option("--count", sweep_config.count, "number of instances");
    sweep->add_option("--n", sweep_config.n, "submanifold dimension is n+1");
    sweep->add_option("--m", sweep_config.m, "ambient dimension is 2m+1");
    sweep->add_option("--c-min", sweep_config.c_min, "lower end of the curvature range");
    sweep->add_option("--c-max", sweep_config.c_max, "upper end of the curvature range");
    sweep->add_option("--c", sweep_c, "fixed curvature value")->each([&](const std::string&) {
        sweep_fixed_c = true;
    });
    sweep->add_option("--seed", sweep_config.seed, "base seed; instances use derived streams");
    sweep->add_flag("--algebraic", sweep_algebraic, "drop the geometric constraint");
    sweep->add_flag("--construct-equality", sweep_config.construct_equality,
                    "rows are constructed equality instances");
    sweep->add_flag("--no-delta", sweep_no_delta, "skip the delta computation per row");
    sweep->add_option("--restarts", sweep_config.delta.restarts, "optimizer restarts per row");
    sweep->add_option("--max-iters", sweep_config.delta.max_iters, "descent iteration cap");
    sweep->add_option("--grid-resolution", sweep_config.delta.grid_resolution,
                      "seeding grid resolution per row");
    sweep->add_option("--tol", sweep_config.tol, "violation tolerance");
    sweep->add_flag("--serial", sweep_serial, "run instances serially");
    sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");
    // light delta defaults for batch work
    sweep_config.delta.restarts = 8;
    sweep_config.delta.grid_resolution = 12;
    sweep_config.delta.max_iters = 200;

    // ---- equality ----
    auto* equality = app.add_subcommand("equality",
                                        "construct an equality-case instance and verify it");
    EqualityParams eq_params;
    std::string eq_blocks, eq_out;
    double eq_tol = 1e-9;
    equality->add_option("--n", eq_params.n, "submanifold dimension is n+1");
    equality->add_option("--m", eq_params.m, "ambient dimension is 2m+1");
    equality->add_option("--c", eq_params.c, "phi-sectional curvature");
    equality->add_option("--lambda", eq_params.lambda, "first plane-slot diagonal entry");
    equality->add_option("--mu", eq_params.mu, "second plane-slot diagonal entry");
    equality->add_option("--blocks", eq_blocks,
                         "semicolon-separated a,b pairs for the extra normal directions");
    equality->add_option("--xi-index", eq_params.xi_index, "tangent slot of xi (-1 = last)");
    equality->add_flag("--geometric", eq_params.geometric_mode,
                       "enforce the geometric placement constraints");
    equality->add_option("--frame-seed", eq_params.frame_seed, "random frame seed");
    equality->add_option("--tol", eq_tol, "equality tolerance");
    equality->add_option("--out", eq_out, "also write the instance document here");

    // ---- immerse ----
    auto* immerse = app.add_subcommand("immerse",
                                       "ingest a built-in immersion and verify it end to end");
    std::string imm_family, imm_base;
    double imm_r = 1.0, imm_r1 = 1.0, imm_r2 = 1.0, imm_fd = 1e-4, imm_tol = 1e-4;
    int imm_k = 2, imm_n = 2, imm_m = 2;
    DeltaOptions imm_opts;
    immerse->add_option("family", imm_family,
                        "linear_subspace | sphere_product | torus_product")->required();
    immerse->add_option("--r", imm_r, "sphere radius");
    immerse->add_option("--r1", imm_r1, "first torus radius");
    immerse->add_option("--r2", imm_r2, "second torus radius");
    immerse->add_option("--k", imm_k, "sphere factor dimension");
    immerse->add_option("--n", imm_n, "linear subspace spatial dimension");
    immerse->add_option("--m", imm_m, "ambient m");
    immerse->add_option("--fd-step", imm_fd, "finite-difference step");
    immerse->add_option("--base", imm_base, "comma-separated base point parameters");
    immerse->add_option("--tol", imm_tol, "verdict tolerance (FD-limited)");
    immerse->add_option("--restarts", imm_opts.restarts, "optimizer restarts");
    immerse->add_option("--grid-resolution", imm_opts.grid_resolution, "grid resolution");

    // ---- lemma-fuzz ----
    auto* lemma = app.add_subcommand("lemma-fuzz", "fuzz the on-quadric product bound");
    LemmaFuzzConfig lemma_config;
    bool lemma_serial = false;
    lemma->add_option("--count", lemma_config.count, "number of instances");
    lemma->add_option("--seed", lemma_config.seed, "base seed");
    lemma->add_option("--n-min", lemma_config.n_min, "smallest n");
    lemma->add_option("--n-max", lemma_config.n_max, "largest n");
    lemma->add_option("--equality-fraction", lemma_config.equality_fraction,
                      "fraction of instances pinned to the equality locus");
    lemma->add_option("--tol", lemma_config.tol, "violation tolerance");
    lemma->add_flag("--serial", lemma_serial, "run serially");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            Rng rng(gen_seed);
            const double c = gen_random_c ? rng.uniform(gen_c_min, gen_c_max) : gen_c;
            const SubmanifoldPoint pt =
                make_random_point(gen_n, gen_m, c, !gen_algebraic, rng);
            write_text(gen_out, serialize_document(to_document(pt, gen_seed)));
            return kExitOk;
        }

        if (*check) {
            const SubmanifoldPoint pt = from_document(load_document_file(check_in));
            const PlaneSection plane = parse_plane(check_plane, pt.dim_tangent());
            const InequalityReport rep = main_inequality(pt, plane, check_tol);
            print_report(rep);
            if (check_audit) print_audit(proof_step_audit(pt, plane));
            return rep.verdict == Verdict::violated ? kExitViolation : kExitOk;
        }

        if (*delta_cmd) {
            if (delta_in.empty() == delta_family.empty())
                throw ValidationError("delta: give exactly one of --in or --immersion");
            delta_opts.parallel = !delta_serial;
            const SubmanifoldPoint pt =
                delta_in.empty()
                    ? to_submanifold_point(immersion_from_flags(delta_family, delta_r, delta_r1,
                                                                delta_r2, delta_k, delta_fam_n,
                                                                delta_fam_m, delta_fd, delta_base))
                    : from_document(load_document_file(delta_in));
            const DeltaResult result = delta_invariant(pt, delta_opts);
            const DeltaBound bound = delta_upper_bound(pt);
            std::cout << "tau: " << format_double(scalar_curvature(pt)) << "\n";
            print_delta(result, bound, delta_tol);
            return bound.bound - result.delta < -delta_tol ? kExitViolation : kExitOk;
        }

        if (*sweep) {
            sweep_config.geometric_mode = !sweep_algebraic;
            sweep_config.parallel = !sweep_serial;
            sweep_config.with_delta = !sweep_no_delta;
            if (sweep_fixed_c) {
                sweep_config.c_min = sweep_c;
                sweep_config.c_max = sweep_c;
            }
            const SweepResult result = run_sweep(sweep_config);
            write_text(sweep_out, sweep_csv(result));
            std::cerr << "# instances=" << result.rows.size()
                      << " min_slack=" << format_double(result.min_slack)
                      << " violations=" << result.violations << "\n";
            return result.violations > 0 ? kExitViolation : kExitOk;
        }

        if (*equality) {
            if (!eq_blocks.empty()) {
                std::stringstream ss(eq_blocks);
                std::string pair;
                while (std::getline(ss, pair, ';')) {
                    double a = 0.0, b = 0.0;
                    if (std::sscanf(pair.c_str(), "%lf,%lf", &a, &b) != 2)
                        throw ValidationError("blocks: expected semicolon-separated a,b pairs");
                    eq_params.blocks.emplace_back(a, b);
                }
            }
            const SubmanifoldPoint pt = construct_equality_instance(eq_params);
            const PlaneSection plane = coordinate_plane(0, 1, pt.dim_tangent());
            const InequalityReport rep = main_inequality(pt, plane, eq_tol);
            const ShapeCheck shape = equality_shape_check(pt, plane, eq_tol);
            print_report(rep);
            std::cout << "shape_canonical: " << (shape.canonical ? "true" : "false") << "\n";
            std::cout << "shape_lambda: " << format_double(shape.lambda) << "\n";
            std::cout << "shape_mu: " << format_double(shape.mu) << "\n";
            if (!eq_out.empty()) save_document_file(to_document(pt), eq_out);
            return rep.verdict == Verdict::violated ? kExitViolation : kExitOk;
        }

        if (*immerse) {
            const ImmersionSpec spec = immersion_from_flags(imm_family, imm_r, imm_r1, imm_r2,
                                                            imm_k, imm_n, imm_m, imm_fd, imm_base);
            const SubmanifoldPoint pt = to_submanifold_point(spec);
            std::cout << "family: " << spec.name << "\n";
            std::cout << "n: " << pt.n() << "\n";
            std::cout << "m: " << pt.ambient.m << "\n";
            const DeltaResult result = delta_invariant(pt, imm_opts);
            const DeltaBound bound = delta_upper_bound(pt);
            std::cout << "tau: " << format_double(scalar_curvature(pt)) << "\n";
            std::cout << "h_norm2: " << format_double(h_norm_squared(pt)) << "\n";
            std::cout << "identity_residual: " << format_double(scalar_identity_residual(pt))
                      << "\n";
            print_delta(result, bound, imm_tol);
            std::cout << "classification: " << to_string(classify_submanifold(pt).kind) << "\n";
            const InequalityReport rep = main_inequality(pt, result.minimizing_plane, imm_tol);
            std::cout << "check_at_min_plane_verdict: " << to_string(rep.verdict) << "\n";
            std::cout << "check_at_min_plane_slack: " << format_double(rep.slack) << "\n";
            return rep.verdict == Verdict::violated ? kExitViolation : kExitOk;
        }

        if (*lemma) {
            lemma_config.parallel = !lemma_serial;
            const LemmaFuzzResult result = run_lemma_fuzz(lemma_config);
            std::cout << "count: " << lemma_config.count << "\n";
            std::cout << "violations: " << result.violations << "\n";
            std::cout << "equality_count: " << result.equality_count << "\n";
            std::cout << "characterization_mismatches: " << result.characterization_mismatches
                      << "\n";
            std::cout << "min_slack: " << format_double(result.min_slack) << "\n";
            return (result.violations > 0 || result.characterization_mismatches > 0)
                       ? kExitViolation
                       : kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}
