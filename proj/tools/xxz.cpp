#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"

#include "xxz/config.hpp"
#include "xxz/solver.hpp"

namespace xxz {
namespace {

using nlohmann::ordered_json;

ordered_json to_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json params_to_json(const ModelParams& p) {
    ordered_json j;
    j["n_sites"] = p.n_sites;
    j["eta"] = to_json(p.eta);
    j["alpha_minus"] = to_json(p.alpha_minus);
    j["beta_minus"] = to_json(p.beta_minus);
    j["theta_minus"] = to_json(p.theta_minus);
    j["alpha_plus"] = to_json(p.alpha_plus);
    j["beta_plus"] = to_json(p.beta_plus);
    j["theta_plus"] = to_json(p.theta_plus);
    ordered_json th = ordered_json::array();
    for (const auto& t : p.inhomogeneities) th.push_back(to_json(t));
    j["inhomogeneities"] = th;
    return j;
}

struct RunContext {
    RunConfig cfg;
    ModelParams params;
    uint64_t seed_used = 0;
    int rejections = 0;
    CheckReport checks;
    std::optional<SolveResult> solved;
    std::optional<BetheCertification> cert;
    std::vector<Complex> residual_probes;
};

void ensure_solved(RunContext& ctx) {
    if (!ctx.solved) ctx.solved = solve_all(ctx.params);
}

void run_suite_hamiltonian(RunContext& ctx) {
    require(ctx.params.n_sites >= 2, ErrorKind::size,
            "hamiltonian suite requires at least two sites");
    ModelParams hom = ctx.params;
    for (auto& t : hom.inhomogeneities) t = 0.0;
    const ComplexMatrix direct = hamiltonian_direct(hom);
    const ComplexMatrix from_t = hamiltonian_from_transfer(hom);
    ctx.checks.add("hamiltonian", "direct_vs_transfer",
                   "Pauli-built Hamiltonian equals the logarithmic transfer-matrix derivative",
                   max_abs_diff(direct, from_t), direct.max_abs(),
                   tolerance_or(ctx.cfg, "hamiltonian", 1e-8));
}

void run_suite_operator_identities(RunContext& ctx) {
    ctx.checks.merge(verify_operator_identities(
        ctx.params, ctx.seed_used, tolerance_or(ctx.cfg, "operator_identities", 1e-9),
        tolerance_or(ctx.cfg, "asymptotic", 1e-6)));
}

void run_suite_intertwining(RunContext& ctx) {
    ctx.checks.merge(verify_intertwining(ctx.params, ctx.seed_used, 100,
                                         tolerance_or(ctx.cfg, "intertwining", 1e-12),
                                         tolerance_or(ctx.cfg, "orthonormality", 1e-13)));
}

void run_suite_gauge_structure(RunContext& ctx) {
    ctx.checks.merge(verify_gauge_structure(ctx.params, ctx.seed_used,
                                            tolerance_or(ctx.cfg, "gauge_vanish", 1e-12),
                                            tolerance_or(ctx.cfg, "gauge_closed", 1e-10)));
}

void run_suite_commutation(RunContext& ctx) {
    ctx.checks.merge(verify_commutation_relations(ctx.params, ctx.seed_used,
                                                  tolerance_or(ctx.cfg, "commutation", 1e-10)));
}

void run_suite_decomposition(RunContext& ctx) {
    ctx.checks.merge(verify_transfer_decomposition(ctx.params, ctx.seed_used,
                                                   tolerance_or(ctx.cfg, "decomposition", 1e-11)));
}

void run_suite_left_actions(RunContext& ctx) {
    ctx.checks.merge(
        verify_left_actions(ctx.params, ctx.seed_used, tolerance_or(ctx.cfg, "actions", 1e-9)));
}

void run_suite_right_actions(RunContext& ctx) {
    ctx.checks.merge(verify_right_actions(ctx.params, ctx.seed_used,
                                          tolerance_or(ctx.cfg, "actions", 1e-9),
                                          tolerance_or(ctx.cfg, "expansion", 1e-10)));
}

void run_suite_solve(RunContext& ctx) {
    ensure_solved(ctx);
    const auto& sr = *ctx.solved;
    ctx.checks.add("solve", "all_entries_fitted",
                   "every diagonalized eigenvalue produced certified Bethe roots",
                   static_cast<double>(sr.failures.size()), 1.0, 0.5);
    double worst = 0.0;
    for (const auto& e : sr.entries)
        if (e.tq)
            for (double r : e.tq->bae_residuals) worst = std::max(worst, r);
    ctx.checks.add("solve", "max_bae_residual",
                   "Bethe-equation residuals of the fitted roots", worst, 1.0,
                   tolerance_or(ctx.cfg, "bae", 1e-8));
}

void run_suite_bethe(RunContext& ctx) {
    ensure_solved(ctx);
    ctx.cert = certify_bethe_states(ctx.params, *ctx.solved);
    double worst_resid = 0.0, worst_coll = 0.0;
    for (double r : ctx.cert->eigen_residuals) worst_resid = std::max(worst_resid, r);
    for (double c : ctx.cert->collinearity_defects) worst_coll = std::max(worst_coll, c);
    ctx.checks.add("bethe", "max_eigen_residual",
                   "constructed Bethe states satisfy the eigenvalue equation", worst_resid, 1.0,
                   tolerance_or(ctx.cfg, "eigen_residual", 1e-8));
    ctx.checks.add("bethe", "max_collinearity_defect",
                   "constructed Bethe states are collinear with the matched eigenvectors",
                   worst_coll, 1.0, tolerance_or(ctx.cfg, "collinearity", 1e-8));
    ctx.checks.add("bethe", "bijection",
                   "the root sets map one-to-one onto the diagonalized spectrum",
                   ctx.cert->bijection ? 0.0 : 1.0, 1.0, 0.5);
}

void run_suite_scalar_products(RunContext& ctx) {
    ensure_solved(ctx);
    const double tol = tolerance_or(ctx.cfg, "scalar_products", 1e-8);
    const double tol_rec = tolerance_or(ctx.cfg, "recursion", 1e-9);
    for (std::size_t i = 0; i < ctx.solved->entries.size(); ++i) {
        const auto& entry = ctx.solved->entries[i];
        CheckReport rep = scalar_product_check(entry.eigenvector,
                                               lambda_ed_eval(entry, ctx.params), ctx.params,
                                               tol, tol_rec);
        for (auto& c : rep.checks) c.name = "entry" + std::to_string(i) + "." + c.name;
        ctx.checks.merge(rep);
    }
    const std::vector<Complex>* roots = nullptr;
    if (!ctx.solved->entries.empty() && ctx.solved->entries.front().tq)
        roots = &ctx.solved->entries.front().tq->roots;
    ctx.checks.merge(reference_conditions_check(ctx.params, roots, tol));
}

struct SuiteEntry {
    const char* name;
    void (*runner)(RunContext&);
    int max_sites; // largest N the suite is certified for
    int min_sites;
};

const std::vector<SuiteEntry>& suite_table() {
    static const std::vector<SuiteEntry> table{
        {"hamiltonian", run_suite_hamiltonian, 5, 2},
        {"operator-identities", run_suite_operator_identities, 4, 1},
        {"intertwining", run_suite_intertwining, 12, 1},
        {"gauge-structure", run_suite_gauge_structure, 12, 1},
        {"commutation", run_suite_commutation, 4, 1},
        {"decomposition", run_suite_decomposition, 4, 1},
        {"left-actions", run_suite_left_actions, 3, 1},
        {"right-actions", run_suite_right_actions, 3, 1},
        {"solve", run_suite_solve, 4, 1},
        {"bethe", run_suite_bethe, 4, 1},
        {"scalar-products", run_suite_scalar_products, 4, 1},
    };
    return table;
}

const std::set<std::string> kVerifySuites{"operator-identities", "intertwining",
                                          "gauge-structure",     "commutation",
                                          "decomposition",       "left-actions",
                                          "right-actions"};

void run_suites(RunContext& ctx, const std::vector<std::string>& requested, bool explicit_request) {
    for (const auto& suite : suite_table()) {
        if (std::find(requested.begin(), requested.end(), suite.name) == requested.end()) continue;
        if (!explicit_request &&
            (ctx.params.n_sites > suite.max_sites || ctx.params.n_sites < suite.min_sites))
            continue; // default plans skip suites outside their certified range
        require(ctx.params.n_sites <= suite.max_sites, ErrorKind::size,
                std::string(suite.name) + ": N exceeds certified limit (max " +
                    std::to_string(suite.max_sites) + ")");
        require(ctx.params.n_sites >= suite.min_sites, ErrorKind::size,
                std::string(suite.name) + ": N below the suite minimum");
        suite.runner(ctx);
    }
}

void write_reports(const RunContext& ctx, const std::string& command) {
    namespace fs = std::filesystem;
    fs::create_directories(ctx.cfg.output_path);

    ordered_json report;
    report["tool"] = "xxz";
    report["version"] = kToolVersion;
    report["command"] = command;
    report["seed"] = ctx.seed_used;
    report["rejections"] = ctx.rejections;
    report["parameters"] = params_to_json(ctx.params);

    ordered_json checks = ordered_json::array();
    for (const auto& c : ctx.checks.checks) {
        ordered_json jc;
        jc["suite"] = c.suite;
        jc["name"] = c.name;
        jc["anchor"] = c.anchor;
        jc["residual"] = c.residual;
        jc["scale"] = c.scale;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        checks.push_back(jc);
    }
    report["checks"] = checks;

    if (ctx.solved) {
        ordered_json eigen = ordered_json::array();
        for (std::size_t i = 0; i < ctx.solved->entries.size(); ++i) {
            const auto& e = ctx.solved->entries[i];
            ordered_json je;
            je["index"] = i;
            ordered_json probes = ordered_json::array();
            for (const auto& v : e.lambda_probe_values) probes.push_back(to_json(v));
            je["lambda_probes"] = probes;
            if (e.tq) {
                ordered_json roots = ordered_json::array();
                for (const auto& r : e.tq->roots) roots.push_back(to_json(r));
                je["roots"] = roots;
                je["bae_residuals"] = e.tq->bae_residuals;
            }
            if (ctx.cert) {
                je["eigen_residual"] = ctx.cert->eigen_residuals[i];
                je["collinearity_defect"] = ctx.cert->collinearity_defects[i];
                je["matched_entry"] = ctx.cert->matched_entry[i];
            }
            eigen.push_back(je);
        }
        report["eigenvalues"] = eigen;

        ordered_json failures = ordered_json::array();
        for (const auto& f : ctx.solved->failures) {
            ordered_json jf;
            jf["entry"] = f.entry_index;
            jf["message"] = f.message;
            failures.push_back(jf);
        }
        report["solve_failures"] = failures;
    }
    report["all_pass"] = ctx.checks.all_pass() && (!ctx.solved || ctx.solved->failures.empty());

    std::ofstream out(fs::path(ctx.cfg.output_path) / "report.json");
    out << report.dump(2) << "\n";

    if (ctx.solved) {
        std::ofstream csv(fs::path(ctx.cfg.output_path) / "roots.csv");
        csv << "eigenvalue_index,root_index,re_lambda,im_lambda,bae_residual\n";
        csv.precision(17);
        for (std::size_t i = 0; i < ctx.solved->entries.size(); ++i) {
            const auto& e = ctx.solved->entries[i];
            if (!e.tq) continue;
            for (std::size_t k = 0; k < e.tq->roots.size(); ++k)
                csv << i << "," << k << "," << e.tq->roots[k].real() << ","
                    << e.tq->roots[k].imag() << "," << e.tq->bae_residuals[k] << "\n";
        }
    }
}

void print_summary(const RunContext& ctx) {
    std::size_t pass = 0;
    for (const auto& c : ctx.checks.checks)
        if (c.pass) ++pass;
    std::cout << "checks: " << pass << "/" << ctx.checks.checks.size() << " passed\n";
    for (const auto& c : ctx.checks.checks)
        if (!c.pass)
            std::cout << "  FAIL " << c.suite << "." << c.name << " residual=" << c.residual
                      << " tolerance=" << c.tolerance << " scale=" << c.scale << "\n";
    if (ctx.solved && !ctx.solved->failures.empty()) {
        std::cout << "solve failures:\n";
        for (const auto& f : ctx.solved->failures)
            std::cout << "  entry " << f.entry_index << ": " << f.message << "\n";
    }
}

struct CliArgs {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::optional<std::string> out_dir;
    std::vector<std::string> suites;
};

RunContext make_context(const CliArgs& args) {
    RunContext ctx;
    ctx.cfg = load_config(args.config_path);
    if (args.out_dir) ctx.cfg.output_path = *args.out_dir;
    if (!args.suites.empty()) {
        for (const auto& s : args.suites) {
            bool known = false;
            for (const auto& entry : suite_table())
                if (s == entry.name) known = true;
            require(known, ErrorKind::config, "unknown suite name: " + s);
        }
        ctx.cfg.suites = args.suites;
    }
    ctx.seed_used = args.seed.value_or(ctx.cfg.seed.value_or(0));
    ctx.params = resolve_model(ctx.cfg, args.seed, &ctx.rejections);
    for (int k = 0; k < ctx.cfg.probe_count; ++k)
        ctx.residual_probes.emplace_back(0.23 + 0.07 * k, 0.11 - 0.05 * k);
    return ctx;
}

int finish(RunContext& ctx, const std::string& command) {
    write_reports(ctx, command);
    print_summary(ctx);
    const bool ok = ctx.checks.all_pass() && (!ctx.solved || ctx.solved->failures.empty());
    return ok ? 0 : 1;
}

int cmd_run(const CliArgs& args) {
    RunContext ctx = make_context(args);
    std::vector<std::string> plan = ctx.cfg.suites;
    const bool explicit_request = !plan.empty();
    if (plan.empty())
        for (const auto& s : suite_table()) plan.push_back(s.name);
    run_suites(ctx, plan, explicit_request);
    return finish(ctx, "run");
}

int cmd_verify(const CliArgs& args) {
    RunContext ctx = make_context(args);
    std::vector<std::string> plan;
    const bool explicit_request = !ctx.cfg.suites.empty();
    if (explicit_request) {
        for (const auto& s : ctx.cfg.suites) {
            require(kVerifySuites.count(s) > 0, ErrorKind::config,
                    "suite " + s + " is not part of the verify command");
            plan.push_back(s);
        }
    } else {
        for (const auto& s : suite_table())
            if (kVerifySuites.count(s.name) > 0) plan.push_back(s.name);
    }
    run_suites(ctx, plan, explicit_request);
    return finish(ctx, "verify");
}

int cmd_spectrum(const CliArgs& args) {
    RunContext ctx = make_context(args);
    require(ctx.params.n_sites <= 8, ErrorKind::size, "spectrum: N exceeds certified limit (max 8)");
    auto entries = spectrum_ed(ctx.params);
    const Complex u0 = ed_probe_points()[0];
    std::cout << "eigenvalues of the transfer matrix at u0 = (" << u0.real() << ", " << u0.imag()
              << "i):\n";
    std::cout.precision(15);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Complex lam = lambda_ed(entries[i], u0, ctx.params);
        std::cout << "  " << i << ": " << lam.real() << (lam.imag() < 0 ? " - " : " + ")
                  << std::abs(lam.imag()) << "i\n";
    }
    ctx.solved = SolveResult{std::move(entries), {}};
    return finish(ctx, "spectrum");
}

int cmd_solve(const CliArgs& args) {
    RunContext ctx = make_context(args);
    require(ctx.params.n_sites <= 4, ErrorKind::size, "solve: N exceeds certified limit (max 4)");
    run_suites(ctx, {"solve"}, true);
    return finish(ctx, "solve");
}

int cmd_state(const CliArgs& args) {
    RunContext ctx = make_context(args);
    require(ctx.params.n_sites <= 4, ErrorKind::size, "state: N exceeds certified limit (max 4)");
    run_suites(ctx, {"solve", "bethe"}, true);
    return finish(ctx, "state");
}

int cmd_branches(const CliArgs& args) {
    RunContext ctx = make_context(args);
    const auto branches = enumerate_gauge_branches(ctx.params);
    std::cout.precision(12);
    for (const auto& b : branches) {
        const Complex meta = b.left.m * ctx.params.eta;
        const Complex aeta = b.left.alpha * ctx.params.eta;
        std::cout << "branch " << b.branch << ": m_eta=(" << meta.real() << "," << meta.imag()
                  << ") alpha_eta=(" << aeta.real() << "," << aeta.imag() << ") right_sum=("
                  << b.right_sum.real() << "," << b.right_sum.imag() << ") signs=("
                  << (b.sign_plus > 0 ? "+" : "-") << "," << (b.sign_minus > 0 ? "+" : "-")
                  << ")\n";
        ctx.checks.add("branches", "branch_" + std::to_string(b.branch) + "_left",
                       "branch satisfies the left gauge-selection equations",
                       gauge_condition_left_residual(ctx.params, b.left), 1.0, 1e-10);
        ctx.checks.add("branches", "branch_" + std::to_string(b.branch) + "_right",
                       "branch satisfies the right gauge-selection equation",
                       gauge_condition_right_residual(ctx.params, b.right_sum), 1.0, 1e-10);
    }
    return finish(ctx, "branches");
}

int dispatch(const std::string& command, const CliArgs& args) {
    try {
        if (command == "run") return cmd_run(args);
        if (command == "verify") return cmd_verify(args);
        if (command == "spectrum") return cmd_spectrum(args);
        if (command == "solve") return cmd_solve(args);
        if (command == "state") return cmd_state(args);
        if (command == "branches") return cmd_branches(args);
        std::cerr << "unknown command: " << command << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::config:
        case ErrorKind::size:
            return 2;
        case ErrorKind::non_generic:
        case ErrorKind::degenerate:
            std::cerr << "hint: re-draw with a different seed\n";
            return 3;
        default:
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace
} // namespace xxz

int main(int argc, char** argv) {
    CLI::App app{"open XXZ chain laboratory: spectra, Bethe roots and gauged Bethe states"};
    app.require_subcommand(1);

    xxz::CliArgs args;
    uint64_t seed_value = 0;
    std::string out_value;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "JSON configuration file")->required();
        sub->add_option("--seed", seed_value, "override the configured seed");
        sub->add_option("--out", out_value, "output directory for report.json and roots.csv");
        sub->add_option("--suite", args.suites, "restrict to the named suites");
    };

    for (const char* name : {"run", "verify", "spectrum", "solve", "state", "branches"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return (code == 0) ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--seed") > 0) args.seed = seed_value;
    if (sub->count("--out") > 0) args.out_dir = out_value;
    return xxz::dispatch(sub->get_name(), args);
}
