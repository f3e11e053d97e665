#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hrlab/harness.hpp"

using namespace hrlab;

int main(int argc, char** argv) {
    CLI::App app{"hrlab: numerical verification of linear Hodge-Riemann relations for m-positive mixed polarizations"};
    app.require_subcommand(1);

    double tol = default_tolerance();  // HRLAB_TOL already folded in
    app.add_option("--tol", tol, "global relative tolerance (default 1e-10, env HRLAB_TOL)");

    // check
    auto* check = app.add_subcommand("check", "verify one instance file (HRR/HL/LD/homotopy/local estimate)");
    std::string check_instance, check_report;
    bool no_validate = false;
    std::uint64_t check_seed = 1;
    int check_steps = 9;
    check->add_option("instance", check_instance, "instance JSON file")->required();
    check->add_option("--report", check_report, "write the report JSON here");
    check->add_flag("--no-validate", no_validate, "skip hypothesis validation (counterexample replay)");
    check->add_option("--seed", check_seed, "seed for sampled sub-checks");
    check->add_option("--steps", check_steps, "homotopy grid size");

    // random
    auto* random = app.add_subcommand("random", "seeded sweep of random valid instances");
    SweepConfig cfg;
    int fix_m = -1, fix_p = -1, fix_q = -1;
    random->add_option("--n-min", cfg.n_min, "smallest ambient dimension (default 2)");
    random->add_option("--n-max", cfg.n_max, "largest ambient dimension (default 5)");
    random->add_option("--count", cfg.count, "instances per (n,m,p,q) configuration (default 100)");
    random->add_option("--seed", cfg.seed, "master seed");
    random->add_option("--m", fix_m, "restrict to one m");
    random->add_option("--p", fix_p, "restrict to one p");
    random->add_option("--q", fix_q, "restrict to one q");
    random->add_flag("--classical", cfg.classical_only, "restrict to m = n (classical mixed case)");
    random->add_flag("--homotopy", cfg.with_homotopy, "include the homotopy check in each instance");
    random->add_flag("--restriction", cfg.with_restriction, "include the restriction check in each instance");
    random->add_option("--steps", cfg.homotopy_steps, "homotopy grid size");
    random->add_option("--report", cfg.report_path, "write the aggregate report JSON here");

    // fibration
    auto* fibration = app.add_subcommand("fibration", "verify a pullback (submersion) model");
    std::string fib_model, fib_report;
    std::uint64_t fib_seed = 1;
    int fib_steps = 9;
    fibration->add_option("model", fib_model, "fibration model JSON file")->required();
    fibration->add_option("--report", fib_report, "write the report JSON here");
    fibration->add_option("--seed", fib_seed, "seed for sampled sub-checks");
    fibration->add_option("--steps", fib_steps, "homotopy grid size");

    // search
    auto* search = app.add_subcommand("search", "observational counterexample search");
    std::string search_mode = "arbitrary-omega", findings_path, replay_path;
    int budget = 100;
    std::uint64_t search_seed = 1;
    search->add_option("--mode", search_mode, "arbitrary-omega | basis-intersection");
    search->add_option("--budget", budget, "number of sampled candidates");
    search->add_option("--seed", search_seed, "seed");
    search->add_option("--findings", findings_path, "write findings JSON here");
    search->add_option("--replay", replay_path, "re-evaluate a findings file instead of searching");

    // restrict
    auto* restrict_cmd = app.add_subcommand("restrict", "hyperplane restriction identity and positivity");
    std::string restrict_instance, restrict_hyperplane, restrict_report;
    int restrict_count = 8;
    std::uint64_t restrict_seed = 1;
    restrict_cmd->add_option("instance", restrict_instance, "instance JSON file")->required();
    restrict_cmd->add_option("--hyperplane", restrict_hyperplane, "hyperplane JSON file (default: sampled)");
    restrict_cmd->add_option("--count", restrict_count, "sampled hyperplanes when none is given");
    restrict_cmd->add_option("--seed", restrict_seed, "seed");
    restrict_cmd->add_option("--report", restrict_report, "write the report JSON here");

    // deform
    auto* deform = app.add_subcommand("deform", "homotopy table (t, signature, min |eigenvalue|)");
    std::string deform_instance, deform_report;
    int deform_steps = 9;
    deform->add_option("instance", deform_instance, "instance JSON file")->required();
    deform->add_option("--steps", deform_steps, "grid size (default 9)");
    deform->add_option("--report", deform_report, "write the table JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*check) {
            CheckOptions opts;
            opts.tol = tol;
            opts.seed = check_seed;
            opts.homotopy_steps = check_steps;
            return cmd_check(check_instance, check_report, opts, no_validate);
        }
        if (*random) {
            cfg.tol = tol;
            if (fix_m >= 0) cfg.fix_m = fix_m;
            if (fix_p >= 0) cfg.fix_p = fix_p;
            if (fix_q >= 0) cfg.fix_q = fix_q;
            return cmd_random(cfg);
        }
        if (*fibration) {
            CheckOptions opts;
            opts.tol = tol;
            opts.seed = fib_seed;
            opts.homotopy_steps = fib_steps;
            return cmd_fibration(fib_model, fib_report, opts);
        }
        if (*search) {
            if (!replay_path.empty()) return cmd_search_replay(replay_path, tol);
            return cmd_search(search_mode, budget, search_seed, findings_path, tol);
        }
        if (*restrict_cmd)
            return cmd_restrict(restrict_instance, restrict_hyperplane, restrict_count, restrict_seed,
                                restrict_report, tol);
        if (*deform) {
            if (deform_steps < 2) throw RangeError("deform: need --steps >= 2");
            return cmd_deform(deform_instance, deform_steps, deform_report, tol);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {  // Dimension/Degree/Range/NotKahler
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
