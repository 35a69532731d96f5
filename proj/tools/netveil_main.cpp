// netveil command line: validate, obfuscate, attack, experiment.
//
// Exit codes: 0 success, 2 validation/usage error, 3 restoration
// non-convergence under --strict.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netveil/benchmarks.hpp"
#include "netveil/pipeline.hpp"

namespace {

struct PrivacyFlags {
    double epsilon = 1.0;
    double alpha_loc = 0.0;      // hops; 0 = unset
    double alpha_loc_pct = 0.0;  // percent of the network diameter; 0 = unset
    double alpha_val = 0.1;
    double beta = 0.1;
    std::uint64_t seed = 1;
};

void add_privacy_flags(CLI::App* cmd, PrivacyFlags& flags) {
    cmd->add_option("--epsilon", flags.epsilon, "privacy loss epsilon (> 0)");
    cmd->add_option("--alpha-loc", flags.alpha_loc, "location radius in hops");
    cmd->add_option("--alpha-loc-pct", flags.alpha_loc_pct,
                    "location radius as percent of the network diameter");
    cmd->add_option("--alpha-val", flags.alpha_val, "value radius in value units");
    cmd->add_option("--beta", flags.beta, "relative faithfulness tolerance");
    cmd->add_option("--seed", flags.seed, "root seed; all randomness derives from it");
}

netveil::PipelineConfig make_config(const PrivacyFlags& flags,
                                    const netveil::NetworkBundle& bundle,
                                    const std::string& restore_mode) {
    netveil::PipelineConfig config;
    config.privacy.epsilon = flags.epsilon;
    config.privacy.alpha_val = flags.alpha_val;
    config.privacy.beta = flags.beta;
    config.privacy.seed = flags.seed;
    if (flags.alpha_loc > 0.0 && flags.alpha_loc_pct > 0.0)
        throw netveil::Error(netveil::ErrorCode::bad_parameter,
                             "--alpha-loc and --alpha-loc-pct are mutually exclusive");
    if (flags.alpha_loc_pct > 0.0)
        config.alpha_loc_hops =
            flags.alpha_loc_pct / 100.0 * static_cast<double>(netveil::diameter(bundle.network));
    else
        config.alpha_loc_hops = flags.alpha_loc > 0.0 ? flags.alpha_loc : 1.0;
    config.privacy.alpha_loc = config.alpha_loc_hops;
    config.restore = netveil::restore_mode_from_name(restore_mode);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"differentially private release of infrastructure network datasets"};
    app.require_subcommand(1);

    // validate
    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a network file against the schema");
    validate->add_option("input", validate_path, "network JSON file")->required();

    // obfuscate
    std::string obf_input, obf_output = "released.json", obf_restore = "convex";
    PrivacyFlags obf_flags;
    auto* obfuscate = app.add_subcommand("obfuscate", "release one obfuscated network");
    obfuscate->add_option("input", obf_input, "network JSON file")->required();
    obfuscate->add_option("--out", obf_output, "output path for the released network");
    obfuscate->add_option("--restore", obf_restore, "restoration mode: convex | exact-sp")
        ->check(CLI::IsMember({"convex", "exact-sp"}));
    add_privacy_flags(obfuscate, obf_flags);
    bool obf_strict = false;
    obfuscate->add_flag("--strict", obf_strict, "exit 3 if restoration does not converge");

    // attack
    std::string atk_input, atk_released, atk_strategy = "fully-informed";
    double atk_budget = 10.0;
    std::size_t atk_runs = 1;
    std::uint64_t atk_seed = 1;
    auto* attack = app.add_subcommand("attack", "evaluate ranking attacks against a network");
    attack->add_option("input", atk_input, "true network JSON file")->required();
    attack->add_option("--released", atk_released,
                       "released network JSON (defaults to the true network)");
    attack->add_option("--strategy", atk_strategy,
                       "random | obfuscated | fully-informed")
        ->check(CLI::IsMember({"random", "obfuscated", "fully-informed"}));
    attack->add_option("--budget", atk_budget, "percent of elements to attack");
    attack->add_option("--runs", atk_runs, "repetitions (random strategy varies per run)");
    attack->add_option("--seed", atk_seed, "seed for random attacks");

    // experiment
    std::string exp_input, exp_out = "report", exp_restore = "convex";
    PrivacyFlags exp_flags;
    std::vector<double> exp_budgets{10.0, 20.0, 30.0};
    std::size_t exp_runs = 50;
    bool exp_strict = false;
    std::string exp_bench;
    auto* experiment =
        app.add_subcommand("experiment", "obfuscate repeatedly and measure attack damage");
    experiment->add_option("input", exp_input, "network JSON file");
    experiment->add_option("--bench", exp_bench,
                           "use a built-in benchmark instead of a file: dispatch | traffic")
        ->check(CLI::IsMember({"dispatch", "traffic"}));
    experiment->add_option("--out", exp_out, "output directory for report.json and CSV series");
    experiment->add_option("--restore", exp_restore, "restoration mode: convex | exact-sp")
        ->check(CLI::IsMember({"convex", "exact-sp"}));
    experiment->add_option("--runs", exp_runs, "number of obfuscation runs");
    experiment->add_option("--budget", exp_budgets, "attack budgets in percent")
        ->delimiter(',');
    experiment->add_flag("--strict", exp_strict, "exit 3 if any run fails to converge");
    add_privacy_flags(experiment, exp_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) {
            const auto bundle = netveil::load_network(validate_path);
            std::printf("ok: %s (%s, %d nodes, %zu edges, %zu elements)\n",
                        validate_path.c_str(), bundle.is_dispatch() ? "dispatch" : "traffic",
                        bundle.network.node_count(), bundle.network.edges().size(),
                        bundle.network.element_count());
            return 0;
        }

        if (obfuscate->parsed()) {
            const auto bundle = netveil::load_network(obf_input);
            const auto config = make_config(obf_flags, bundle, obf_restore);
            const auto release =
                netveil::release_network(bundle, config, config.privacy.seed);
            const auto released = netveil::rebind_network(bundle, release.released);
            netveil::save_network(released, obf_output);
            std::printf("released: %s (gap %.6f, %s)\n", obf_output.c_str(),
                        release.restoration.gap,
                        release.restoration.converged ? "converged" : "NOT converged");
            if (obf_strict && !release.restoration.converged) return 3;
            return 0;
        }

        if (attack->parsed()) {
            const auto bundle = netveil::load_network(atk_input);
            const auto released =
                atk_released.empty() ? bundle : netveil::load_network(atk_released);
            netveil::AttackConfig config;
            config.strategy = netveil::strategy_from_name(atk_strategy);
            config.budget_pct = atk_budget;
            config.seed = atk_seed;
            if (atk_runs <= 1) {
                const auto outcome = netveil::execute_attack(
                    bundle.network, released.network, bundle.problem, config);
                std::printf("strategy %s budget %.1f%%: damage %.6f", atk_strategy.c_str(),
                            atk_budget, outcome.damage);
                if (bundle.is_dispatch())
                    std::printf(" (unserved %.3f MW)", outcome.unserved);
                else if (outcome.disconnected > 0)
                    std::printf(" (%d pair(s) disconnected)", outcome.disconnected);
                std::printf("\n  elements:");
                for (auto id : outcome.element_ids) std::printf(" %zu", id);
                std::printf("\n");
            } else {
                const auto stats = netveil::run_experiment(
                    bundle.network, released.network, bundle.problem, config, atk_runs);
                std::printf("random          mean %.6f  std %.6f\n", stats.random.mean,
                            stats.random.stddev);
                std::printf("obfuscated      mean %.6f  std %.6f\n", stats.obfuscated.mean,
                            stats.obfuscated.stddev);
                std::printf("fully-informed  mean %.6f  std %.6f\n",
                            stats.fully_informed.mean, stats.fully_informed.stddev);
            }
            return 0;
        }

        if (experiment->parsed()) {
            netveil::NetworkBundle bundle = [&] {
                if (!exp_bench.empty())
                    return exp_bench == "dispatch" ? netveil::make_dispatch_benchmark()
                                                   : netveil::make_traffic_benchmark();
                if (exp_input.empty())
                    throw netveil::Error(netveil::ErrorCode::missing_field,
                                         "experiment needs an input file or --bench");
                return netveil::load_network(exp_input);
            }();
            auto config = make_config(exp_flags, bundle, exp_restore);
            config.budgets_pct = exp_budgets;
            config.runs = exp_runs;
            const auto report = netveil::run_pipeline(bundle, config);
            const auto files = netveil::emit_report(report, exp_out);
            std::printf("report: %zu runs, phase-2 feasibility %.0f%%, convergence %.0f%%\n",
                        report.runs.size(), 100.0 * report.phase2_feasibility_rate,
                        100.0 * report.restoration_convergence_rate);
            for (const auto& f : files) std::printf("  wrote %s\n", f.c_str());
            if (exp_strict && report.restoration_convergence_rate < 1.0) return 3;
            return 0;
        }
    } catch (const netveil::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
