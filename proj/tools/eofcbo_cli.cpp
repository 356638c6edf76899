#include <CLI11.hpp>

#include "eofcbo/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace ex = eofcbo::experiment;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 1;
    std::string aggregate = "none";
    bool zero_timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
    auto* c = cmd->add_option("--config", opts.config_path, "experiment config file");
    if (config_required) c->required();
    cmd->add_option("--seed", opts.seed, "override master seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--workers", opts.workers, "parallel sweep cells");
    cmd->add_option("--aggregate", opts.aggregate, "none|median|mean")
        ->check(CLI::IsMember({"none", "median", "mean"}));
    cmd->add_flag("--zero-timing", opts.zero_timing,
                  "report wall_time_s as 0 for byte-stable outputs");
}

int execute(const ex::ExperimentConfig& config_in, const CommonOpts& opts,
            const std::string& csv_name) {
    ex::ExperimentConfig config = config_in;
    if (opts.seed_set) config.seed = opts.seed;
    std::filesystem::create_directories(opts.out_dir);
    ex::RunOptions run_opts;
    run_opts.out_dir = opts.out_dir;
    run_opts.workers = opts.workers;
    run_opts.zero_timing = opts.zero_timing;

    const ex::SweepResult result = ex::run_experiment(config, run_opts);
    const std::string csv_path = opts.out_dir + "/" + csv_name;
    ex::emit_csv(result, csv_path);
    std::cout << "wrote " << csv_path << " (" << result.rows.size() << " rows)\n";
    if (opts.aggregate != "none") {
        const ex::SweepResult agg = ex::aggregate(result, opts.aggregate);
        const std::string agg_path = opts.out_dir + "/summary_" + opts.aggregate + ".csv";
        ex::emit_csv(agg, agg_path);
        std::cout << "wrote " << agg_path << " (" << agg.rows.size() << " rows)\n";
    }
    bool any_failed = false;
    for (const auto& row : result.rows) any_failed |= row.failed;
    return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement-of-formation computation by consensus-based optimization"};
    app.require_subcommand(1);

    CommonOpts run_opts, sweep_opts, compare_opts, table_opts;

    auto* run_cmd = app.add_subcommand("run", "single experiment from a config file");
    add_common(run_cmd, run_opts, true);

    auto* sweep_cmd = app.add_subcommand("sweep", "parameter grid from a config file");
    add_common(sweep_cmd, sweep_opts, true);

    auto* compare_cmd = app.add_subcommand("compare", "multi-solver grid from a config file");
    add_common(compare_cmd, compare_opts, true);

    auto* oracle_cmd = app.add_subcommand("oracle", "print closed-form EoF values");
    std::string oracle_state = "werner";
    std::vector<double> oracle_params;
    double oracle_a = 0.75;
    oracle_cmd->add_option("--state", oracle_state, "werner|horodecki_2x2|isotropic_3x3")
        ->check(CLI::IsMember({"werner", "horodecki_2x2", "isotropic_3x3"}));
    oracle_cmd->add_option("--param", oracle_params, "state parameter(s)")->required();
    oracle_cmd->add_option("--a", oracle_a, "horodecki_2x2 second parameter");

    auto* table_cmd = app.add_subcommand(
        "table1", "preset: Werner F=0.7, J=100, K=500, M=4..8, single vs multi-species");
    add_common(table_cmd, table_opts, false);
    int table_seeds = 5;
    table_cmd->add_option("--seeds", table_seeds, "number of repeated seeds (median reported)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            ex::ExperimentConfig config = ex::load_config(run_opts.config_path);
            if (config.state_params.size() != 1 || config.solvers.size() != 1) {
                std::cerr << "run: config must name exactly one state parameter and one solver "
                             "(use sweep/compare)\n";
                return 2;
            }
            return execute(config, run_opts, "results.csv");
        }
        if (sweep_cmd->parsed()) {
            return execute(ex::load_config(sweep_opts.config_path), sweep_opts, "results.csv");
        }
        if (compare_cmd->parsed()) {
            ex::ExperimentConfig config = ex::load_config(compare_opts.config_path);
            if (config.solvers.size() < 2) {
                std::cerr << "compare: config must list at least two solvers via 'names'\n";
                return 2;
            }
            return execute(config, compare_opts, "results.csv");
        }
        if (oracle_cmd->parsed()) {
            for (double p : oracle_params) {
                double value = 0.0;
                if (oracle_state == "werner")
                    value = eofcbo::bench::wootters_eof(eofcbo::bench::werner(p)).value;
                else if (oracle_state == "horodecki_2x2")
                    value =
                        eofcbo::bench::wootters_eof(eofcbo::bench::horodecki_2x2(p, oracle_a))
                            .value;
                else
                    value = eofcbo::bench::isotropic_eof(p).value;
                std::printf("%s param=%.17g eof=%.17g\n", oracle_state.c_str(), p, value);
            }
            return 0;
        }
        // table1
        ex::ExperimentConfig config;
        config.state = ex::StateKind::werner;
        config.state_params = {0.7};
        config.solvers = {ex::SolverKind::hermitian, ex::SolverKind::multispecies};
        config.m_set_spec = "4..8";
        config.particles = 100;
        config.iterations = 500;
        config.repeats = table_seeds;
        config.seed = table_opts.seed_set ? table_opts.seed : 1;
        config.source_text = "[preset table1]";
        std::filesystem::create_directories(table_opts.out_dir);
        ex::RunOptions ro;
        ro.out_dir = table_opts.out_dir;
        ro.workers = table_opts.workers;
        ro.zero_timing = table_opts.zero_timing;
        const ex::SweepResult result = ex::run_experiment(config, ro);
        ex::emit_csv(result, table_opts.out_dir + "/table1_raw.csv");
        const ex::SweepResult agg = ex::aggregate(result, "median");
        ex::emit_csv(agg, table_opts.out_dir + "/table1_median.csv");
        int rc = 0;
        for (const auto& row : result.rows) rc |= row.failed ? 1 : 0;
        std::printf("%-28s", "minimum");
        for (int m = 4; m <= 8; ++m) std::printf("  M=%-8d", m);
        std::printf("\n");
        for (const std::string solver : {"hermitian", "multispecies"}) {
            std::printf("%-28s", solver.c_str());
            for (int m = 4; m <= 8; ++m)
                for (const auto& row : agg.rows)
                    if (row.solver == solver && row.m == m) std::printf("  %.5f   ", row.eof);
            std::printf("\n");
        }
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
