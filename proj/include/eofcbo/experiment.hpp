#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eofcbo/bench.hpp"
#include "eofcbo/cbo.hpp"
#include "eofcbo/quantum.hpp"

namespace eofcbo::experiment {

enum class StateKind { horodecki_2x2, werner, isotropic_3x3, horodecki_2x4, custom_file };
enum class SolverKind {
    hermitian,
    hermitian_projection,
    unitary,
    unitary_projection,
    multispecies,
    sa_reference
};

std::string to_string(StateKind s);
std::string to_string(SolverKind s);
StateKind parse_state_kind(const std::string& name);
SolverKind parse_solver_kind(const std::string& name);

// Parsed and default-resolved experiment description. Defaults reproduce the
// standard benchmark setup: beta=200, lambda=1, dt=0.2, K=1000, sigma=0.06 for
// the Hermitian family and 0.01 for the unitary solver, delta=1.
struct ExperimentConfig {
    StateKind state = StateKind::werner;
    std::vector<double> state_params{0.7};  // q, F, or b depending on the state
    double horodecki_a = 0.75;              // second parameter of horodecki_2x2
    std::string custom_path;                // custom_file source

    std::vector<SolverKind> solvers{SolverKind::hermitian};
    std::string m_set_spec = "r..2N";  // "r..2N", "a..b", or comma list
    int particles = 100;               // J
    int iterations = 1000;             // K
    double beta = 200.0;
    double lambda = 1.0;
    std::optional<double> sigma;           // per-solver default when unset
    double delta = 1.0;                    // additive noise factor
    std::optional<double> additive_sigma;  // default sigma * delta
    double dt = 0.2;
    std::uint64_t seed = 0;
    int repeats = 1;

    bench::SaConfig sa;

    // raw text the config was parsed from, echoed into outputs
    std::string source_text;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// "r..2N" resolved against the state's rank and total dimension.
std::vector<int> resolve_m_set(const std::string& spec, int rank, int n);

// Sigma/additive defaults for one solver.
CboConfig resolve_cbo(const ExperimentConfig& config, SolverKind solver, std::uint64_t seed);

struct SweepRow {
    double state_param = 0.0;
    int m = 0;
    std::string solver;
    std::uint64_t seed = 0;
    double eof = 0.0;
    std::optional<double> oracle;
    std::optional<double> abs_error;
    double wall_time_s = 0.0;
    bool failed = false;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

struct RunOptions {
    std::string out_dir;        // empty: no trace files
    int workers = 1;
    bool zero_timing = false;   // report wall_time_s as 0 for byte-stable output
};

DensityMatrix build_state(const ExperimentConfig& config, double param);
std::optional<double> oracle_for(const ExperimentConfig& config, const DensityMatrix& state,
                                 double param);

SweepResult run_experiment(const ExperimentConfig& config, const RunOptions& options);

void emit_csv(const SweepResult& result, const std::string& path);

// Median/mean over seeds per (state_param, M, solver) cell.
SweepResult aggregate(const SweepResult& result, const std::string& how);

// Plain-text density matrix file: "N_A N_B" then N^2 lines "re im" row-major.
DensityMatrix read_density_file(const std::string& path);
void write_density_file(const DensityMatrix& dm, const std::string& path);

void emit_trace_json(const RunTrace& trace, const ExperimentConfig& config,
                     const std::string& run_id, double state_param, int m,
                     const std::string& solver, std::uint64_t seed, const std::string& path);

}  // namespace eofcbo::experiment
