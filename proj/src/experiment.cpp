#include "eofcbo/experiment.hpp"

#include "eofcbo/cbo_hermitian.hpp"
#include "eofcbo/cbo_unitary.hpp"
#include "eofcbo/multispecies.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace eofcbo::experiment {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& message) {
    throw ValidationError("config parse error at line " + std::to_string(line) + ": " + message);
}

double to_double(const std::string& value, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        parse_fail(line, "invalid numeric value for '" + key + "': " + value);
    }
}

long long to_int(const std::string& value, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        parse_fail(line, "invalid integer value for '" + key + "': " + value);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    return parts;
}

// "lo:step:hi" inclusive grid, or comma list, or single value
std::vector<double> parse_value_grid(const std::string& value, int line, const std::string& key) {
    const auto colon_parts = split(value, ':');
    if (colon_parts.size() == 3) {
        const double lo = to_double(colon_parts[0], line, key);
        const double step = to_double(colon_parts[1], line, key);
        const double hi = to_double(colon_parts[2], line, key);
        if (step <= 0.0) parse_fail(line, "grid step must be positive for '" + key + "'");
        std::vector<double> grid;
        for (double v = lo; v <= hi + 1e-12 * std::max(1.0, std::abs(hi)); v += step)
            grid.push_back(v);
        return grid;
    }
    std::vector<double> grid;
    for (const auto& part : split(value, ','))
        if (!part.empty()) grid.push_back(to_double(part, line, key));
    if (grid.empty()) parse_fail(line, "empty value for '" + key + "'");
    return grid;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

std::string to_string(StateKind s) {
    switch (s) {
        case StateKind::horodecki_2x2: return "horodecki_2x2";
        case StateKind::werner: return "werner";
        case StateKind::isotropic_3x3: return "isotropic_3x3";
        case StateKind::horodecki_2x4: return "horodecki_2x4";
        case StateKind::custom_file: return "custom_file";
    }
    return "?";
}

std::string to_string(SolverKind s) {
    switch (s) {
        case SolverKind::hermitian: return "hermitian";
        case SolverKind::hermitian_projection: return "hermitian_projection";
        case SolverKind::unitary: return "unitary";
        case SolverKind::unitary_projection: return "unitary_projection";
        case SolverKind::multispecies: return "multispecies";
        case SolverKind::sa_reference: return "sa_reference";
    }
    return "?";
}

StateKind parse_state_kind(const std::string& name) {
    for (StateKind s : {StateKind::horodecki_2x2, StateKind::werner, StateKind::isotropic_3x3,
                        StateKind::horodecki_2x4, StateKind::custom_file})
        if (to_string(s) == name) return s;
    throw ValidationError("unknown state: " + name);
}

SolverKind parse_solver_kind(const std::string& name) {
    for (SolverKind s :
         {SolverKind::hermitian, SolverKind::hermitian_projection, SolverKind::unitary,
          SolverKind::unitary_projection, SolverKind::multispecies, SolverKind::sa_reference})
        if (to_string(s) == name) return s;
    throw ValidationError("unknown solver: " + name);
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    config.source_text = text;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') parse_fail(line_no, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "state" && section != "solver" && section != "run")
                parse_fail(line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) parse_fail(line_no, "key outside a section");
        if (value.empty()) parse_fail(line_no, "empty value for '" + key + "'");

        if (section == "state") {
            if (key == "name") {
                try {
                    config.state = parse_state_kind(value);
                } catch (const ValidationError& e) {
                    parse_fail(line_no, e.what());
                }
            } else if (key == "param") {
                config.state_params = {to_double(value, line_no, key)};
            } else if (key == "param_grid") {
                config.state_params = parse_value_grid(value, line_no, key);
            } else if (key == "a") {
                config.horodecki_a = to_double(value, line_no, key);
            } else if (key == "file") {
                config.custom_path = value;
            } else {
                parse_fail(line_no, "unknown key '" + key + "' in [state]");
            }
        } else if (section == "solver") {
            if (key == "name" || key == "names") {
                config.solvers.clear();
                for (const auto& part : split(value, ',')) {
                    try {
                        config.solvers.push_back(parse_solver_kind(part));
                    } catch (const ValidationError& e) {
                        parse_fail(line_no, e.what());
                    }
                }
            } else if (key == "M_set") {
                config.m_set_spec = value;
            } else if (key == "J") {
                config.particles = static_cast<int>(to_int(value, line_no, key));
            } else if (key == "K") {
                config.iterations = static_cast<int>(to_int(value, line_no, key));
            } else if (key == "beta") {
                config.beta = to_double(value, line_no, key);
            } else if (key == "lambda") {
                config.lambda = to_double(value, line_no, key);
            } else if (key == "sigma") {
                config.sigma = to_double(value, line_no, key);
            } else if (key == "delta") {
                config.delta = to_double(value, line_no, key);
            } else if (key == "additive_sigma") {
                config.additive_sigma = to_double(value, line_no, key);
            } else if (key == "dt") {
                config.dt = to_double(value, line_no, key);
            } else if (key == "sa_chi0") {
                config.sa.chi0 = to_double(value, line_no, key);
            } else if (key == "sa_chi_end") {
                config.sa.chi_end = to_double(value, line_no, key);
            } else if (key == "sa_alpha") {
                config.sa.alpha = to_double(value, line_no, key);
            } else if (key == "sa_iter_per_angle") {
                config.sa.iter_per_angle = static_cast<int>(to_int(value, line_no, key));
            } else if (key == "sa_realizations") {
                config.sa.realizations = static_cast<int>(to_int(value, line_no, key));
            } else {
                parse_fail(line_no, "unknown key '" + key + "' in [solver]");
            }
        } else {  // run
            if (key == "seed") {
                config.seed = static_cast<std::uint64_t>(to_int(value, line_no, key));
            } else if (key == "repeats") {
                config.repeats = static_cast<int>(to_int(value, line_no, key));
                if (config.repeats < 1) parse_fail(line_no, "repeats must be >= 1");
            } else {
                parse_fail(line_no, "unknown key '" + key + "' in [run]");
            }
        }
    }
    if (config.state == StateKind::custom_file && config.custom_path.empty())
        throw ValidationError("config: custom_file state requires 'file'");
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::vector<int> resolve_m_set(const std::string& spec_in, int rank, int n) {
    const std::string spec = trim(spec_in);
    auto symbolic = [&](const std::string& tok) -> int {
        if (tok == "r") return rank;
        if (tok == "N") return n;
        if (tok == "2N") return 2 * n;
        if (tok == "N^2" || tok == "N2") return n * n;
        return static_cast<int>(std::stoll(tok));
    };
    std::vector<int> out;
    const auto range_pos = spec.find("..");
    try {
        if (range_pos != std::string::npos) {
            const int lo = symbolic(trim(spec.substr(0, range_pos)));
            const int hi = symbolic(trim(spec.substr(range_pos + 2)));
            if (lo > hi) throw ValidationError("M_set: empty range " + spec);
            for (int m = lo; m <= hi; ++m) out.push_back(m);
        } else {
            for (const auto& part : split(spec, ','))
                if (!part.empty()) out.push_back(symbolic(part));
        }
    } catch (const std::invalid_argument&) {
        throw ValidationError("M_set: cannot parse '" + spec + "'");
    }
    if (out.empty()) throw ValidationError("M_set: empty specification");
    for (int m : out)
        if (m < rank || m > n * n)
            throw DimensionError("M_set: M=" + std::to_string(m) + " outside [rank, N^2]");
    return out;
}

CboConfig resolve_cbo(const ExperimentConfig& config, SolverKind solver, std::uint64_t seed) {
    CboConfig cbo;
    cbo.beta = config.beta;
    cbo.lambda = config.lambda;
    cbo.dt = config.dt;
    cbo.max_iter = config.iterations;
    cbo.seed = seed;
    const bool unitary_family =
        solver == SolverKind::unitary || solver == SolverKind::unitary_projection;
    cbo.sigma = config.sigma.value_or(unitary_family ? 0.01 : 0.06);
    cbo.additive_sigma = config.additive_sigma.value_or(cbo.sigma * config.delta);
    return cbo;
}

DensityMatrix build_state(const ExperimentConfig& config, double param) {
    switch (config.state) {
        case StateKind::horodecki_2x2: return bench::horodecki_2x2(param, config.horodecki_a);
        case StateKind::werner: return bench::werner(param);
        case StateKind::isotropic_3x3: return bench::isotropic_3x3(param);
        case StateKind::horodecki_2x4: return bench::horodecki_2x4(param);
        case StateKind::custom_file: return read_density_file(config.custom_path);
    }
    throw ValidationError("build_state: unreachable");
}

std::optional<double> oracle_for(const ExperimentConfig& config, const DensityMatrix& state,
                                 double param) {
    if (config.state == StateKind::isotropic_3x3) return bench::isotropic_eof(param).value;
    if (state.dim_a == 2 && state.dim_b == 2) return bench::wootters_eof(state).value;
    return std::nullopt;
}

DensityMatrix read_density_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open density file: " + path);
    int na = 0, nb = 0;
    if (!(in >> na >> nb)) throw ValidationError("density file: bad header in " + path);
    if (na < 1 || nb < 1) throw ValidationError("density file: dimensions must be positive");
    const int n = na * nb;
    Matrix rho(n, n);
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im))
                throw ValidationError("density file: expected " + std::to_string(n * n) +
                                      " 're im' lines in " + path);
            rho(row, col) = Complex(re, im);
        }
    return quantum::validate_density(rho, na, nb);
}

void write_density_file(const DensityMatrix& dm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write density file: " + path);
    out << dm.dim_a << " " << dm.dim_b << "\n";
    const int n = dm.dim();
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col)
            out << format_g17(dm.rho(row, col).real()) << " "
                << format_g17(dm.rho(row, col).imag()) << "\n";
}

void emit_trace_json(const RunTrace& trace, const ExperimentConfig& config,
                     const std::string& run_id, double state_param, int m,
                     const std::string& solver, std::uint64_t seed, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["run_id"] = run_id;
    doc["state"] = to_string(config.state);
    doc["state_param"] = state_param;
    doc["M"] = m;
    doc["solver"] = solver;
    doc["seed"] = seed;
    nlohmann::ordered_json cfg;
    cfg["J"] = config.particles;
    cfg["K"] = config.iterations;
    cfg["beta"] = config.beta;
    cfg["lambda"] = config.lambda;
    cfg["dt"] = config.dt;
    cfg["delta"] = config.delta;
    if (config.sigma) cfg["sigma"] = *config.sigma;
    if (config.additive_sigma) cfg["additive_sigma"] = *config.additive_sigma;
    cfg["source"] = config.source_text;
    doc["config"] = cfg;
    nlohmann::ordered_json iters = nlohmann::ordered_json::array();
    for (const TraceRecord& rec : trace.records) {
        iters.push_back({{"k", rec.iter},
                         {"consensus_eof", rec.consensus_eof},
                         {"ensemble_min", rec.ensemble_min},
                         {"ensemble_mean", rec.ensemble_mean}});
    }
    doc["iterations"] = iters;
    doc["final"] = {{"best_eof", trace.best_eof}, {"best_iter", trace.best_iter}};
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write trace file: " + path);
    out << doc.dump(2) << "\n";
}

namespace {

struct Cell {
    double param = 0.0;
    SolverKind solver = SolverKind::hermitian;
    std::uint64_t seed = 0;
    // empty for multispecies (the level set is shared), one entry otherwise
    std::vector<int> m_values;
};

struct StateData {
    DensityMatrix state;
    SpectralDecomposition decomp;
    std::optional<double> oracle;
    std::vector<int> m_set;
};

struct CellOutput {
    std::vector<SweepRow> rows;
    // (trace, m) pairs plus a shared run id for multi-level runs
    std::vector<std::pair<int, RunTrace>> traces;
    std::string run_id;
};

}  // namespace

SweepResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    // states are built once per parameter value
    std::map<double, StateData> states;
    for (double param : config.state_params) {
        if (states.count(param)) continue;
        StateData data{build_state(config, param), {}, {}, {}};
        data.decomp = quantum::spectral_decompose(data.state);
        data.oracle = oracle_for(config, data.state, param);
        data.m_set = resolve_m_set(config.m_set_spec, data.decomp.rank, data.state.dim());
        states.emplace(param, std::move(data));
    }

    std::vector<Cell> cells;
    for (double param : config.state_params) {
        const StateData& data = states.at(param);
        for (SolverKind solver : config.solvers) {
            for (int rep = 0; rep < config.repeats; ++rep) {
                const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(rep);
                if (solver == SolverKind::multispecies) {
                    cells.push_back(Cell{param, solver, seed, {}});
                } else {
                    for (int m : data.m_set) cells.push_back(Cell{param, solver, seed, {m}});
                }
            }
        }
    }

    std::vector<CellOutput> outputs(cells.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= cells.size()) return;
            const Cell& cell = cells[idx];
            const StateData& data = states.at(cell.param);
            CellOutput& out = outputs[idx];
            const std::string solver_name = to_string(cell.solver);
            out.run_id = solver_name + "-p" + format_param(cell.param) + "-s" +
                         std::to_string(cell.seed);

            auto make_row = [&](int m, double eof, double wall) {
                SweepRow row;
                row.state_param = cell.param;
                row.m = m;
                row.solver = solver_name;
                row.seed = cell.seed;
                row.eof = eof;
                row.oracle = data.oracle;
                if (data.oracle) row.abs_error = std::abs(eof - *data.oracle);
                row.wall_time_s = options.zero_timing ? 0.0 : wall;
                return row;
            };

            try {
                const CboConfig cbo = resolve_cbo(config, cell.solver, cell.seed);
                const int na = data.state.dim_a, nb = data.state.dim_b;
                if (cell.solver == SolverKind::multispecies) {
                    const auto t0 = std::chrono::steady_clock::now();
                    auto traces = multispecies::run_multispecies(data.decomp, na, nb, data.m_set,
                                                                 config.particles, cbo);
                    const double wall =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count() /
                        static_cast<double>(traces.size());
                    for (auto& [m, trace] : traces) {
                        out.rows.push_back(make_row(m, trace.best_eof, wall));
                        out.traces.emplace_back(m, std::move(trace));
                    }
                } else {
                    const int m = cell.m_values.front();
                    const auto t0 = std::chrono::steady_clock::now();
                    RunTrace trace;
                    bool have_trace = true;
                    double eof = 0.0;
                    switch (cell.solver) {
                        case SolverKind::hermitian:
                            trace = cbo_hermitian::run_hermitian(data.decomp, na, nb, m,
                                                                 config.particles, cbo);
                            eof = trace.best_eof;
                            break;
                        case SolverKind::hermitian_projection:
                            trace = cbo_hermitian::run_hermitian_projection(
                                data.decomp, na, nb, m, config.particles, cbo);
                            eof = trace.best_eof;
                            break;
                        case SolverKind::unitary:
                            trace = cbo_unitary::run_unitary(data.decomp, na, nb, m,
                                                             config.particles, cbo);
                            eof = trace.best_eof;
                            break;
                        case SolverKind::unitary_projection:
                            trace = cbo_unitary::run_unitary_projection(data.decomp, na, nb, m,
                                                                        config.particles, cbo);
                            eof = trace.best_eof;
                            break;
                        case SolverKind::sa_reference:
                            eof = bench::simulated_annealing_reference(data.decomp, na, nb, m,
                                                                       config.sa, cell.seed)
                                      .value;
                            have_trace = false;
                            break;
                        default: throw ValidationError("unreachable solver");
                    }
                    const double wall =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
                    out.rows.push_back(make_row(m, eof, wall));
                    if (have_trace) out.traces.emplace_back(m, std::move(trace));
                }
            } catch (const std::exception& e) {
                SweepRow row;
                row.state_param = cell.param;
                row.m = cell.m_values.empty() ? 0 : cell.m_values.front();
                row.solver = solver_name;
                row.seed = cell.seed;
                row.failed = true;
                row.error = e.what();
                out.rows.push_back(row);
            }
        }
    };

    const int workers = std::max(1, options.workers);
    if (workers == 1 || cells.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepResult result;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        for (const SweepRow& row : outputs[i].rows) {
            if (row.failed)
                std::cerr << "cell failed (" << row.solver << ", param=" << row.state_param
                          << ", M=" << row.m << ", seed=" << row.seed << "): " << row.error
                          << "\n";
            result.rows.push_back(row);
        }
        if (!options.out_dir.empty()) {
            for (const auto& [m, trace] : outputs[i].traces) {
                const std::string path = options.out_dir + "/trace_" + outputs[i].run_id + "_M" +
                                         std::to_string(m) + ".json";
                emit_trace_json(trace, config, outputs[i].run_id, cells[i].param, m,
                                to_string(cells[i].solver), cells[i].seed, path);
            }
        }
    }
    std::sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.state_param != b.state_param) return a.state_param < b.state_param;
        if (a.m != b.m) return a.m < b.m;
        if (a.solver != b.solver) return a.solver < b.solver;
        return a.seed < b.seed;
    });
    return result;
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write csv file: " + path);
    out << "state_param,M,solver,seed,eof,oracle,abs_error,wall_time_s\n";
    for (const SweepRow& row : result.rows) {
        out << format_g17(row.state_param) << "," << row.m << "," << row.solver << ","
            << row.seed << ",";
        if (!row.failed) out << format_g17(row.eof);
        out << ",";
        if (row.oracle) out << format_g17(*row.oracle);
        out << ",";
        if (row.abs_error) out << format_g17(*row.abs_error);
        out << "," << format_g17(row.wall_time_s) << "\n";
    }
}

SweepResult aggregate(const SweepResult& result, const std::string& how) {
    if (how != "median" && how != "mean")
        throw ValidationError("aggregate: how must be 'median' or 'mean'");
    auto combine = [&](std::vector<double> values) {
        if (how == "mean") {
            double s = 0.0;
            for (double v : values) s += v;
            return s / values.size();
        }
        std::sort(values.begin(), values.end());
        const std::size_t n = values.size();
        return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    };

    std::map<std::tuple<double, int, std::string>, std::vector<const SweepRow*>> groups;
    for (const SweepRow& row : result.rows)
        if (!row.failed) groups[{row.state_param, row.m, row.solver}].push_back(&row);

    SweepResult out;
    for (const auto& [key, rows] : groups) {
        SweepRow agg;
        agg.state_param = std::get<0>(key);
        agg.m = std::get<1>(key);
        agg.solver = std::get<2>(key);
        agg.seed = 0;
        std::vector<double> eofs, walls;
        for (const SweepRow* r : rows) {
            eofs.push_back(r->eof);
            walls.push_back(r->wall_time_s);
        }
        agg.eof = combine(eofs);
        agg.oracle = rows.front()->oracle;
        if (agg.oracle) agg.abs_error = std::abs(agg.eof - *agg.oracle);
        agg.wall_time_s = combine(walls);
        out.rows.push_back(agg);
    }
    return out;
}

}  // namespace eofcbo::experiment
