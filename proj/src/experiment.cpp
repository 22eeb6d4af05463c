#include "qpf/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qpf/gate_target.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qpf {

namespace {

using nlohmann::json;

std::string mode_label(const CostateMode& mode, int d) {
    return mode.phase_locked ? phase_label(mode.phi, d) : "invariant";
}

std::string sanitize(std::string s) {
    for (auto& c : s)
        if (c == '/' || c == ' ') c = '-';
    return s;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Phase-invariant gate error reported for a finished run.  In locked mode the
// optimizer descends on the phase-sensitive functional, so the gate error of
// the final pulse is re-simulated.  Injected optimizers report their own
// errors verbatim; their landscapes are synthetic.
double reported_error(const SpinSystem& system, const TargetGate& target,
                      const RunnerConfig& config, const OptimizationTrace& trace) {
    if (!config.mode.phase_locked || config.optimizer) return trace.best_error;
    const ComplexMatrix U_T = forward_trajectory(system, trace.final_pulse).ops.back();
    return gate_error(target, U_T);
}

struct SingleRunSpec {
    double T = 0.0;
    int restart_index = 0;
    std::uint64_t seed = 0;
    int max_iters = 0;
    const Pulse* seeded_guess = nullptr;
};

RestartOutcome run_single(const SpinSystem& system, const TargetGate& target,
                          const RunnerConfig& config, const SingleRunSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    RestartOutcome out;
    out.record.d = system.d;
    out.record.T = spec.T;
    out.record.phase_label = mode_label(config.mode, target.d);
    out.record.restart_index = spec.restart_index;
    out.record.seed = spec.seed;
    const int N = config.slices_for(system.d);
    try {
        Pulse guess = spec.seeded_guess
                          ? *spec.seeded_guess
                          : random_spline_guess(
                                GuessSpec{N, config.knot_stride, config.amplitude_bound,
                                          spec.seed},
                                spec.T);
        KrotovConfig kcfg;
        kcfg.lambda = config.lambda_over_dt * guess.dt;
        kcfg.epsilon = config.epsilon;
        kcfg.max_iters = spec.max_iters;
        kcfg.mode = config.mode;
        kcfg.target_error = config.target_error;
        const OptimizationTrace trace =
            config.optimizer ? config.optimizer(system, target, guess, kcfg)
                             : optimize(system, target, guess, kcfg);
        out.pulse = trace.final_pulse;
        out.record.final_error = reported_error(system, target, config, trace);
        out.record.iterations = std::max(1, trace.iterations);
        out.record.stop_reason = to_string(trace.stop_reason);
    } catch (const std::exception&) {
        // per-run failures are recorded, never fatal (and must not escape an
        // OpenMP worker)
        out.pulse = Pulse::zero(N, spec.T);
        out.record.final_error = 1.0;
        out.record.iterations = 1;
        out.record.stop_reason = "failed";
    }
    out.record.wallclock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

bool better_record(const SweepRecord& a, const SweepRecord& b) {
    if (a.final_error != b.final_error) return a.final_error < b.final_error;
    return a.seed < b.seed;
}

std::string csv_field(const std::string& line, std::size_t& pos) {
    const auto next = line.find(',', pos);
    std::string field = line.substr(pos, next == std::string::npos ? next : next - pos);
    pos = next == std::string::npos ? line.size() : next + 1;
    return field;
}

}  // namespace

int RunnerConfig::slices_for(int d) const {
    if (fixed_N > 0) return fixed_N;
    return d <= 5 ? 100 : 200;
}

MultiRestartResult multi_restart(const SpinSystem& system, const TargetGate& target, double T,
                                 int restarts, const RunnerConfig& config, std::uint64_t seed0,
                                 const Pulse* seeded_guess) {
    if (restarts < 1) throw InvalidSpec("multi_restart: need at least one restart");

    std::vector<RestartOutcome> outcomes(restarts);
    const int workers = std::max(1, config.workers);

    auto run_index = [&](int i) {
        SingleRunSpec spec;
        spec.T = T;
        spec.restart_index = i;
        spec.seed = seed0 + static_cast<std::uint64_t>(i);
        spec.max_iters = config.max_iters;
        spec.seeded_guess = (i == 0) ? seeded_guess : nullptr;
        outcomes[i] = run_single(system, target, config, spec);
    };

    if (workers > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (int i = 0; i < restarts; ++i) run_index(i);
#else
        for (int i = 0; i < restarts; ++i) run_index(i);
#endif
    } else {
        for (int i = 0; i < restarts; ++i) run_index(i);
    }

    int best_idx = -1;
    int failures = 0;
    for (int i = 0; i < restarts; ++i) {
        if (outcomes[i].record.stop_reason == "failed") ++failures;
        if (best_idx < 0 || better_record(outcomes[i].record, outcomes[best_idx].record))
            best_idx = i;
    }
    if (failures == restarts)
        throw Error("multi_restart: every restart failed");

    MultiRestartResult result;
    result.best = outcomes[best_idx];
    result.all = outcomes;

    // refine the winner with the extended budget
    if (config.refine_factor > 0 && result.best.record.stop_reason != "failed") {
        SingleRunSpec spec;
        spec.T = T;
        spec.restart_index = result.best.record.restart_index;
        spec.seed = result.best.record.seed;
        spec.max_iters = config.max_iters * config.refine_factor;
        spec.seeded_guess = &result.best.pulse;
        RestartOutcome refined = run_single(system, target, config, spec);
        if (refined.record.stop_reason != "failed" &&
            refined.record.final_error <= result.best.record.final_error) {
            refined.record.iterations += result.best.record.iterations;
            refined.record.wallclock_seconds += result.best.record.wallclock_seconds;
            result.best = std::move(refined);
        }
    }
    return result;
}

std::vector<CellResult> error_vs_duration(const SpinSystem& system, const TargetGate& target,
                                          const std::vector<double>& T_grid,
                                          const RunnerConfig& config, std::uint64_t seed0,
                                          bool pft_seed) {
    if (T_grid.empty()) throw InvalidSpec("error_vs_duration: empty duration grid");
    for (std::size_t i = 1; i < T_grid.size(); ++i)
        if (!(T_grid[i] > T_grid[i - 1]))
            throw InvalidSpec("error_vs_duration: grid must be ascending");

    std::vector<CellResult> cells(T_grid.size());
    std::optional<Pulse> carry;
    double carry_T = 0.0;
    for (int gi = static_cast<int>(T_grid.size()) - 1; gi >= 0; --gi) {
        const double T = T_grid[gi];
        Pulse continued;
        const Pulse* seeded = nullptr;
        if (pft_seed && carry && carry_T > T) {
            continued = pft_continue(*carry, carry_T - T);
            seeded = &continued;
        }
        CellResult cell;
        cell.T = T;
        const std::uint64_t cell_seed = seed0 + 100000ull * static_cast<std::uint64_t>(gi);
        try {
            cell.runs = multi_restart(system, target, T, config.restarts, config, cell_seed,
                                      seeded);
            carry = cell.runs.best.pulse;
            carry_T = T;
        } catch (const Error&) {
            // all restarts failed: record the point at error 1
            RestartOutcome failed;
            failed.record.d = system.d;
            failed.record.T = T;
            failed.record.phase_label = mode_label(config.mode, target.d);
            failed.record.seed = cell_seed;
            failed.record.stop_reason = "failed";
            failed.pulse = Pulse::zero(config.slices_for(system.d), T);
            cell.runs.best = failed;
            cell.runs.all = {failed};
        }
        cells[gi] = std::move(cell);
    }
    return cells;
}

MinTimeResult min_time(const SpinSystem& system, const TargetGate& target, double threshold,
                       const std::vector<double>& T_grid, const RunnerConfig& config,
                       std::uint64_t seed0, const std::vector<double>& refine_steps) {
    if (T_grid.empty()) throw InvalidSpec("min_time: empty duration grid");
    for (std::size_t i = 1; i < T_grid.size(); ++i)
        if (!(T_grid[i] > T_grid[i - 1])) throw InvalidSpec("min_time: grid must be ascending");
    if (!(threshold > 0.0)) throw InvalidSpec("min_time: threshold must be positive");

    // a refinement run continues the neighbouring solution and may stop as
    // soon as it is safely below threshold
    RunnerConfig refine_cfg = config;
    refine_cfg.max_iters = config.max_iters * std::max(1, config.refine_factor);
    refine_cfg.refine_factor = 0;
    refine_cfg.target_error = threshold * (1.0 - 1e-6);

    MinTimeResult result;
    double t_pass = -1.0, t_fail = 0.0;
    Pulse pass_pulse;
    std::string method = "grid";

    // coarse scan, largest duration first, carrying the best pulse down
    std::optional<Pulse> carry;
    double carry_T = 0.0;
    for (int gi = static_cast<int>(T_grid.size()) - 1; gi >= 0; --gi) {
        const double T = T_grid[gi];
        Pulse continued;
        const Pulse* seeded = nullptr;
        if (carry && carry_T > T) {
            continued = pft_continue(*carry, carry_T - T);
            seeded = &continued;
        }
        CellResult cell;
        cell.T = T;
        cell.runs = multi_restart(system, target, T, config.restarts, config,
                                  seed0 + 100000ull * static_cast<std::uint64_t>(gi), seeded);
        carry = cell.runs.best.pulse;
        carry_T = T;
        const double err = cell.runs.best.record.final_error;
        const Pulse best_pulse = cell.runs.best.pulse;
        result.cells.push_back(std::move(cell));
        if (err < threshold) {
            t_pass = T;
            pass_pulse = best_pulse;
        } else {
            if (t_pass < 0.0)
                throw NoPassingPoint(
                    "min_time: largest grid duration stays above the error threshold");
            t_fail = T;
            break;
        }
    }

    // refinement: step down from the smallest passing duration, reusing the
    // passing pulse as a compressed initial guess, until a step fails
    std::uint64_t refine_seed = seed0 + 900000000ull;
    for (double deltaT : refine_steps) {
        if (!(deltaT > 0.0)) throw InvalidSpec("min_time: refinement steps must be positive");
        while (true) {
            const double T_next = t_pass - deltaT;
            if (T_next <= 1e-9) break;
            Pulse continued = pft_continue(pass_pulse, t_pass - T_next);
            CellResult cell;
            cell.T = T_next;
            cell.runs = multi_restart(system, target, T_next, 1, refine_cfg, refine_seed++,
                                      &continued);
            const double err = cell.runs.best.record.final_error;
            const Pulse best_pulse = cell.runs.best.pulse;
            result.cells.push_back(std::move(cell));
            if (err < threshold) {
                t_pass = T_next;
                pass_pulse = best_pulse;
                method = "pft-refined";
                if (t_fail >= t_pass) t_fail = 0.0;  // earlier failure superseded
            } else {
                t_fail = T_next;
                break;
            }
        }
    }

    std::sort(result.cells.begin(), result.cells.end(),
              [](const CellResult& a, const CellResult& b) { return a.T < b.T; });

    result.estimate.d = system.d;
    result.estimate.phase_label = mode_label(config.mode, target.d);
    result.estimate.threshold = threshold;
    result.estimate.T_min = t_pass;
    result.estimate.T_fail = t_fail;
    result.estimate.T_pass = t_pass;
    result.estimate.method = method;
    return result;
}

std::vector<MinTimeStudyRow> min_time_vs_d(const std::vector<int>& d_list, double threshold,
                                           const std::vector<double>& T_grid,
                                           const RunnerConfig& config, std::uint64_t seed0,
                                           int per_phase_max_d,
                                           std::vector<MinTimeResult>* details) {
    std::vector<MinTimeStudyRow> rows;
    for (int d : d_list) {
        const SpinSystem system = SpinSystem::make(d);
        const TargetGate target = TargetGate::qft(d);
        const std::string parity = (d % 2 == 0) ? "even" : "odd";
        const std::uint64_t d_seed = seed0 + 1000003ull * static_cast<std::uint64_t>(d);

        std::vector<CostateMode> modes = {CostateMode::invariant()};
        if (d <= per_phase_max_d)
            for (double phi : target.phases) modes.push_back(CostateMode::locked(phi));

        for (std::size_t mi = 0; mi < modes.size(); ++mi) {
            RunnerConfig cfg = config;
            cfg.mode = modes[mi];
            try {
                MinTimeResult res = min_time(system, target, threshold, T_grid, cfg,
                                             d_seed + 7919ull * mi);
                rows.push_back(MinTimeStudyRow{res.estimate, parity});
                if (details) details->push_back(std::move(res));
            } catch (const Error&) {
                MinTimeEstimate failed;
                failed.d = d;
                failed.phase_label = mode_label(modes[mi], d);
                failed.threshold = threshold;
                failed.method = "failed";
                rows.push_back(MinTimeStudyRow{failed, parity});
            }
        }
    }
    return rows;
}

// --- persistence -------------------------------------------------------------

const char* kRecordsCsvHeader =
    "d,T,phase,restart,seed,final_error,iterations,stop_reason,wallclock_s,archive";

std::string record_to_csv(const SweepRecord& r) {
    std::ostringstream out;
    out << r.d << ',' << fmt_double(r.T) << ',' << r.phase_label << ',' << r.restart_index
        << ',' << r.seed << ',' << fmt_double(r.final_error) << ',' << r.iterations << ','
        << r.stop_reason << ',' << fmt_double(r.wallclock_seconds) << ','
        << r.pulse_archive_path;
    return out.str();
}

SweepRecord record_from_csv(const std::string& line) {
    std::size_t pos = 0;
    SweepRecord r;
    try {
        r.d = std::stoi(csv_field(line, pos));
        r.T = std::stod(csv_field(line, pos));
        r.phase_label = csv_field(line, pos);
        r.restart_index = std::stoi(csv_field(line, pos));
        r.seed = std::stoull(csv_field(line, pos));
        r.final_error = std::stod(csv_field(line, pos));
        r.iterations = std::stoi(csv_field(line, pos));
        r.stop_reason = csv_field(line, pos);
        r.wallclock_seconds = std::stod(csv_field(line, pos));
        r.pulse_archive_path = csv_field(line, pos);
    } catch (const std::exception& e) {
        throw CorruptArchive(std::string("records csv: malformed line: ") + e.what());
    }
    return r;
}

RecordStore::RecordStore(const std::string& out_dir) : dir_(out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_))
        throw StorageUnavailable("RecordStore: cannot create " + dir_);
    if (!std::filesystem::exists(records_path())) {
        std::ofstream out(records_path());
        if (!out) throw StorageUnavailable("RecordStore: cannot create records file");
        out << kRecordsCsvHeader << '\n';
    }
}

std::string RecordStore::records_path() const { return dir_ + "/records.csv"; }

void RecordStore::append(const SweepRecord& record) {
    std::ofstream out(records_path(), std::ios::app);
    if (!out) throw StorageUnavailable("RecordStore: cannot append to records file");
    out << record_to_csv(record) << '\n';
}

void RecordStore::append_with_archive(SweepRecord record, const Pulse& pulse,
                                      const SpinSystem& system) {
    std::ostringstream name;
    name << "pulse_d" << record.d << "_" << sanitize(record.phase_label) << "_T"
         << fmt_double(record.T) << "_r" << record.restart_index << "_s" << record.seed
         << ".json";
    const std::string path = dir_ + "/" + name.str();

    PulseMetadata meta;
    meta.d = system.d;
    meta.spin = system.spin;
    meta.q = system.q;
    meta.detuning = system.detuning;
    if (record.phase_label != "invariant") {
        meta.phase_label = record.phase_label;
    } else if (record.final_error < 0.5) {
        // post-hoc attribution of a converged phase-invariant run
        try {
            const TargetGate target = TargetGate::qft(system.d);
            const ComplexMatrix U_T = forward_trajectory(system, pulse).ops.back();
            meta.phase_label = phase_label(classify_phase(target, U_T).phi, system.d);
        } catch (const Error&) {
            // ambiguous or unclassifiable: leave the label empty
        }
    }
    meta.final_error = record.final_error;
    meta.seed = record.seed;
    save_pulse(pulse, meta, path);

    record.pulse_archive_path = path;
    append(record);
}

std::vector<SweepRecord> RecordStore::load(const std::string& records_csv_path) {
    std::ifstream in(records_csv_path);
    if (!in) throw StorageUnavailable("RecordStore: cannot open " + records_csv_path);
    std::vector<SweepRecord> records;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line == kRecordsCsvHeader) continue;
        }
        records.push_back(record_from_csv(line));
    }
    return records;
}

std::vector<SweepRecord> query(const std::vector<SweepRecord>& records,
                               const RecordFilter& filter) {
    std::vector<SweepRecord> out;
    for (const auto& r : records) {
        if (filter.d && r.d != *filter.d) continue;
        if (filter.T_range && (r.T < filter.T_range->first || r.T > filter.T_range->second))
            continue;
        if (filter.phase_label && r.phase_label != *filter.phase_label) continue;
        if (filter.error_range &&
            (r.final_error < filter.error_range->first ||
             r.final_error > filter.error_range->second))
            continue;
        out.push_back(r);
    }
    return out;
}

// --- manifest ----------------------------------------------------------------

Manifest parse_manifest(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidSpec(std::string("manifest: invalid JSON: ") + e.what());
    }

    static const std::vector<std::string> known = {
        "d_list", "T_grid", "phase_mode", "restarts", "max_iters", "lambda_over_dt",
        "epsilon", "N_policy", "amplitude_bound", "seed", "workers", "out_dir",
        "task", "threshold", "refine_steps", "pft_seed", "target_error"};
    for (const auto& item : j.items())
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw InvalidSpec("manifest: unknown key '" + item.key() + "'");

    Manifest m;
    try {
        m.d_list = j.at("d_list").get<std::vector<int>>();
        m.T_grid = j.at("T_grid").get<std::vector<double>>();
        if (j.contains("phase_mode")) m.phase_mode = j["phase_mode"].get<std::string>();
        if (j.contains("restarts")) m.restarts = j["restarts"].get<int>();
        if (j.contains("max_iters")) m.max_iters = j["max_iters"].get<int>();
        if (j.contains("lambda_over_dt")) m.lambda_over_dt = j["lambda_over_dt"].get<double>();
        if (j.contains("epsilon")) m.epsilon = j["epsilon"].get<double>();
        if (j.contains("N_policy")) {
            if (j["N_policy"].is_number_integer())
                m.N_policy = std::to_string(j["N_policy"].get<int>());
            else
                m.N_policy = j["N_policy"].get<std::string>();
        }
        if (j.contains("amplitude_bound")) m.amplitude_bound = j["amplitude_bound"].get<double>();
        if (j.contains("seed")) m.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("workers")) m.workers = j["workers"].get<int>();
        if (j.contains("out_dir")) m.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("task")) m.task = j["task"].get<std::string>();
        if (j.contains("threshold")) m.threshold = j["threshold"].get<double>();
        if (j.contains("refine_steps"))
            m.refine_steps = j["refine_steps"].get<std::vector<double>>();
        if (j.contains("pft_seed")) m.pft_seed = j["pft_seed"].get<bool>();
        if (j.contains("target_error")) m.target_error = j["target_error"].get<double>();
    } catch (const json::exception& e) {
        throw InvalidSpec(std::string("manifest: malformed field: ") + e.what());
    }

    if (m.d_list.empty()) throw InvalidSpec("manifest: d_list must be nonempty");
    for (int d : m.d_list)
        if (d < 2 || d > 8) throw InvalidSpec("manifest: d outside [2, 8]");
    if (m.task != "error-curve" && m.task != "min-time")
        throw InvalidSpec("manifest: task must be error-curve or min-time");
    if (m.N_policy != "auto") {
        const int n = std::atoi(m.N_policy.c_str());
        if (n < 1) throw InvalidSpec("manifest: N_policy must be 'auto' or a positive integer");
    }
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StorageUnavailable("load_manifest: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

namespace {

RunnerConfig config_from_manifest(const Manifest& m) {
    RunnerConfig cfg;
    cfg.restarts = m.restarts;
    cfg.max_iters = m.max_iters;
    cfg.lambda_over_dt = m.lambda_over_dt;
    cfg.epsilon = m.epsilon;
    cfg.amplitude_bound = m.amplitude_bound;
    cfg.workers = m.workers;
    cfg.target_error = m.target_error;
    if (m.N_policy != "auto") cfg.fixed_N = std::atoi(m.N_policy.c_str());
    return cfg;
}

std::vector<CostateMode> modes_from_manifest(const Manifest& m, const TargetGate& target) {
    if (m.phase_mode == "invariant") return {CostateMode::invariant()};
    if (m.phase_mode == "per-phase") {
        std::vector<CostateMode> modes;
        for (double phi : target.phases) modes.push_back(CostateMode::locked(phi));
        return modes;
    }
    if (m.phase_mode.rfind("locked:", 0) == 0) {
        const int k = std::atoi(m.phase_mode.c_str() + 7);
        if (k < 0 || k >= target.d)
            throw InvalidSpec("manifest: locked phase index outside [0, d)");
        return {CostateMode::locked(target.phases[k])};
    }
    throw InvalidSpec("manifest: phase_mode must be invariant, per-phase or locked:<k>");
}

void persist_cell(RecordStore& store, const SpinSystem& system, const CellResult& cell) {
    for (const auto& outcome : cell.runs.all)
        store.append_with_archive(outcome.record, outcome.pulse, system);
    // the refined winner is stored with restart index -1 so per-cell bests are
    // easy to query from the ledger
    SweepRecord best = cell.runs.best.record;
    best.restart_index = -1;
    store.append_with_archive(best, cell.runs.best.pulse, system);
}

}  // namespace

ManifestOutputs run_manifest(const Manifest& m) {
    RecordStore store(m.out_dir);
    ManifestOutputs outputs;
    outputs.records_csv = store.records_path();

    const RunnerConfig base_cfg = config_from_manifest(m);

    std::vector<std::string> min_time_lines;
    for (int d : m.d_list) {
        const SpinSystem system = SpinSystem::make(d);
        const TargetGate target = TargetGate::qft(d);
        const auto modes = modes_from_manifest(m, target);

        for (std::size_t mi = 0; mi < modes.size(); ++mi) {
            RunnerConfig cfg = base_cfg;
            cfg.mode = modes[mi];
            const std::uint64_t cell_seed =
                m.seed + 1000003ull * static_cast<std::uint64_t>(d) + 7919ull * mi;

            if (m.task == "error-curve") {
                const auto cells =
                    error_vs_duration(system, target, m.T_grid, cfg, cell_seed, m.pft_seed);
                for (const auto& cell : cells) persist_cell(store, system, cell);

                const std::string fig_path = store.dir() + "/curve_d" + std::to_string(d) +
                                             "_" + sanitize(mode_label(cfg.mode, d)) + ".csv";
                std::ofstream fig(fig_path);
                if (!fig) throw StorageUnavailable("run_manifest: cannot write " + fig_path);
                fig << "T,best_error\n";
                for (const auto& cell : cells)
                    fig << fmt_double(cell.T) << ','
                        << fmt_double(cell.runs.best.record.final_error) << '\n';
                outputs.figure_csvs.push_back(fig_path);
            } else {
                MinTimeResult res =
                    min_time(system, target, m.threshold, m.T_grid, cfg, cell_seed,
                             m.refine_steps);
                for (const auto& cell : res.cells) persist_cell(store, system, cell);
                std::ostringstream line;
                line << d << ',' << (d % 2 == 0 ? "even" : "odd") << ','
                     << res.estimate.phase_label << ',' << fmt_double(res.estimate.threshold)
                     << ',' << fmt_double(res.estimate.T_min) << ','
                     << fmt_double(res.estimate.T_fail) << ','
                     << fmt_double(res.estimate.T_pass) << ',' << res.estimate.method;
                min_time_lines.push_back(line.str());
            }
        }
    }

    if (!min_time_lines.empty()) {
        const std::string path = store.dir() + "/min_time.csv";
        std::ofstream out(path);
        if (!out) throw StorageUnavailable("run_manifest: cannot write " + path);
        out << "d,parity,phase,threshold,T_min,T_fail,T_pass,method\n";
        for (const auto& line : min_time_lines) out << line << '\n';
        outputs.figure_csvs.push_back(path);
    }
    return outputs;
}

}  // namespace qpf
