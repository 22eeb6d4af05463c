#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpf/krotov.hpp"
#include "qpf/pulse_toolkit.hpp"

namespace qpf {

// Bookkeeping for one (d, T, phase, restart) optimization run.
struct SweepRecord {
    int d = 0;
    double T = 0.0;
    std::string phase_label = "invariant";
    int restart_index = 0;
    std::uint64_t seed = 0;
    double final_error = 1.0;  // phase-invariant gate error of the reported pulse
    int iterations = 1;
    std::string stop_reason;
    double wallclock_seconds = 0.0;
    std::string pulse_archive_path;
};

struct MinTimeEstimate {
    int d = 0;
    std::string phase_label = "invariant";
    double threshold = 1e-5;
    double T_min = 0.0;
    double T_fail = 0.0;  // largest tested duration that failed (0 when none did)
    double T_pass = 0.0;  // passing duration backing T_min
    std::string method = "grid";  // grid | pft-refined
};

// Injection point for the optimization backend; tests substitute stubs with
// known error landscapes to exercise the protocol logic alone.
using OptimizeFn = std::function<OptimizationTrace(
    const SpinSystem&, const TargetGate&, const Pulse&, const KrotovConfig&)>;

struct RunnerConfig {
    int restarts = 30;            // "several tens"
    int max_iters = 10000;
    int refine_factor = 10;       // refinement budget multiplier for the best restart
    double lambda_over_dt = 200.0;
    double epsilon = 1e-10;
    double amplitude_bound = 10.0;
    int knot_stride = 10;
    CostateMode mode = CostateMode::invariant();
    double target_error = 0.0;    // early per-run stop (0 disables)
    int workers = 1;              // 1: serial reference path; >1: OpenMP
    int fixed_N = 0;              // >0 overrides the N policy
    OptimizeFn optimizer;         // empty: krotov optimize

    // default policy: N = 100 for d <= 5, 200 above
    int slices_for(int d) const;
};

struct RestartOutcome {
    SweepRecord record;
    Pulse pulse;
};

struct MultiRestartResult {
    RestartOutcome best;                // refined winner
    std::vector<RestartOutcome> all;    // the R raw restarts
};

// R restarts with seeds seed0, seed0+1, ...; the minimum-error run is refined
// with a refine_factor-times iteration budget.  Per-run failures are recorded,
// not fatal, unless every restart fails.  seeded_guess, when given, replaces
// the random guess of restart 0 (PFT chaining).
MultiRestartResult multi_restart(const SpinSystem& system, const TargetGate& target, double T,
                                 int restarts, const RunnerConfig& config, std::uint64_t seed0,
                                 const Pulse* seeded_guess = nullptr);

struct CellResult {
    double T = 0.0;
    MultiRestartResult runs;
};

// One multi_restart per grid duration (reported in ascending T).  With
// pft_seed the grid is processed right to left and each cell's restart 0 is
// seeded with the time-compressed best pulse of its right neighbour.
std::vector<CellResult> error_vs_duration(const SpinSystem& system, const TargetGate& target,
                                          const std::vector<double>& T_grid,
                                          const RunnerConfig& config, std::uint64_t seed0,
                                          bool pft_seed = true);

struct MinTimeResult {
    MinTimeEstimate estimate;
    std::vector<CellResult> cells;  // every duration evaluated, ascending
};

// Coarse descending scan over the grid, then PFT refinement stepping down by
// each refine_steps entry in turn.  Throws NoPassingPoint when even the
// largest grid duration stays at or above the threshold.
MinTimeResult min_time(const SpinSystem& system, const TargetGate& target, double threshold,
                       const std::vector<double>& T_grid, const RunnerConfig& config,
                       std::uint64_t seed0, const std::vector<double>& refine_steps = {0.1, 0.02});

struct MinTimeStudyRow {
    MinTimeEstimate estimate;
    std::string parity;  // "odd" | "even" (of d)
};

// Minimum time per d in phase-invariant mode, plus per-phase estimates for
// d <= per_phase_max_d (the per-phase study gets expensive quickly above 4).
std::vector<MinTimeStudyRow> min_time_vs_d(const std::vector<int>& d_list, double threshold,
                                           const std::vector<double>& T_grid,
                                           const RunnerConfig& config, std::uint64_t seed0,
                                           int per_phase_max_d = 4,
                                           std::vector<MinTimeResult>* details = nullptr);

// --- persistence ------------------------------------------------------------

extern const char* kRecordsCsvHeader;

std::string record_to_csv(const SweepRecord& record);
SweepRecord record_from_csv(const std::string& line);

// Append-only CSV store plus per-run pulse archives under out_dir.
class RecordStore {
public:
    explicit RecordStore(const std::string& out_dir);

    const std::string& dir() const { return dir_; }
    std::string records_path() const;

    void append(const SweepRecord& record);
    // writes the archive, stamps record.pulse_archive_path, then appends
    void append_with_archive(SweepRecord record, const Pulse& pulse, const SpinSystem& system);

    static std::vector<SweepRecord> load(const std::string& records_csv_path);

private:
    std::string dir_;
};

struct RecordFilter {
    std::optional<int> d;
    std::optional<std::pair<double, double>> T_range;       // inclusive
    std::optional<std::string> phase_label;
    std::optional<std::pair<double, double>> error_range;   // inclusive
};

std::vector<SweepRecord> query(const std::vector<SweepRecord>& records,
                               const RecordFilter& filter);

// --- manifest-driven execution ----------------------------------------------

struct Manifest {
    std::vector<int> d_list;
    std::vector<double> T_grid;
    std::string phase_mode = "invariant";  // invariant | per-phase | locked:<k>
    int restarts = 30;
    int max_iters = 10000;
    double lambda_over_dt = 200.0;
    double epsilon = 1e-10;
    std::string N_policy = "auto";  // "auto" or a positive integer rendered as string
    double amplitude_bound = 10.0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string out_dir = "qpf-out";
    // optional extras
    std::string task = "error-curve";  // error-curve | min-time
    double threshold = 1e-5;
    std::vector<double> refine_steps = {0.1, 0.02};
    bool pft_seed = true;
    double target_error = 0.0;
};

Manifest parse_manifest(const std::string& json_text);
Manifest load_manifest(const std::string& path);

struct ManifestOutputs {
    std::string records_csv;
    std::vector<std::string> figure_csvs;
};

ManifestOutputs run_manifest(const Manifest& manifest);

}  // namespace qpf
