// Acceptance suite: one line per criterion, [PASS]/[FAIL]/[SKIP], nonzero
// exit when anything fails.  Criterion 8 (multi-hour d=3 vs d=4 study) only
// runs when QPF_ACCEPT_EXTENDED=1.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <vector>

#include "qpf/experiment.hpp"
#include "qpf/verify.hpp"

using namespace qpf;

namespace {

int g_failures = 0;

void report(int idx, bool passed, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %d: %s -- %s\n", passed ? "PASS" : "FAIL", idx, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!passed) ++g_failures;
}

void skip(int idx, const std::string& what, const std::string& why) {
    std::printf("[SKIP] criterion %d: %s -- %s\n", idx, what.c_str(), why.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string temp_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("qpf_accept_" + tag);
    std::filesystem::remove_all(dir);
    return dir.string();
}

// ---- criterion 1: d=3, T=2.5 reaches gate error below 1e-8 -------------------

Pulse criterion1(bool* passed_out) {
    const auto t0 = std::chrono::steady_clock::now();
    const SpinSystem sys = SpinSystem::make(3);
    const TargetGate target = TargetGate::qft(3);
    RunnerConfig cfg;
    cfg.restarts = 10;
    cfg.max_iters = 20000;  // within the allowed 50000 cap
    cfg.refine_factor = 0;
    cfg.lambda_over_dt = 100.0;  // paper range [100, 500]
    cfg.epsilon = 1e-11;
    cfg.fixed_N = 100;
    cfg.target_error = 9e-9;

    const auto res = multi_restart(sys, target, 2.5, cfg.restarts, cfg, 1);
    const double err = res.best.record.final_error;
    const bool passed = err < 1e-8;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "best error %.3e (< 1e-8), seed %llu, %d iterations, %.0f s", err,
                  static_cast<unsigned long long>(res.best.record.seed),
                  res.best.record.iterations, seconds_since(t0));
    report(1, passed, "d=3 T=2.5 N=100 reaches gate error below 1e-8", detail);
    if (passed_out) *passed_out = passed;
    return res.best.pulse;
}

// ---- criterion 2: phase sets ---------------------------------------------------

void criterion2() {
    const double pi = 3.14159265358979323846;
    const auto p3 = phase_set(3);
    bool ok = std::abs(p3.phi0 - pi / 6.0) < 1e-12 &&
              std::abs(p3.phases[0] - pi / 6.0) < 1e-12 &&
              std::abs(p3.phases[1] - 5.0 * pi / 6.0) < 1e-12 &&
              std::abs(p3.phases[2] - 3.0 * pi / 2.0) < 1e-12;
    const auto det_check = verify::check_phase_sets();
    ok = ok && det_check.passed;
    report(2, ok, "phase_set(3) = {pi/6, 5pi/6, 3pi/2} and det closure for d in [2,8]",
           det_check.detail);
}

// ---- criterion 3: operator algebra ---------------------------------------------

void criterion3() {
    const auto algebra = verify::check_operator_algebra();
    const auto props = verify::check_propagators(2025);
    report(3, algebra.passed && props.passed,
           "operator algebra, Casimir, traceless drift, unitary unit-det propagators",
           algebra.detail + "; " + props.detail);
}

// ---- criterion 4: gradient identity ---------------------------------------------

void criterion4() {
    bool ok = true;
    std::string detail;
    for (int d : {2, 3, 4}) {
        const auto res = verify::check_gradient_identity(d, 20, 777 + d);
        ok = ok && res.passed;
        if (!detail.empty()) detail += "; ";
        detail += res.detail;
    }
    report(4, ok, "finite differences match the costate gradient within 1e-4 (20 probes each)",
           detail);
}

// ---- criterion 5: monotone convergence ------------------------------------------

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    const SpinSystem sys = SpinSystem::make(3);
    const TargetGate target = TargetGate::qft(3);
    int violations = 0;
    double worst_step = 0.0;
    for (int run = 0; run < 50; ++run) {
        const Pulse guess =
            random_spline_guess(GuessSpec{100, 10, 10.0, 42000u + run}, 2.5);
        auto cfg = KrotovConfig::with_lambda_ratio(200.0, guess.dt);
        cfg.max_iters = 1500;
        const auto trace = optimize(sys, target, guess, cfg);
        for (std::size_t i = 1; i < trace.error_history.size(); ++i) {
            const double step = trace.error_history[i] - trace.error_history[i - 1];
            worst_step = std::max(worst_step, step);
            if (step > 1e-9) ++violations;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "50 runs, worst increase %.3e, %d violations, %.0f s",
                  worst_step, violations, seconds_since(t0));
    report(5, violations == 0, "error history non-increasing within 1e-9 (50 seeded runs)",
           detail);
}

// ---- criterion 6: threshold protocol with a stub optimizer -----------------------

void criterion6() {
    auto stub = [](double t_star) {
        return [t_star](const SpinSystem&, const TargetGate&, const Pulse& initial,
                        const KrotovConfig&) {
            OptimizationTrace trace;
            const double err = initial.T >= t_star ? 1e-9 : 0.5;
            trace.error_history = {1.0, err};
            trace.final_pulse = initial;
            trace.final_error = err;
            trace.best_error = err;
            trace.iterations = 2;
            trace.stop_reason = StopReason::converged;
            return trace;
        };
    };

    const SpinSystem sys = SpinSystem::make(3);
    const TargetGate target = TargetGate::qft(3);
    RunnerConfig cfg;
    cfg.restarts = 3;
    cfg.fixed_N = 16;
    bool ok = true;
    std::string detail;

    {
        cfg.optimizer = stub(2.0);
        const auto res =
            min_time(sys, target, 1e-5, {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}, cfg, 1, {0.1, 0.02});
        ok = ok && std::abs(res.estimate.T_min - 2.0) <= 0.02 + 1e-9;
        ok = ok && res.estimate.T_fail < res.estimate.T_min;
        ok = ok && res.estimate.T_pass == res.estimate.T_min;
        detail += "on-grid T*=2.0 -> T_min " + std::to_string(res.estimate.T_min);
    }
    {
        cfg.optimizer = stub(1.93);
        const auto res = min_time(sys, target, 1e-5, {1.0, 1.5, 2.0, 2.5}, cfg, 1, {0.1, 0.02});
        ok = ok && res.estimate.T_min >= 1.93 - 1e-9;
        ok = ok && res.estimate.T_min <= 1.93 + 0.02 + 1e-9;
        ok = ok && res.estimate.method == "pft-refined";
        detail += "; off-grid T*=1.93 -> T_min " + std::to_string(res.estimate.T_min);
    }
    report(6, ok, "min_time brackets a stubbed transition to the refinement resolution", detail);
}

// ---- criterion 7: PFT continuation beats fresh restarts ---------------------------

void criterion7(const Pulse& converged_pulse, bool have_pulse) {
    if (!have_pulse) {
        report(7, false, "PFT continuation iteration count", "no converged d=3 pulse available");
        return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const SpinSystem sys = SpinSystem::make(3);
    const TargetGate target = TargetGate::qft(3);
    const double threshold = 1e-5;
    const int cap = 10000;

    auto cfg_for = [&](double dt) {
        auto cfg = KrotovConfig::with_lambda_ratio(100.0, dt);
        cfg.max_iters = cap;
        cfg.epsilon = 1e-11;
        cfg.target_error = threshold * (1.0 - 1e-9);
        return cfg;
    };

    const Pulse continued = pft_continue(converged_pulse, 0.1);
    const auto pft_trace = optimize(sys, target, continued, cfg_for(continued.dt));
    const int pft_iters =
        pft_trace.best_error < threshold ? pft_trace.iterations : cap + 1;

    std::vector<int> fresh;
    for (int i = 0; i < 11; ++i) {
        const Pulse guess =
            random_spline_guess(GuessSpec{100, 10, 10.0, 73000u + i}, continued.T);
        const auto trace = optimize(sys, target, guess, cfg_for(guess.dt));
        fresh.push_back(trace.best_error < threshold ? trace.iterations : cap + 1);
    }
    std::sort(fresh.begin(), fresh.end());
    const int median = fresh[fresh.size() / 2];

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "continued run: %d iterations; fresh median: %d (11 seeds), %.0f s",
                  pft_iters, median, seconds_since(t0));
    report(7, pft_iters < median, "continuation to T=2.4 needs fewer iterations than fresh",
           detail);
}

// ---- criterion 8: extended d=3 vs d=4 closeness -----------------------------------

void criterion8() {
    const char* env = std::getenv("QPF_ACCEPT_EXTENDED");
    if (!env || std::strcmp(env, "1") != 0) {
        skip(8, "T_min(d=3) vs T_min(d=4) within 25%",
             "long-running study; set QPF_ACCEPT_EXTENDED=1 to run");
        return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    RunnerConfig cfg;
    cfg.restarts = 20;
    cfg.max_iters = 10000;
    cfg.lambda_over_dt = 100.0;
    cfg.epsilon = 1e-11;
    cfg.target_error = 1e-5 * (1.0 - 1e-6);
    std::vector<double> grid;
    for (double T = 0.5; T <= 6.01; T += 0.5) grid.push_back(T);

    double t_min[2] = {0.0, 0.0};
    int idx = 0;
    for (int d : {3, 4}) {
        const SpinSystem sys = SpinSystem::make(d);
        const TargetGate target = TargetGate::qft(d);
        const auto res = min_time(sys, target, 1e-5, grid, cfg, 31000 + d, {0.1, 0.02});
        t_min[idx++] = res.estimate.T_min;
    }
    const double rel = std::abs(t_min[1] - t_min[0]) / t_min[0];
    char detail[160];
    std::snprintf(detail, sizeof(detail), "T_min(3) = %.3g, T_min(4) = %.3g, |diff| = %.1f%%, %.0f s",
                  t_min[0], t_min[1], 100.0 * rel, seconds_since(t0));
    report(8, rel < 0.25, "T_min(d=3) vs T_min(d=4) within 25%", detail);
}

// ---- criterion 9: determinism ------------------------------------------------------

void criterion9() {
    Manifest m;
    m.d_list = {2};
    m.T_grid = {0.4, 0.6};
    m.restarts = 2;
    m.max_iters = 300;
    m.N_policy = "16";
    m.seed = 2718;
    m.workers = 2;

    m.out_dir = temp_dir("det_a");
    const auto out_a = run_manifest(m);
    m.out_dir = temp_dir("det_b");
    const auto out_b = run_manifest(m);

    const auto ra = RecordStore::load(out_a.records_csv);
    const auto rb = RecordStore::load(out_b.records_csv);
    bool ok = ra.size() == rb.size() && !ra.empty();
    for (std::size_t i = 0; ok && i < ra.size(); ++i)
        ok = ra[i].d == rb[i].d && ra[i].T == rb[i].T && ra[i].seed == rb[i].seed &&
             ra[i].final_error == rb[i].final_error && ra[i].iterations == rb[i].iterations &&
             ra[i].stop_reason == rb[i].stop_reason;
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%zu records, final errors bit-identical: %s",
                  ra.size(), ok ? "yes" : "no");
    report(9, ok, "manifest re-run reproduces all final errors bit-identically", detail);

    std::filesystem::remove_all(std::filesystem::path(out_a.records_csv).parent_path());
    std::filesystem::remove_all(std::filesystem::path(out_b.records_csv).parent_path());
}

}  // namespace

int main() {
    std::printf("acceptance suite (criterion 8 gated behind QPF_ACCEPT_EXTENDED=1)\n");
    const auto t0 = std::chrono::steady_clock::now();

    bool c1_ok = false;
    const Pulse c1_pulse = criterion1(&c1_ok);
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7(c1_pulse, c1_ok);
    criterion8();
    criterion9();

    std::printf("acceptance: %s (%.0f s total)\n", g_failures == 0 ? "PASS" : "FAIL",
                seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
