// qpf: shaped RF pulse synthesis for the d-level QFT on a quadrupole nucleus.
//
// Subcommands: optimize, sweep, min-time, phases, continue, export-plot, verify.
// Exit codes: 0 success, 1 user error (flags/files), 2 runtime failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>

#include "qpf/experiment.hpp"
#include "qpf/plot.hpp"
#include "qpf/verify.hpp"

using namespace qpf;

namespace {

std::string out_root() {
    const char* env = std::getenv("QPF_OUT_DIR");
    return env && *env ? env : ".";
}

std::string under_out_root(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    return out_root() + "/" + path;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0)
            throw InvalidSpec("grid must be start:stop:step with step > 0");
        for (double t = start; t <= stop + 1e-9; t += step) grid.push_back(t);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
    }
    if (grid.empty()) throw InvalidSpec("grid is empty");
    return grid;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    return values;
}

CostateMode mode_from_flag(const std::string& phase, const TargetGate& target) {
    if (phase == "auto") return CostateMode::invariant();
    char* end = nullptr;
    const long k = std::strtol(phase.c_str(), &end, 10);
    if (end == phase.c_str() || *end != '\0' || k < 0 || k >= target.d)
        throw InvalidSpec("--phase must be 'auto' or an index in [0, d)");
    return CostateMode::locked(target.phases[static_cast<std::size_t>(k)]);
}

void print_phase_classification(const SpinSystem& sys, const TargetGate& target,
                                const Pulse& pulse) {
    const ComplexMatrix U_T = forward_trajectory(sys, pulse).ops.back();
    if (gate_error(target, U_T) >= 0.5) {
        std::printf("phase classification: unclassified (gate error too large)\n");
        return;
    }
    try {
        const auto cls = classify_phase(target, U_T);
        std::printf("phase classification: %s (%.12g rad), residual %.3e rad\n",
                    phase_label(cls.phi, target.d).c_str(), cls.phi, cls.residual);
    } catch (const AmbiguousPhase&) {
        std::printf("phase classification: ambiguous\n");
    }
}

int guarded(const std::function<int()>& action) {
    try {
        return action();
    } catch (const UnsupportedDimension& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidDuration& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const PhaseNotAdmissible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CorruptArchive& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const VersionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-optimal QFT pulse synthesis for quadrupole-nucleus qudits"};
    app.require_subcommand(1);
    std::function<int()> action;

    // ---- optimize -------------------------------------------------------------
    auto* opt = app.add_subcommand("optimize", "multi-restart pulse optimization at fixed T");
    static struct {
        int d = 3;
        double T = 2.5;
        int N = 0;
        double lambda_dt = 200.0;
        int restarts = 10;
        std::uint64_t seed = 0;
        std::string phase = "auto";
        std::string out;
        int max_iters = 10000;
        double epsilon = 1e-10;
        double bound = 10.0;
        int stride = 10;
        int workers = 1;
        int refine_factor = 10;
        double target_error = 0.0;
    } o;
    opt->add_option("--d", o.d, "level count (2..8)")->required();
    opt->add_option("--T", o.T, "pulse duration in units 1/q")->required();
    opt->add_option("--N", o.N, "time slices (0: policy default)");
    opt->add_option("--lambda-dt", o.lambda_dt, "penalty weight in multiples of dt");
    opt->add_option("--restarts", o.restarts, "independent random restarts");
    opt->add_option("--seed", o.seed, "base seed (restart i uses seed+i)");
    opt->add_option("--phase", o.phase, "'auto' (invariant + classify) or phase index k");
    opt->add_option("--out", o.out, "pulse archive output path");
    opt->add_option("--max-iters", o.max_iters, "iteration cap per restart");
    opt->add_option("--epsilon", o.epsilon, "stop on improvement below this");
    opt->add_option("--bound", o.bound, "guess knot amplitude bound (units q)");
    opt->add_option("--stride", o.stride, "guess knot stride");
    opt->add_option("--workers", o.workers, "parallel restart workers");
    opt->add_option("--refine-factor", o.refine_factor, "refinement budget multiplier");
    opt->add_option("--target-error", o.target_error, "early stop below this error (0: off)");
    opt->callback([&]() {
        action = []() {
            const SpinSystem sys = SpinSystem::make(o.d);
            const TargetGate target = TargetGate::qft(o.d);
            RunnerConfig cfg;
            cfg.restarts = o.restarts;
            cfg.max_iters = o.max_iters;
            cfg.refine_factor = o.refine_factor;
            cfg.lambda_over_dt = o.lambda_dt;
            cfg.epsilon = o.epsilon;
            cfg.amplitude_bound = o.bound;
            cfg.knot_stride = o.stride;
            cfg.workers = o.workers;
            cfg.fixed_N = o.N;
            cfg.target_error = o.target_error;
            cfg.mode = mode_from_flag(o.phase, target);

            const int N = cfg.slices_for(o.d);
            std::printf("d = %d, T = %.12g (1/q), N = %d, lambda = %.12g dt, restarts = %d\n",
                        o.d, o.T, N, o.lambda_dt, o.restarts);
            if (cfg.mode.phase_locked)
                std::printf("phase mode: locked at %s (%.12g rad)\n",
                            phase_label(cfg.mode.phi, o.d).c_str(), cfg.mode.phi);
            else
                std::printf("phase mode: invariant\n");

            const auto res = multi_restart(sys, target, o.T, o.restarts, cfg, o.seed);
            const auto& best = res.best.record;
            std::printf("best restart: index %d, seed %llu, iterations %d, stop %s\n",
                        best.restart_index, static_cast<unsigned long long>(best.seed),
                        best.iterations, best.stop_reason.c_str());
            std::printf("final gate error = %.12e\n", best.final_error);
            if (!cfg.mode.phase_locked)
                print_phase_classification(sys, target, res.best.pulse);
            std::printf("wallclock: %.3f s\n", best.wallclock_seconds);

            if (!o.out.empty()) {
                PulseMetadata meta;
                meta.d = sys.d;
                meta.spin = sys.spin;
                meta.q = sys.q;
                meta.detuning = sys.detuning;
                if (best.phase_label != "invariant") meta.phase_label = best.phase_label;
                meta.final_error = best.final_error;
                meta.seed = best.seed;
                const std::string path = under_out_root(o.out);
                save_pulse(res.best.pulse, meta, path);
                std::printf("archive: %s\n", path.c_str());
            }
            return 0;
        };
    });

    // ---- sweep ----------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "run a manifest-driven experiment");
    static std::string manifest_path;
    sweep->add_option("--manifest", manifest_path, "manifest JSON path")->required();
    sweep->callback([&]() {
        action = []() {
            Manifest m = load_manifest(manifest_path);
            if (!m.out_dir.empty() && m.out_dir.front() != '/')
                m.out_dir = under_out_root(m.out_dir);
            const auto outputs = run_manifest(m);
            std::printf("records: %s\n", outputs.records_csv.c_str());
            for (const auto& fig : outputs.figure_csvs)
                std::printf("figure: %s\n", fig.c_str());
            return 0;
        };
    });

    // ---- min-time ---------------------------------------------------------------
    auto* mt = app.add_subcommand("min-time", "estimate the minimum gate duration");
    static struct {
        int d = 3;
        double threshold = 1e-5;
        std::string grid = "0.5:12:0.5";
        std::string refine = "0.1,0.02";
        std::string phase = "auto";
        int restarts = 30;
        int max_iters = 10000;
        double lambda_dt = 200.0;
        std::uint64_t seed = 0;
        int N = 0;
        double bound = 10.0;
        int workers = 1;
        std::string out_dir;
    } t;
    mt->add_option("--d", t.d, "level count (2..8)")->required();
    mt->add_option("--threshold", t.threshold, "error threshold");
    mt->add_option("--grid", t.grid, "start:stop:step or comma list of durations");
    mt->add_option("--refine", t.refine, "comma list of refinement steps");
    mt->add_option("--phase", t.phase, "'auto' or phase index k");
    mt->add_option("--restarts", t.restarts, "restarts per grid point");
    mt->add_option("--max-iters", t.max_iters, "iteration cap per restart");
    mt->add_option("--lambda-dt", t.lambda_dt, "penalty weight in multiples of dt");
    mt->add_option("--seed", t.seed, "base seed");
    mt->add_option("--N", t.N, "time slices (0: policy default)");
    mt->add_option("--bound", t.bound, "guess amplitude bound");
    mt->add_option("--workers", t.workers, "parallel restart workers");
    mt->add_option("--out-dir", t.out_dir, "persist records and archives here");
    mt->callback([&]() {
        action = []() {
            const SpinSystem sys = SpinSystem::make(t.d);
            const TargetGate target = TargetGate::qft(t.d);
            RunnerConfig cfg;
            cfg.restarts = t.restarts;
            cfg.max_iters = t.max_iters;
            cfg.lambda_over_dt = t.lambda_dt;
            cfg.amplitude_bound = t.bound;
            cfg.workers = t.workers;
            cfg.fixed_N = t.N;
            cfg.mode = mode_from_flag(t.phase, target);

            const auto grid = parse_grid(t.grid);
            const auto refine = parse_list(t.refine);
            const auto res = min_time(sys, target, t.threshold, grid, cfg, t.seed, refine);
            const auto& est = res.estimate;
            std::printf("d = %d, phase = %s, threshold = %.3e\n", est.d,
                        est.phase_label.c_str(), est.threshold);
            std::printf("T_min = %.12g (1/q)\n", est.T_min);
            std::printf("bracket: fail %.12g, pass %.12g\n", est.T_fail, est.T_pass);
            std::printf("method = %s\n", est.method.c_str());

            if (!t.out_dir.empty()) {
                RecordStore store(under_out_root(t.out_dir));
                for (const auto& cell : res.cells)
                    for (const auto& outcome : cell.runs.all)
                        store.append_with_archive(outcome.record, outcome.pulse, sys);
                std::printf("records: %s\n", store.records_path().c_str());
            }
            return 0;
        };
    });

    // ---- phases -----------------------------------------------------------------
    auto* ph = app.add_subcommand("phases", "admissible global phases for QFT_d");
    static int ph_d = 3;
    ph->add_option("--d", ph_d, "level count (2..8)")->required();
    ph->callback([&]() {
        action = []() {
            const TargetGate target = TargetGate::qft(ph_d);
            std::string labels, rads;
            for (std::size_t k = 0; k < target.phases.size(); ++k) {
                labels += (k ? ", " : "") + phase_label(target.phases[k], ph_d);
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.12g", target.phases[k]);
                rads += (k ? ", " : "") + std::string(buf);
            }
            std::printf("phi0 = %s; set = %s\n", phase_label(target.phi0, ph_d).c_str(),
                        labels.c_str());
            std::printf("phi0 = %.12g rad; set = %s rad\n", target.phi0, rads.c_str());
            return 0;
        };
    });

    // ---- continue -----------------------------------------------------------------
    auto* cont = app.add_subcommand("continue", "PFT continuation of an archived pulse");
    static struct {
        std::string in;
        double deltaT = 0.0;
        bool reoptimize = false;
        std::string out;
        double lambda_dt = 200.0;
        int max_iters = 10000;
        double epsilon = 1e-10;
        double target_error = 0.0;
        std::string phase = "auto";
    } c;
    cont->add_option("--in", c.in, "input pulse archive")->required();
    cont->add_option("--deltaT", c.deltaT, "duration reduction (1/q)")->required();
    cont->add_flag("--reoptimize", c.reoptimize, "re-optimize after compression");
    cont->add_option("--out", c.out, "output archive path");
    cont->add_option("--lambda-dt", c.lambda_dt, "penalty weight in multiples of dt");
    cont->add_option("--max-iters", c.max_iters, "iteration cap");
    cont->add_option("--epsilon", c.epsilon, "stop on improvement below this");
    cont->add_option("--target-error", c.target_error, "early stop below this error");
    cont->add_option("--phase", c.phase, "'auto' or phase index k for re-optimization");
    cont->callback([&]() {
        action = []() {
            auto [pulse, meta] = load_pulse(c.in);
            const SpinSystem sys = SpinSystem::make(meta.d, meta.q, meta.detuning);
            const TargetGate target = TargetGate::qft(meta.d);
            Pulse continued = pft_continue(pulse, c.deltaT);
            std::printf("continued: T = %.12g -> %.12g (1/q), dt = %.12g\n", pulse.T,
                        continued.T, continued.dt);

            double err = gate_error(target, forward_trajectory(sys, continued).ops.back());
            std::printf("compressed-pulse gate error = %.12e\n", err);

            if (c.reoptimize) {
                KrotovConfig kcfg;
                kcfg.lambda = c.lambda_dt * continued.dt;
                kcfg.epsilon = c.epsilon;
                kcfg.max_iters = c.max_iters;
                kcfg.target_error = c.target_error;
                kcfg.mode = mode_from_flag(c.phase, target);
                const auto trace = optimize(sys, target, continued, kcfg);
                continued = trace.final_pulse;
                err = gate_error(target, forward_trajectory(sys, continued).ops.back());
                std::printf("re-optimized: iterations %d, stop %s\n", trace.iterations,
                            to_string(trace.stop_reason).c_str());
                std::printf("final gate error = %.12e\n", err);
                if (!kcfg.mode.phase_locked) print_phase_classification(sys, target, continued);
            }

            if (!c.out.empty()) {
                PulseMetadata out_meta = meta;
                out_meta.final_error = err;
                out_meta.created_utc.clear();
                const std::string path = under_out_root(c.out);
                save_pulse(continued, out_meta, path);
                std::printf("archive: %s\n", path.c_str());
            }
            return 0;
        };
    });

    // ---- export-plot -----------------------------------------------------------
    auto* ep = app.add_subcommand("export-plot", "plot-ready CSV and SVG from records");
    static struct {
        std::string records;
        std::string figure;
        std::string out_csv;
        std::string out_svg;
        double threshold = 1e-5;
    } e;
    ep->add_option("--records", e.records, "records CSV path")->required();
    ep->add_option("--figure", e.figure, "error-curve or min-time")->required();
    ep->add_option("--out-csv", e.out_csv, "output CSV path");
    ep->add_option("--out-svg", e.out_svg, "output SVG path");
    ep->add_option("--threshold", e.threshold, "threshold for min-time extraction");
    ep->callback([&]() {
        action = []() {
            if (e.figure != "error-curve" && e.figure != "min-time")
                throw InvalidSpec("--figure must be error-curve or min-time");
            const std::string csv =
                e.out_csv.empty() ? under_out_root(e.figure + ".csv") : under_out_root(e.out_csv);
            const std::string svg =
                e.out_svg.empty() ? under_out_root(e.figure + ".svg") : under_out_root(e.out_svg);
            const auto outputs = export_plot(e.records, e.figure, csv, svg, e.threshold);
            std::printf("csv: %s\n", outputs.csv_path.c_str());
            std::printf("svg: %s\n", outputs.svg_path.c_str());
            return 0;
        };
    });

    // ---- verify ------------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run the built-in invariant suite");
    static std::uint64_t verify_seed = 12345;
    ver->add_option("--seed", verify_seed, "seed for randomized checks");
    ver->callback([&]() {
        action = []() {
            const auto results = qpf::verify::run_invariant_suite(verify_seed);
            bool all_ok = true;
            for (const auto& r : results) {
                std::printf("%s: %s (%s)\n", r.passed ? "ok" : "FAIL", r.name.c_str(),
                            r.detail.c_str());
                all_ok = all_ok && r.passed;
            }
            std::printf("verify: %s\n", all_ok ? "PASS" : "FAIL");
            return all_ok ? 0 : 2;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& pe) {
        std::cerr << "error: " << pe.what() << "\n";
        return 1;
    }
    return guarded(action);
}
