#include "qpf/verify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qpf/krotov.hpp"
#include "qpf/rng.hpp"

namespace qpf::verify {

namespace {

std::string residual_str(double worst) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "worst residual %.3e", worst);
    return buf;
}

Pulse random_pulse(int N, double T, double bound, Rng& rng) {
    std::vector<double> ux(N), uy(N);
    for (int n = 0; n < N; ++n) {
        ux[n] = rng.uniform(-bound, bound);
        uy[n] = rng.uniform(-bound, bound);
    }
    return Pulse::make(N, T, std::move(ux), std::move(uy));
}

}  // namespace

CheckResult check_operator_algebra() {
    double worst = 0.0;
    for (int d = 2; d <= 8; ++d) {
        const SpinSystem sys = SpinSystem::make(d);
        const double I = sys.spin;
        const Complex i1(0.0, 1.0);
        const ComplexMatrix id = ComplexMatrix::Identity(d, d);

        const double herm = std::max({(sys.Ix - sys.Ix.adjoint()).norm(),
                                      (sys.Iy - sys.Iy.adjoint()).norm(),
                                      (sys.Iz - sys.Iz.adjoint()).norm()});
        if (herm > 1e-14) return {"operator-algebra", false, "Hermiticity " + residual_str(herm)};

        const double comm =
            std::max({(sys.Ix * sys.Iy - sys.Iy * sys.Ix - i1 * sys.Iz).norm(),
                      (sys.Iy * sys.Iz - sys.Iz * sys.Iy - i1 * sys.Ix).norm(),
                      (sys.Iz * sys.Ix - sys.Ix * sys.Iz - i1 * sys.Iy).norm()});
        const double casimir =
            (sys.Ix * sys.Ix + sys.Iy * sys.Iy + sys.Iz * sys.Iz - I * (I + 1.0) * id).norm();
        const double tr = std::abs(sys.H0.trace());
        worst = std::max({worst, comm, casimir, tr});
        if (comm > 1e-12 || casimir > 1e-12 || tr > 1e-12)
            return {"operator-algebra", false,
                    "d=" + std::to_string(d) + " " + residual_str(std::max({comm, casimir, tr}))};
    }
    return {"operator-algebra", true, residual_str(worst)};
}

CheckResult check_phase_sets() {
    double worst = 0.0;
    for (int d = 2; d <= 8; ++d) {
        const TargetGate target = TargetGate::qft(d);
        const double unit =
            (target.matrix.adjoint() * target.matrix - ComplexMatrix::Identity(d, d)).norm();
        if (unit > 1e-12)
            return {"phase-sets", false, "d=" + std::to_string(d) + " QFT not unitary"};
        for (double phi : target.phases) {
            const Complex det =
                (std::polar(1.0, phi) * target.matrix).determinant();
            const double resid = std::abs(det - Complex(1.0, 0.0));
            worst = std::max(worst, resid);
            if (resid > 1e-10)
                return {"phase-sets", false,
                        "d=" + std::to_string(d) + " det closure " + residual_str(resid)};
        }
    }
    return {"phase-sets", true, residual_str(worst)};
}

CheckResult check_propagators(std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int d = 2; d <= 8; ++d) {
        const SpinSystem sys = SpinSystem::make(d);
        const TargetGate target = TargetGate::qft(d);
        const Pulse pulse = random_pulse(60, 2.0, 6.0, rng);
        const Trajectory traj = forward_trajectory(sys, pulse);
        const ComplexMatrix id = ComplexMatrix::Identity(d, d);
        for (const auto& U : traj.ops) {
            const double unit = (U.adjoint() * U - id).norm();
            const double det = std::abs(U.determinant() - Complex(1.0, 0.0));
            worst = std::max({worst, unit, det});
            if (unit > 1e-10 || det > 1e-9)
                return {"propagators", false,
                        "d=" + std::to_string(d) + " " + residual_str(std::max(unit, det))};
        }
        const CostateTrajectory costate = backward_trajectory(
            sys, pulse, terminal_costate(target, traj.ops.back(), CostateMode::invariant()));
        const Complex ref = hs_inner(costate.ops.back(), traj.ops.back());
        for (int n = 0; n <= pulse.N; ++n) {
            const double drift = std::abs(hs_inner(costate.ops[n], traj.ops[n]) - ref);
            worst = std::max(worst, drift);
            if (drift > 1e-9)
                return {"propagators", false,
                        "d=" + std::to_string(d) + " costate overlap " + residual_str(drift)};
        }
    }
    return {"propagators", true, residual_str(worst)};
}

CheckResult check_gradient_identity(int d, int probes, std::uint64_t seed, double tolerance) {
    // dt small enough that the within-slice commutator correction stays well
    // below the tolerance (see the optimizer tests for the calibration)
    const int N = 200000;
    const double T = 1.0, h = 1e-5, bound = 1.5;
    const SpinSystem sys = SpinSystem::make(d);
    const TargetGate target = TargetGate::qft(d);
    Rng rng(seed);

    double worst = 0.0;
    int used = 0;
    for (int pulse_round = 0; pulse_round < 16 && used < probes; ++pulse_round) {
        const Pulse pulse = random_pulse(N, T, bound, rng);
        const Trajectory fwd = forward_trajectory(sys, pulse);
        const CostateTrajectory bwd = backward_trajectory(
            sys, pulse, terminal_costate(target, fwd.ops.back(), CostateMode::invariant()));
        const double dt = pulse.dt;
        const double dd = d;

        double rms = 0.0;
        const int samples = 50;
        for (int s = 0; s < samples; ++s) {
            const int n = 1 + s * (N / samples);
            const double g = 2.0 * dt / (dd * dd) *
                             (bwd.ops[n].adjoint() * sys.Ix * fwd.ops[n]).trace().imag();
            rms += g * g;
        }
        rms = std::sqrt(rms / samples);

        for (int p = 0; p < 10 && used < probes; ++p) {
            const int n = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(N));
            const bool xchan = (p % 2 == 0);
            const ComplexMatrix& Hk = xchan ? sys.Ix : sys.Iy;
            const double analytic = 2.0 * dt / (dd * dd) *
                                    (bwd.ops[n].adjoint() * Hk * fwd.ops[n]).trace().imag();
            if (std::abs(analytic) < 0.2 * rms) continue;  // degenerate probe

            const ComplexMatrix after = fwd.ops[N] * fwd.ops[n].adjoint();
            auto F_of = [&](double delta) {
                const double ax = pulse.ux[n - 1] + (xchan ? delta : 0.0);
                const double ay = pulse.uy[n - 1] + (xchan ? 0.0 : delta);
                const ComplexMatrix P = step_propagator(sys, ax, ay, dt);
                return std::norm(hs_inner(target.matrix, after * P * fwd.ops[n - 1])) /
                       (dd * dd);
            };
            const double fd = (F_of(h) - F_of(-h)) / (2.0 * h);
            const double rel =
                std::abs(fd - analytic) / std::max(std::abs(fd), std::abs(analytic));
            worst = std::max(worst, rel);
            ++used;
            if (rel >= tolerance) {
                std::ostringstream msg;
                msg << "d=" << d << " slice " << n << " rel dev " << rel;
                return {"gradient-identity", false, msg.str()};
            }
        }
    }
    if (used < probes)
        return {"gradient-identity", false,
                "d=" + std::to_string(d) + " too few live probes (" + std::to_string(used) + ")"};
    std::ostringstream detail;
    detail << "d=" << d << " " << used << " probes, " << residual_str(worst);
    return {"gradient-identity", true, detail.str()};
}

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
    std::vector<CheckResult> results;
    results.push_back(check_operator_algebra());
    results.push_back(check_phase_sets());
    results.push_back(check_propagators(seed));
    results.push_back(check_gradient_identity(3, 6, seed + 1));
    return results;
}

}  // namespace qpf::verify
