#include "qpf/krotov.hpp"

#include <cmath>

namespace qpf {

namespace {

// Amplitudes beyond this signal a runaway update (lambda too small for dt).
constexpr double kAmplitudeLimit = 1e6;

// Per-step error increases beyond this slack count as a stall.
constexpr double kMonotoneSlack = 1e-9;

// Im Tr(A B) without forming the product.
double im_trace_product(const ComplexMatrix& A, const ComplexMatrix& B) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index k = 0; k < A.cols(); ++k)
            acc += A(i, k).real() * B(k, i).imag() + A(i, k).imag() * B(k, i).real();
    return acc;
}

void check_amplitude(double u) {
    if (!std::isfinite(u) || std::abs(u) > kAmplitudeLimit)
        throw NonFiniteAmplitude("krotov: control amplitude diverged (lambda too small?)");
}

void validate(const KrotovState& s) {
    if (s.target.d != s.system.d)
        throw DimensionMismatch("krotov: target and system dimensions differ");
    if (!(s.config.lambda > 0.0)) throw InvalidSpec("krotov: lambda must be positive");
    if (!(s.config.epsilon > 0.0)) throw InvalidSpec("krotov: epsilon must be positive");
    if (s.config.max_iters < 1) throw InvalidSpec("krotov: max_iters must be >= 1");
}

}  // namespace

KrotovConfig KrotovConfig::with_lambda_ratio(double lambda_over_dt, double dt, CostateMode mode) {
    KrotovConfig cfg;
    cfg.lambda = lambda_over_dt * dt;
    cfg.mode = mode;
    return cfg;
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::converged: return "converged";
        case StopReason::max_iters: return "max-iters";
        case StopReason::stalled: return "stalled";
        case StopReason::target_reached: return "target-reached";
    }
    return "unknown";
}

double update_slice(double u_prev, const ComplexMatrix& B_n, const ComplexMatrix& U_n,
                    const ComplexMatrix& Hk, double lambda) {
    const ComplexMatrix BHk = B_n.adjoint() * Hk;
    return u_prev + im_trace_product(BHk, U_n) / lambda;
}

double objective_error(const TargetGate& target, const CostateMode& mode,
                       const ComplexMatrix& U_T) {
    if (mode.phase_locked) return phase_locked_error(target, mode.phi, U_T);
    return gate_error(target, U_T);
}

KrotovState init_state(const SpinSystem& system, const TargetGate& target, const Pulse& initial,
                       const KrotovConfig& config) {
    KrotovState s{system, target, config, initial, initial, {}, {}, 1.0};
    validate(s);
    s.forward = forward_trajectory(system, initial);
    s.error = objective_error(target, config.mode, s.forward.ops.back());
    s.costate = backward_trajectory(
        system, initial, terminal_costate(target, s.forward.ops.back(), config.mode));
    return s;
}

void forward_sweep(KrotovState& s) {
    const int N = s.controls.N;
    const double dt = s.controls.dt;
    const double lambda = s.config.lambda;

    for (int n = 1; n <= N; ++n) {
        const ComplexMatrix& B = s.costate.ops[n];
        const ComplexMatrix BIx = B.adjoint() * s.system.Ix;
        const ComplexMatrix BIy = B.adjoint() * s.system.Iy;
        const double vx = s.reference.ux[n - 1];
        const double vy = s.reference.uy[n - 1];

        // predictor: evaluate the overlap with the slice propagated at the
        // reference amplitudes on top of the already-updated prefix
        const ComplexMatrix U_pred =
            step_propagator(s.system, vx, vy, dt) * s.forward.ops[n - 1];
        const double ux = vx + im_trace_product(BIx, U_pred) / lambda;
        const double uy = vy + im_trace_product(BIy, U_pred) / lambda;
        check_amplitude(ux);
        check_amplitude(uy);

        // corrector: rebuild the slice with the accepted amplitudes
        s.controls.ux[n - 1] = ux;
        s.controls.uy[n - 1] = uy;
        s.forward.ops[n] = step_propagator(s.system, ux, uy, dt) * s.forward.ops[n - 1];
    }
    s.error = objective_error(s.target, s.config.mode, s.forward.ops.back());
}

void backward_sweep(KrotovState& s) {
    const int N = s.controls.N;
    const double dt = s.controls.dt;
    const double lambda = s.config.lambda;

    s.costate.ops[N] = terminal_costate(s.target, s.forward.ops[N], s.config.mode);
    for (int n = N; n >= 1; --n) {
        const ComplexMatrix& B = s.costate.ops[n];
        const ComplexMatrix& U_n = s.forward.ops[n];
        const double tx = update_slice(s.controls.ux[n - 1], B, U_n, s.system.Ix, lambda);
        const double ty = update_slice(s.controls.uy[n - 1], B, U_n, s.system.Iy, lambda);
        check_amplitude(tx);
        check_amplitude(ty);
        s.reference.ux[n - 1] = tx;
        s.reference.uy[n - 1] = ty;
        s.costate.ops[n - 1] = step_propagator(s.system, tx, ty, dt).adjoint() * s.costate.ops[n];
    }
}

OptimizationTrace optimize(const SpinSystem& system, const TargetGate& target,
                           const Pulse& initial, const KrotovConfig& config) {
    KrotovState s = init_state(system, target, initial, config);

    OptimizationTrace trace;
    trace.error_history.reserve(config.max_iters + 1);
    trace.error_history.push_back(s.error);
    trace.final_pulse = s.controls;
    trace.best_error = s.error;
    trace.stop_reason = StopReason::max_iters;

    double prev_error = s.error;
    for (int m = 1; m <= config.max_iters; ++m) {
        forward_sweep(s);
        trace.error_history.push_back(s.error);
        trace.iterations = m;
        if (s.error < trace.best_error) {
            trace.best_error = s.error;
            trace.final_pulse = s.controls;
        }
        if (s.error > prev_error + kMonotoneSlack) {
            trace.stop_reason = StopReason::stalled;
            break;
        }
        if (config.target_error > 0.0 && s.error <= config.target_error) {
            trace.stop_reason = StopReason::target_reached;
            backward_sweep(s);
            break;
        }
        if (prev_error - s.error < config.epsilon) {
            trace.stop_reason = StopReason::converged;
            backward_sweep(s);
            break;
        }
        prev_error = s.error;
        backward_sweep(s);
    }

    trace.final_error = trace.error_history.back();
    trace.reference_controls = s.reference;
    return trace;
}

FunctionalTerms functional_terms(const SpinSystem& system, const TargetGate& target,
                                 const Pulse& pulse, const Pulse& reference, double lambda) {
    if (pulse.N != reference.N || pulse.T != reference.T)
        throw DimensionMismatch("functional_terms: pulse and reference must share N and T");
    FunctionalTerms terms;
    const ComplexMatrix U_T = forward_trajectory(system, pulse).ops.back();
    terms.fidelity = std::norm(hs_inner(target.matrix, U_T));
    double penalty = 0.0;
    for (int n = 0; n < pulse.N; ++n) {
        const double dx = pulse.ux[n] - reference.ux[n];
        const double dy = pulse.uy[n] - reference.uy[n];
        penalty += dx * dx + dy * dy;
    }
    terms.penalty = lambda * penalty * pulse.dt;
    return terms;
}

}  // namespace qpf
