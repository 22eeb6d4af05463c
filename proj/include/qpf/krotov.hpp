#pragma once

#include <string>
#include <vector>

#include "qpf/propagation.hpp"

namespace qpf {

// Penalty weight is absolute; the conventional way to quote it is as a
// multiple of the time step (lambda = ratio * dt).
struct KrotovConfig {
    double lambda = 0.0;
    double epsilon = 1e-10;   // stop when the per-iteration error decrease falls below this
    int max_iters = 10000;
    CostateMode mode = CostateMode::invariant();
    double target_error = 0.0;  // optional early stop once the objective error <= this; 0 disables

    static KrotovConfig with_lambda_ratio(double lambda_over_dt, double dt,
                                          CostateMode mode = CostateMode::invariant());
};

enum class StopReason { converged, max_iters, stalled, target_reached };
std::string to_string(StopReason reason);

struct OptimizationTrace {
    std::vector<double> error_history;  // objective error; entry 0 is the initial guess
    Pulse final_pulse;                  // best-seen controls, not necessarily the last
    double final_error = 1.0;           // last history entry
    double best_error = 1.0;            // error of final_pulse
    int iterations = 0;                 // completed forward+backward cycles
    StopReason stop_reason = StopReason::max_iters;
    Pulse reference_controls;           // v(t): tilde controls after the last backward sweep
};

// u_prev + (1/lambda) Im Tr(B† Hk U): fidelity ascent with the
// Hilbert-Schmidt convention <A|B> = Tr(A†B).
double update_slice(double u_prev, const ComplexMatrix& B_n, const ComplexMatrix& U_n,
                    const ComplexMatrix& Hk, double lambda);

// One optimization in progress; exposed so the sweeps can be driven and
// inspected directly.
struct KrotovState {
    SpinSystem system;
    TargetGate target;
    KrotovConfig config;
    Pulse controls;             // u: updated by the forward sweep
    Pulse reference;            // v: tilde controls from the last backward sweep
    Trajectory forward;         // U(t_n) for `controls`
    CostateTrajectory costate;  // B(t_n) propagated under `reference`
    double error = 1.0;         // objective error of `controls`
};

// Evolves the guess, evaluates its error, and propagates the costate back
// under the unmodified guess controls.
KrotovState init_state(const SpinSystem& system, const TargetGate& target, const Pulse& initial,
                       const KrotovConfig& config);

// Updates u slice-by-slice (n = 1..N) against the stored costate, rebuilding
// the forward trajectory with the new amplitudes as it goes.
void forward_sweep(KrotovState& state);

// Recomputes B(T) from the new U(T), then walks n = N..1 updating the tilde
// controls (which become the next reference) while propagating the costate.
void backward_sweep(KrotovState& state);

// Error the configured mode is descending on.
double objective_error(const TargetGate& target, const CostateMode& mode, const ComplexMatrix& U_T);

OptimizationTrace optimize(const SpinSystem& system, const TargetGate& target,
                           const Pulse& initial, const KrotovConfig& config);

// Diagnostic evaluation of the fidelity |Tr(M†U(T))|^2 and the amplitude
// penalty lambda * sum_k sum_n (u - v)^2 dt.
struct FunctionalTerms {
    double fidelity = 0.0;
    double penalty = 0.0;
};
FunctionalTerms functional_terms(const SpinSystem& system, const TargetGate& target,
                                 const Pulse& pulse, const Pulse& reference, double lambda);

}  // namespace qpf
