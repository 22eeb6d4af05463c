#include "qpf/propagation.hpp"

#include <cmath>

namespace qpf {

ComplexMatrix step_propagator(const SpinSystem& system, double ux, double uy, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidDuration("step_propagator: time step must be positive");
    return unitary_exp(total_hamiltonian(system, ux, uy), dt);
}

Trajectory forward_trajectory(const SpinSystem& system, const Pulse& pulse) {
    Trajectory traj;
    traj.ops.resize(pulse.N + 1);
    traj.ops[0] = ComplexMatrix::Identity(system.d, system.d);
    for (int n = 1; n <= pulse.N; ++n)
        traj.ops[n] = step_propagator(system, pulse.ux[n - 1], pulse.uy[n - 1], pulse.dt) *
                      traj.ops[n - 1];
    return traj;
}

ComplexMatrix terminal_costate(const TargetGate& target, const ComplexMatrix& U_T,
                               const CostateMode& mode) {
    if (U_T.rows() != target.d || U_T.cols() != target.d)
        throw DimensionMismatch("terminal_costate: operator dimension mismatch");
    if (mode.phase_locked) {
        const Complex rot(std::cos(mode.phi), std::sin(mode.phi));
        return rot * target.matrix * (0.5 * target.d);
    }
    return target.matrix * hs_inner(target.matrix, U_T);
}

CostateTrajectory backward_trajectory(const SpinSystem& system, const Pulse& pulse,
                                      const ComplexMatrix& B_T) {
    if (B_T.rows() != system.d || B_T.cols() != system.d)
        throw DimensionMismatch("backward_trajectory: terminal costate dimension mismatch");
    CostateTrajectory traj;
    traj.ops.resize(pulse.N + 1);
    traj.ops[pulse.N] = B_T;
    for (int n = pulse.N; n >= 1; --n)
        traj.ops[n - 1] =
            step_propagator(system, pulse.ux[n - 1], pulse.uy[n - 1], pulse.dt).adjoint() *
            traj.ops[n];
    return traj;
}

}  // namespace qpf
