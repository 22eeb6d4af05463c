#pragma once

#include <vector>

#include "qpf/gate_target.hpp"
#include "qpf/pulse.hpp"
#include "qpf/spin_system.hpp"

namespace qpf {

// Forward evolution operators: ops[0] = identity, ops[n] = U(t_n).
struct Trajectory {
    std::vector<ComplexMatrix> ops;
};

// Costate trajectory: ops[N] = B(T), ops[n-1] = P_n† ops[n].
struct CostateTrajectory {
    std::vector<ComplexMatrix> ops;
};

// Which overlap drives the optimization.
struct CostateMode {
    bool phase_locked = false;
    double phi = 0.0;

    static CostateMode invariant() { return CostateMode{}; }
    static CostateMode locked(double phi) { return CostateMode{true, phi}; }
};

// exp(-i (H0 + ux Ix + uy Iy) dt); unit determinant at zero detuning.
ComplexMatrix step_propagator(const SpinSystem& system, double ux, double uy, double dt);

// ops[n] = P_n P_{n-1} ... P_1; ops[N] is the realized gate U(T).
Trajectory forward_trajectory(const SpinSystem& system, const Pulse& pulse);

// Phase-invariant: B(T) = M * Tr(M†U_T).  Phase-locked: B(T) = e^{i phi} M * d/2,
// a constant-weight costate whose fixed point is exactly U = e^{i phi} M.
ComplexMatrix terminal_costate(const TargetGate& target, const ComplexMatrix& U_T,
                               const CostateMode& mode);

// Reverse-time propagation under the same piecewise-constant Hamiltonian:
// ops[n-1] = P_n† ops[n], terminal condition ops[N] = B_T.
CostateTrajectory backward_trajectory(const SpinSystem& system, const Pulse& pulse,
                                      const ComplexMatrix& B_T);

}  // namespace qpf
