#pragma once

#include "qpf/matrix.hpp"

namespace qpf {

// Spin projection operators in the Iz eigenbasis, ordered m = I, I-1, ..., -I.
struct SpinOperators {
    ComplexMatrix Ix;
    ComplexMatrix Iy;
    ComplexMatrix Iz;
};

// Supported level counts: d = 2..8 (spin 1/2 .. 7/2).
SpinOperators spin_operators(int d);

// A quadrupole nucleus of spin I = (d-1)/2 in the rotating frame.
// q sets the quadrupole constant (and thereby the time unit 1/q);
// detuning = omega_f - omega_0 is zero at resonance.
struct SpinSystem {
    double spin = 0.0;
    int d = 0;
    double q = 1.0;
    double detuning = 0.0;
    ComplexMatrix Ix, Iy, Iz;
    ComplexMatrix H0;  // drift: detuning*Iz + q*(Iz^2 - I(I+1)/3)

    static SpinSystem make(int d, double q = 1.0, double detuning = 0.0);
};

const ComplexMatrix& drift_hamiltonian(const SpinSystem& system);

// H0 + ux*Ix + uy*Iy (amplitudes in units of q).
ComplexMatrix total_hamiltonian(const SpinSystem& system, double ux, double uy);

}  // namespace qpf
