#pragma once

#include <string>
#include <vector>

#include "qpf/matrix.hpp"

namespace qpf {

// QFT_d matrix, entries delta^{jk}/sqrt(d) with delta = exp(2*pi*i/d).
ComplexMatrix qft_matrix(int d);

// Smallest phi0 in [0, pi] with det(e^{i phi0} U) = +1, plus the d-element
// class {phi0 + 2*pi*k/d mod 2*pi}.  Traceless control Hamiltonians generate
// SU(d) evolutions, so a unit-determinant target is reachable only in one of
// these global-phase classes.
struct PhaseSet {
    double phi0 = 0.0;
    std::vector<double> phases;  // size d, each in [0, 2*pi)
};

PhaseSet phase_set(int d);                          // for QFT_d
PhaseSet phase_set_of(const ComplexMatrix& gate);   // for any unitary

// A target unitary together with its admissible global-phase class.
struct TargetGate {
    int d = 0;
    ComplexMatrix matrix;
    double phi0 = 0.0;
    std::vector<double> phases;

    static TargetGate qft(int d);
    // Any unitary target; tested only through the QFT path but accepted by the
    // optimizer as-is.
    static TargetGate custom(const ComplexMatrix& gate);
};

// Global-phase-invariant gate error 1 - |Tr(M†U)|^2 / d^2, in [0, 1].
double gate_error(const TargetGate& target, const ComplexMatrix& U);

// Phase-sensitive error 1 - Re[e^{-i phi} Tr(M†U)]/d, in [0, 2]; zero exactly
// at U = e^{i phi} M.  phi must be one of the admissible phases.
double phase_locked_error(const TargetGate& target, double phi, const ComplexMatrix& U);

struct PhaseClassification {
    double phi = 0.0;       // nearest admissible phase
    double residual = 0.0;  // circular distance in radians
};

// Attributes a realized gate to the nearest phase in the class via
// arg Tr(M†U).  Requires gate_error < 0.5.
PhaseClassification classify_phase(const TargetGate& target, const ComplexMatrix& U);

// Circular distance |a - b| wrapped into [0, pi].
double circular_distance(double a, double b);

// Rational-multiple-of-pi label over denominator 2d, e.g. "9pi/6" for d = 3.
// Falls back to a radian rendering when the phase is not a clean multiple.
std::string phase_label(double phi, int d);

}  // namespace qpf
