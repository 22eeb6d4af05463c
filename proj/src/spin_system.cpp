#include "qpf/spin_system.hpp"

#include <cmath>

namespace qpf {

SpinOperators spin_operators(int d) {
    if (d < 2 || d > 8)
        throw UnsupportedDimension("unsupported dimension: level count must be in [2, 8]");

    const double I = 0.5 * (d - 1);
    ComplexMatrix Ix = ComplexMatrix::Zero(d, d);
    ComplexMatrix Iy = ComplexMatrix::Zero(d, d);
    ComplexMatrix Iz = ComplexMatrix::Zero(d, d);

    // Row r holds m = I - r.  Ladder amplitude <m+1|I+|m> = sqrt(I(I+1) - m(m+1)).
    for (int r = 0; r < d; ++r) Iz(r, r) = I - r;
    for (int r = 0; r + 1 < d; ++r) {
        const double m = I - r - 1;  // lower state of the (m, m+1) pair
        const double s = std::sqrt(I * (I + 1) - m * (m + 1));
        Ix(r, r + 1) = 0.5 * s;
        Ix(r + 1, r) = 0.5 * s;
        Iy(r, r + 1) = Complex(0.0, -0.5 * s);
        Iy(r + 1, r) = Complex(0.0, 0.5 * s);
    }
    return SpinOperators{std::move(Ix), std::move(Iy), std::move(Iz)};
}

SpinSystem SpinSystem::make(int d, double q, double detuning) {
    if (!std::isfinite(q) || !std::isfinite(detuning))
        throw NonFiniteAmplitude("SpinSystem: q and detuning must be finite");
    SpinOperators ops = spin_operators(d);
    SpinSystem sys;
    sys.spin = 0.5 * (d - 1);
    sys.d = d;
    sys.q = q;
    sys.detuning = detuning;
    sys.Ix = std::move(ops.Ix);
    sys.Iy = std::move(ops.Iy);
    sys.Iz = std::move(ops.Iz);
    // Quadrupole term is trace-subtracted, so H0 is traceless at resonance.
    const double casimir = sys.spin * (sys.spin + 1.0);
    sys.H0 = detuning * sys.Iz +
             q * (sys.Iz * sys.Iz - (casimir / 3.0) * ComplexMatrix::Identity(d, d));
    return sys;
}

const ComplexMatrix& drift_hamiltonian(const SpinSystem& system) { return system.H0; }

ComplexMatrix total_hamiltonian(const SpinSystem& system, double ux, double uy) {
    if (!std::isfinite(ux) || !std::isfinite(uy))
        throw NonFiniteAmplitude("total_hamiltonian: non-finite control amplitude");
    return system.H0 + ux * system.Ix + uy * system.Iy;
}

}  // namespace qpf
