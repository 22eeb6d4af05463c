#include "qpf/gate_target.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qpf {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_two_pi(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

void require_dim(const TargetGate& target, const ComplexMatrix& U, const char* where) {
    if (U.rows() != target.d || U.cols() != target.d)
        throw DimensionMismatch(std::string(where) + ": operator dimension mismatch");
}

}  // namespace

ComplexMatrix qft_matrix(int d) {
    if (d < 2 || d > 8)
        throw UnsupportedDimension("unsupported dimension: level count must be in [2, 8]");
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix F(d, d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            const double angle = 2.0 * kPi * static_cast<double>(j) * k / d;
            F(j, k) = scale * Complex(std::cos(angle), std::sin(angle));
        }
    }
    return F;
}

PhaseSet phase_set_of(const ComplexMatrix& gate) {
    const int d = static_cast<int>(gate.rows());
    const Complex det = gate.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-9)
        throw Error("phase_set_of: target determinant is not unimodular");
    // Need e^{i d phi0} det = 1; the smallest non-negative solution lies in
    // [0, 2*pi/d) which is inside [0, pi] for every d >= 2.
    const double phi0 = wrap_two_pi(-std::arg(det)) / d;
    PhaseSet ps;
    ps.phi0 = phi0;
    ps.phases.resize(d);
    for (int k = 0; k < d; ++k) ps.phases[k] = wrap_two_pi(phi0 + 2.0 * kPi * k / d);
    return ps;
}

PhaseSet phase_set(int d) { return phase_set_of(qft_matrix(d)); }

TargetGate TargetGate::qft(int d) {
    TargetGate t;
    t.d = d;
    t.matrix = qft_matrix(d);
    PhaseSet ps = phase_set_of(t.matrix);
    t.phi0 = ps.phi0;
    t.phases = std::move(ps.phases);
    return t;
}

TargetGate TargetGate::custom(const ComplexMatrix& gate) {
    if (gate.rows() != gate.cols() || gate.rows() < 2)
        throw DimensionMismatch("TargetGate::custom: gate must be square, d >= 2");
    if ((gate.adjoint() * gate - ComplexMatrix::Identity(gate.rows(), gate.rows())).norm() > 1e-9)
        throw Error("TargetGate::custom: gate is not unitary");
    TargetGate t;
    t.d = static_cast<int>(gate.rows());
    t.matrix = gate;
    PhaseSet ps = phase_set_of(gate);
    t.phi0 = ps.phi0;
    t.phases = std::move(ps.phases);
    return t;
}

double gate_error(const TargetGate& target, const ComplexMatrix& U) {
    require_dim(target, U, "gate_error");
    const Complex overlap = hs_inner(target.matrix, U);
    const double d = static_cast<double>(target.d);
    return 1.0 - std::norm(overlap) / (d * d);
}

double phase_locked_error(const TargetGate& target, double phi, const ComplexMatrix& U) {
    require_dim(target, U, "phase_locked_error");
    bool admissible = false;
    for (double p : target.phases)
        if (circular_distance(phi, p) <= 1e-9) admissible = true;
    if (!admissible)
        throw PhaseNotAdmissible("phase_locked_error: phase not in the admissible class");
    const Complex overlap = hs_inner(target.matrix, U);
    const Complex rot = Complex(std::cos(phi), -std::sin(phi));
    return 1.0 - (rot * overlap).real() / target.d;
}

double circular_distance(double a, double b) {
    double diff = wrap_two_pi(a - b);
    if (diff > kPi) diff = 2.0 * kPi - diff;
    return std::fabs(diff);
}

PhaseClassification classify_phase(const TargetGate& target, const ComplexMatrix& U) {
    if (gate_error(target, U) >= 0.5)
        throw UnclassifiableGate("classify_phase: gate error too large to attribute a phase");
    const double psi = std::arg(hs_inner(target.matrix, U));
    double best = -1.0, second = -1.0;
    double best_phi = 0.0;
    for (double p : target.phases) {
        const double dist = circular_distance(psi, p);
        if (best < 0.0 || dist < best) {
            second = best;
            best = dist;
            best_phi = p;
        } else if (second < 0.0 || dist < second) {
            second = dist;
        }
    }
    if (second >= 0.0 && second - best < 1e-6)
        throw AmbiguousPhase("classify_phase: two phases are equally close");
    return PhaseClassification{best_phi, best};
}

std::string phase_label(double phi, int d) {
    const int denom = 2 * d;
    const double coeff = phi * denom / kPi;
    const long num = std::lround(coeff);
    if (std::abs(coeff - static_cast<double>(num)) < 1e-9) {
        if (num == 0) return "0";
        if (num == 1) return "pi/" + std::to_string(denom);
        return std::to_string(num) + "pi/" + std::to_string(denom);
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6grad", phi);
    return buf;
}

}  // namespace qpf
