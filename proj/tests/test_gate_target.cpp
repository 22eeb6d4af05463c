#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qpf/gate_target.hpp"
#include "qpf/spin_system.hpp"

using namespace qpf;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cofactor-expansion determinant, independent of Eigen's LU path.
Complex det_cofactor(const ComplexMatrix& A) {
    const int n = static_cast<int>(A.rows());
    if (n == 1) return A(0, 0);
    Complex det(0.0, 0.0);
    double sign = 1.0;
    for (int j = 0; j < n; ++j) {
        ComplexMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = A(r, c);
            }
        }
        det += sign * A(0, j) * det_cofactor(minor);
        sign = -sign;
    }
    return det;
}

ComplexMatrix phase_times(double phi, const ComplexMatrix& M) {
    return Complex(std::cos(phi), std::sin(phi)) * M;
}

}  // namespace

TEST_CASE("qft_matrix d=2 is the Hadamard") {
    const ComplexMatrix F = qft_matrix(2);
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix H(2, 2);
    H << s, s, s, -s;
    CHECK((F - H).norm() < 1e-14);
}

TEST_CASE("qft_matrix entry pattern delta^{jk}") {
    const ComplexMatrix F = qft_matrix(3);
    const Complex delta = std::polar(1.0, 2.0 * kPi / 3.0);
    // entry (2,2) carries delta^4 = delta
    CHECK(std::abs(F(2, 2) - delta / std::sqrt(3.0)) < 1e-14);
}

TEST_CASE("qft_matrix unitary for all supported d") {
    for (int d = 2; d <= 8; ++d) {
        const ComplexMatrix F = qft_matrix(d);
        CHECK((F.adjoint() * F - ComplexMatrix::Identity(d, d)).norm() < 1e-12);
    }
    CHECK_THROWS_AS(qft_matrix(9), UnsupportedDimension);
}

TEST_CASE("phase_set frozen values for d=2,3,4") {
    // determinants cross-checked by cofactor expansion below
    CHECK(std::abs(det_cofactor(qft_matrix(2)) - Complex(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(det_cofactor(qft_matrix(3)) - Complex(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(det_cofactor(qft_matrix(4)) - Complex(0.0, -1.0)) < 1e-12);

    auto p2 = phase_set(2);
    CHECK(p2.phi0 == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    REQUIRE(p2.phases.size() == 2);
    CHECK(p2.phases[0] == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(p2.phases[1] == doctest::Approx(3.0 * kPi / 2.0).epsilon(1e-12));

    auto p3 = phase_set(3);
    CHECK(p3.phi0 == doctest::Approx(kPi / 6.0).epsilon(1e-12));
    REQUIRE(p3.phases.size() == 3);
    CHECK(p3.phases[0] == doctest::Approx(kPi / 6.0).epsilon(1e-12));
    CHECK(p3.phases[1] == doctest::Approx(5.0 * kPi / 6.0).epsilon(1e-12));
    CHECK(p3.phases[2] == doctest::Approx(3.0 * kPi / 2.0).epsilon(1e-12));

    auto p4 = phase_set(4);
    CHECK(p4.phi0 == doctest::Approx(kPi / 8.0).epsilon(1e-12));
    REQUIRE(p4.phases.size() == 4);
    CHECK(p4.phases[1] == doctest::Approx(5.0 * kPi / 8.0).epsilon(1e-12));
    CHECK(p4.phases[2] == doctest::Approx(9.0 * kPi / 8.0).epsilon(1e-12));
    CHECK(p4.phases[3] == doctest::Approx(13.0 * kPi / 8.0).epsilon(1e-12));
}

TEST_CASE("phase set closes the determinant for every d") {
    for (int d = 2; d <= 8; ++d) {
        CAPTURE(d);
        auto target = TargetGate::qft(d);
        CHECK(target.phi0 >= 0.0);
        CHECK(target.phi0 <= kPi + 1e-12);
        for (double phi : target.phases) {
            const Complex det = phase_times(phi, target.matrix).determinant();
            CHECK(std::abs(det - Complex(1.0, 0.0)) < 1e-10);
        }
        // equally spaced by 2*pi/d
        for (size_t k = 0; k + 1 < target.phases.size(); ++k) {
            const double gap = circular_distance(target.phases[k + 1], target.phases[k]);
            CHECK(gap == doctest::Approx(2.0 * kPi / d).epsilon(1e-12));
        }
    }
}

TEST_CASE("gate_error basics and phase invariance") {
    auto target = TargetGate::qft(3);
    CHECK(gate_error(target, target.matrix) == doctest::Approx(0.0).epsilon(1e-14));

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 10; ++trial) {
        const double theta = dist(gen);
        CHECK(std::abs(gate_error(target, phase_times(theta, target.matrix))) < 1e-14);
    }

    auto h = TargetGate::qft(2);
    CHECK(gate_error(h, ComplexMatrix::Identity(2, 2)) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(gate_error(h, ComplexMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("phase_locked_error pinned values") {
    auto target = TargetGate::qft(3);
    const double phi = target.phases[1];

    CHECK(phase_locked_error(target, phi, phase_times(phi, target.matrix)) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(phase_locked_error(target, phi, phase_times(phi + kPi, target.matrix)) ==
          doctest::Approx(2.0).epsilon(1e-14));

    // U = QFT3 at phi = 3*pi/2: 1 - cos(3*pi/2) = 1
    CHECK(phase_locked_error(target, 3.0 * kPi / 2.0, target.matrix) ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(phase_locked_error(target, 0.123, target.matrix), PhaseNotAdmissible);
}

TEST_CASE("classify_phase attributes gates to phases") {
    auto target = TargetGate::qft(3);
    const double phi = target.phases[1];  // 5*pi/6

    auto cls = classify_phase(target, phase_times(phi, target.matrix));
    CHECK(cls.phi == doctest::Approx(phi).epsilon(1e-12));
    CHECK(cls.residual < 1e-12);

    auto nudged = classify_phase(target, phase_times(phi + 0.01, target.matrix));
    CHECK(nudged.phi == doctest::Approx(phi).epsilon(1e-12));
    CHECK(nudged.residual == doctest::Approx(0.01).epsilon(1e-9));

    // arg Tr = 0 for U = QFT3; nearest set element is pi/6
    auto plain = classify_phase(target, target.matrix);
    CHECK(plain.phi == doctest::Approx(kPi / 6.0).epsilon(1e-12));
    CHECK(plain.residual == doctest::Approx(kPi / 6.0).epsilon(1e-12));

    CHECK_THROWS_AS(classify_phase(TargetGate::qft(2), ComplexMatrix::Identity(2, 2)),
                    UnclassifiableGate);
}

TEST_CASE("classify_phase is stable under small unitary perturbations") {
    auto target = TargetGate::qft(4);
    auto sys = SpinSystem::make(4);
    for (int k = 0; k < 4; ++k) {
        const double phi = target.phases[k];
        // V = exp(-i eps Ix) with ||V - 1|| < 0.1
        const ComplexMatrix V = unitary_exp(ComplexMatrix(sys.Ix), 0.05);
        auto cls = classify_phase(target, phase_times(phi, target.matrix * V));
        CHECK(cls.phi == doctest::Approx(phi).epsilon(1e-9));
    }
}

TEST_CASE("classify_phase rejects gates midway between two phases") {
    auto target = TargetGate::qft(3);
    // arg Tr exactly halfway between phi_0 and phi_1: both distances are pi/d
    const double midway = target.phases[0] + kPi / 3.0;
    CHECK_THROWS_AS(classify_phase(target, phase_times(midway, target.matrix)),
                    AmbiguousPhase);
}

TEST_CASE("phase labels use the 2d denominator") {
    CHECK(phase_label(kPi / 6.0, 3) == "pi/6");
    CHECK(phase_label(5.0 * kPi / 6.0, 3) == "5pi/6");
    CHECK(phase_label(3.0 * kPi / 2.0, 3) == "9pi/6");
    CHECK(phase_label(kPi / 8.0, 4) == "pi/8");
    CHECK(phase_label(0.0, 5) == "0");
}
