#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpf/spin_system.hpp"

using namespace qpf;

TEST_CASE("spin_operators d=2 are half Pauli matrices") {
    auto ops = spin_operators(2);
    ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0.0, 0.5, 0.5, 0.0;
    sy << 0.0, Complex(0, -0.5), Complex(0, 0.5), 0.0;
    sz << 0.5, 0.0, 0.0, -0.5;
    CHECK((ops.Ix - sx).norm() < 1e-15);
    CHECK((ops.Iy - sy).norm() < 1e-15);
    CHECK((ops.Iz - sz).norm() < 1e-15);
}

TEST_CASE("spin_operators d=3 match the I=1 ladder formula") {
    auto ops = spin_operators(3);
    CHECK(ops.Iz(0, 0).real() == doctest::Approx(1.0));
    CHECK(ops.Iz(1, 1).real() == doctest::Approx(0.0));
    CHECK(ops.Iz(2, 2).real() == doctest::Approx(-1.0));

    // <m±1|I±|m> = sqrt(I(I+1) - m(m±1)) gives sqrt(2), halved onto Ix.
    const double expected = 1.0 / std::sqrt(2.0);
    CHECK(ops.Ix(0, 1).real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(ops.Ix(1, 0).real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(ops.Ix(1, 2).real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(ops.Ix(0, 2)) < 1e-15);
}

TEST_CASE("commutation, Casimir and Hermiticity for all supported d") {
    for (int d = 2; d <= 8; ++d) {
        CAPTURE(d);
        auto ops = spin_operators(d);
        const double I = 0.5 * (d - 1);
        const Complex i1(0.0, 1.0);
        const ComplexMatrix id = ComplexMatrix::Identity(d, d);

        CHECK((ops.Ix - ops.Ix.adjoint()).norm() < 1e-14);
        CHECK((ops.Iy - ops.Iy.adjoint()).norm() < 1e-14);
        CHECK((ops.Iz - ops.Iz.adjoint()).norm() < 1e-14);

        CHECK((ops.Ix * ops.Iy - ops.Iy * ops.Ix - i1 * ops.Iz).norm() < 1e-12);
        CHECK((ops.Iy * ops.Iz - ops.Iz * ops.Iy - i1 * ops.Ix).norm() < 1e-12);
        CHECK((ops.Iz * ops.Ix - ops.Ix * ops.Iz - i1 * ops.Iy).norm() < 1e-12);

        const ComplexMatrix casimir =
            ops.Ix * ops.Ix + ops.Iy * ops.Iy + ops.Iz * ops.Iz;
        CHECK((casimir - I * (I + 1.0) * id).norm() < 1e-12);
    }
}

TEST_CASE("spin_operators rejects unsupported dimensions") {
    CHECK_THROWS_AS(spin_operators(1), UnsupportedDimension);
    CHECK_THROWS_AS(spin_operators(9), UnsupportedDimension);
}

TEST_CASE("drift vanishes for spin one half") {
    auto sys = SpinSystem::make(2);
    CHECK(sys.H0.norm() < 1e-15);
}

TEST_CASE("drift diagonal values for d=3 and d=4") {
    auto s3 = SpinSystem::make(3);
    CHECK(s3.H0(0, 0).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(s3.H0(1, 1).real() == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(s3.H0(2, 2).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    auto s4 = SpinSystem::make(4);
    const double expected[4] = {1.0, -1.0, -1.0, 1.0};
    for (int i = 0; i < 4; ++i)
        CHECK(s4.H0(i, i).real() == doctest::Approx(expected[i]).epsilon(1e-14));

    // off-diagonal part is exactly zero
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs(s4.H0(i, j)) < 1e-15);
}

TEST_CASE("drift is traceless at zero detuning for every d") {
    for (int d = 2; d <= 8; ++d) {
        auto sys = SpinSystem::make(d);
        CHECK(std::abs(sys.H0.trace()) < 1e-12);
    }
}

TEST_CASE("total_hamiltonian composes drift and controls") {
    auto sys = SpinSystem::make(3);
    CHECK((total_hamiltonian(sys, 0.0, 0.0) - sys.H0).norm() < 1e-15);

    const ComplexMatrix H = total_hamiltonian(sys, 1.0, 1.0);
    CHECK((H - (sys.H0 + sys.Ix + sys.Iy)).norm() < 1e-15);
    CHECK((H - H.adjoint()).norm() < 1e-14);

    auto s2 = SpinSystem::make(2, 3.7);
    ComplexMatrix half_x(2, 2);
    half_x << 0.0, 0.5, 0.5, 0.0;
    CHECK((total_hamiltonian(s2, 1.0, 0.0) - half_x).norm() < 1e-15);
}

TEST_CASE("total_hamiltonian is linear in the controls") {
    auto sys = SpinSystem::make(5);
    const ComplexMatrix dev1 = total_hamiltonian(sys, 0.3, -0.7) - sys.H0;
    const ComplexMatrix dev2 = total_hamiltonian(sys, 0.6, -1.4) - sys.H0;
    CHECK((dev2 - 2.0 * dev1).norm() < 1e-14);
}

TEST_CASE("total_hamiltonian rejects non-finite amplitudes") {
    auto sys = SpinSystem::make(3);
    CHECK_THROWS_AS(total_hamiltonian(sys, std::nan(""), 0.0), NonFiniteAmplitude);
    CHECK_THROWS_AS(total_hamiltonian(sys, 0.0, INFINITY), NonFiniteAmplitude);
}

TEST_CASE("detuning enters through Iz") {
    auto sys = SpinSystem::make(3, 1.0, 0.25);
    auto bare = SpinSystem::make(3);
    CHECK((sys.H0 - bare.H0 - 0.25 * bare.Iz).norm() < 1e-14);
}
