#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qpf::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // worst residual or failure description
};

// Spin operator commutators, Casimir, Hermiticity and drift trace for every
// supported d.
CheckResult check_operator_algebra();

// QFT unitarity and det(e^{i phi} QFT_d) = 1 closure over each phase class.
CheckResult check_phase_sets();

// Unitarity and unit determinant of propagators along random pulses, plus the
// conserved costate overlap.
CheckResult check_propagators(std::uint64_t seed);

// Central finite differences of the fidelity against the costate gradient
// formula at dimension d; `probes` live (non-degenerate) probes are required.
CheckResult check_gradient_identity(int d, int probes, std::uint64_t seed,
                                    double tolerance = 1e-4);

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 12345);

}  // namespace qpf::verify
