#pragma once

#include <vector>

#include "qpf/errors.hpp"

namespace qpf {

// Piecewise-constant control pulse: slice n (1-based, covering (t_{n-1}, t_n])
// carries amplitudes ux[n-1], uy[n-1] in units of q; durations in units 1/q.
struct Pulse {
    int N = 0;
    double T = 0.0;
    double dt = 0.0;
    std::vector<double> ux;
    std::vector<double> uy;

    static Pulse make(int N, double T, std::vector<double> ux, std::vector<double> uy);
    static Pulse zero(int N, double T);
};

}  // namespace qpf
