#include "qpf/pulse.hpp"

#include <cmath>

namespace qpf {

Pulse Pulse::make(int N, double T, std::vector<double> ux, std::vector<double> uy) {
    if (N < 1) throw InvalidSpec("Pulse: slice count must be >= 1");
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidDuration("Pulse: duration must be positive");
    if (static_cast<int>(ux.size()) != N || static_cast<int>(uy.size()) != N)
        throw InvalidSpec("Pulse: amplitude vectors must have N entries");
    for (int n = 0; n < N; ++n)
        if (!std::isfinite(ux[n]) || !std::isfinite(uy[n]))
            throw NonFiniteAmplitude("Pulse: non-finite amplitude sample");
    Pulse p;
    p.N = N;
    p.T = T;
    p.dt = T / N;
    p.ux = std::move(ux);
    p.uy = std::move(uy);
    return p;
}

Pulse Pulse::zero(int N, double T) {
    return make(N, T, std::vector<double>(N, 0.0), std::vector<double>(N, 0.0));
}

}  // namespace qpf
