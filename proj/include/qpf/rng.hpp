#pragma once

#include <cstdint>
#include <random>

namespace qpf {

// mt19937_64 with an explicit uint64 -> [0,1) mapping, so that draws are
// bit-identical across platforms and standard-library implementations
// (std::uniform_real_distribution makes no such guarantee).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace qpf
