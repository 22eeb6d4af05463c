#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "qpf/pulse.hpp"

namespace qpf {

// Parameters of the random-knot spline guess: uniform random amplitudes at
// every knot_stride-th slice (endpoints always pinned), cubic-spline
// interpolation in between.
struct GuessSpec {
    int N = 100;
    int knot_stride = 10;
    double amplitude_bound = 10.0;
    std::uint64_t seed = 0;
};

Pulse random_spline_guess(const GuessSpec& spec, double T);

// Time-compressed reuse of a converged pulse: same samples, duration T - deltaT.
Pulse pft_continue(const Pulse& pulse, double deltaT);

// Provenance carried alongside an archived pulse.
struct PulseMetadata {
    int d = 0;
    double spin = 0.0;
    double q = 1.0;
    double detuning = 0.0;
    std::optional<std::string> phase_label;
    std::optional<double> final_error;
    std::optional<std::uint64_t> seed;
    std::string created_utc;  // filled on save when empty
};

// JSON pulse archive, schema_version 1, with an FNV-1a checksum over the
// canonicalized payload.  Round-trips amplitudes bit-exactly.
void save_pulse(const Pulse& pulse, const PulseMetadata& meta, const std::string& path);
std::pair<Pulse, PulseMetadata> load_pulse(const std::string& path);

// String-level forms used by save/load and directly testable.
std::string pulse_archive_text(const Pulse& pulse, const PulseMetadata& meta);
std::pair<Pulse, PulseMetadata> parse_pulse_archive(const std::string& text);

}  // namespace qpf
