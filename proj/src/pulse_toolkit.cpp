#include "qpf/pulse_toolkit.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "qpf/rng.hpp"
#include "qpf/spline.hpp"

namespace qpf {

namespace {

using nlohmann::json;

std::vector<double> knot_indices(int N, int stride) {
    std::vector<double> idx;
    for (int k = 0; k < N; k += stride) idx.push_back(k);
    if (idx.back() != N - 1) idx.push_back(N - 1);
    return idx;
}

std::vector<double> spline_channel(const std::vector<double>& knots, Rng& rng, double bound,
                                   int N) {
    std::vector<double> values(knots.size());
    for (auto& v : values) v = rng.uniform(-bound, bound);
    CubicSpline spline(knots, values);
    std::vector<double> out(N);
    for (int n = 0; n < N; ++n) out[n] = spline(static_cast<double>(n));
    return out;
}

std::string utc_now_iso8601() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json payload_json(const Pulse& pulse, const PulseMetadata& meta) {
    json j;
    j["schema_version"] = 1;
    j["d"] = meta.d;
    j["spin"] = meta.spin;
    j["q"] = meta.q;
    j["detuning"] = meta.detuning;
    j["T"] = pulse.T;
    j["N"] = pulse.N;
    j["ux"] = pulse.ux;
    j["uy"] = pulse.uy;
    if (meta.phase_label)
        j["phase_label"] = *meta.phase_label;
    else
        j["phase_label"] = nullptr;
    if (meta.final_error)
        j["final_error"] = *meta.final_error;
    else
        j["final_error"] = nullptr;
    if (meta.seed)
        j["seed"] = *meta.seed;
    else
        j["seed"] = nullptr;
    j["created_utc"] = meta.created_utc;
    return j;
}

}  // namespace

Pulse random_spline_guess(const GuessSpec& spec, double T) {
    if (spec.N < 1 || spec.knot_stride < 1 || spec.knot_stride > spec.N)
        throw InvalidSpec("random_spline_guess: knot stride must be in [1, N]");
    if (!(spec.amplitude_bound > 0.0) || !std::isfinite(spec.amplitude_bound))
        throw InvalidSpec("random_spline_guess: amplitude bound must be positive");
    if (!(T > 0.0) || !std::isfinite(T))
        throw InvalidDuration("random_spline_guess: duration must be positive");

    const std::vector<double> knots = knot_indices(spec.N, spec.knot_stride);
    Rng rng(spec.seed);
    // draw order is pinned: all u_x knots first, then all u_y knots
    std::vector<double> ux = spline_channel(knots, rng, spec.amplitude_bound, spec.N);
    std::vector<double> uy = spline_channel(knots, rng, spec.amplitude_bound, spec.N);
    return Pulse::make(spec.N, T, std::move(ux), std::move(uy));
}

Pulse pft_continue(const Pulse& pulse, double deltaT) {
    if (!(deltaT >= 0.0) || deltaT >= pulse.T)
        throw InvalidDuration("pft_continue: deltaT must satisfy 0 <= deltaT < T");
    return Pulse::make(pulse.N, pulse.T - deltaT, pulse.ux, pulse.uy);
}

std::string pulse_archive_text(const Pulse& pulse, const PulseMetadata& meta) {
    PulseMetadata stamped = meta;
    if (stamped.created_utc.empty()) stamped.created_utc = utc_now_iso8601();
    json j = payload_json(pulse, stamped);
    j["checksum"] = fnv1a_hex(j.dump());
    return j.dump(2) + "\n";
}

std::pair<Pulse, PulseMetadata> parse_pulse_archive(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CorruptArchive(std::string("pulse archive: invalid JSON: ") + e.what());
    }
    try {
        if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
            throw CorruptArchive("pulse archive: missing schema_version");
        if (j["schema_version"].get<int>() != 1)
            throw VersionMismatch("pulse archive: unknown schema_version");

        if (!j.contains("checksum") || !j["checksum"].is_string())
            throw CorruptArchive("pulse archive: missing checksum");
        const std::string stored = j["checksum"].get<std::string>();
        json payload = j;
        payload.erase("checksum");
        if (fnv1a_hex(payload.dump()) != stored)
            throw CorruptArchive("pulse archive: checksum mismatch");

        PulseMetadata meta;
        meta.d = j.at("d").get<int>();
        meta.spin = j.at("spin").get<double>();
        meta.q = j.at("q").get<double>();
        meta.detuning = j.at("detuning").get<double>();
        if (!j.at("phase_label").is_null())
            meta.phase_label = j["phase_label"].get<std::string>();
        if (!j.at("final_error").is_null())
            meta.final_error = j["final_error"].get<double>();
        if (!j.at("seed").is_null()) meta.seed = j["seed"].get<std::uint64_t>();
        meta.created_utc = j.at("created_utc").get<std::string>();

        const int N = j.at("N").get<int>();
        auto ux = j.at("ux").get<std::vector<double>>();
        auto uy = j.at("uy").get<std::vector<double>>();
        if (static_cast<int>(ux.size()) != N || static_cast<int>(uy.size()) != N)
            throw CorruptArchive("pulse archive: amplitude array length mismatch");
        Pulse pulse = Pulse::make(N, j.at("T").get<double>(), std::move(ux), std::move(uy));
        return {std::move(pulse), std::move(meta)};
    } catch (const json::exception& e) {
        throw CorruptArchive(std::string("pulse archive: malformed field: ") + e.what());
    }
}

void save_pulse(const Pulse& pulse, const PulseMetadata& meta, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw StorageUnavailable("save_pulse: cannot open " + path);
    out << pulse_archive_text(pulse, meta);
    if (!out) throw StorageUnavailable("save_pulse: write failed for " + path);
}

std::pair<Pulse, PulseMetadata> load_pulse(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StorageUnavailable("load_pulse: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pulse_archive(buf.str());
}

}  // namespace qpf
