#pragma once

#include <stdexcept>
#include <string>

namespace qpf {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonHermitianInput : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct UnsupportedDimension : Error {
    using Error::Error;
};
struct NonFiniteAmplitude : Error {
    using Error::Error;
};
struct PhaseNotAdmissible : Error {
    using Error::Error;
};
struct AmbiguousPhase : Error {
    using Error::Error;
};
struct UnclassifiableGate : Error {
    using Error::Error;
};
struct InvalidSpec : Error {
    using Error::Error;
};
struct InvalidDuration : Error {
    using Error::Error;
};
struct CorruptArchive : Error {
    using Error::Error;
};
struct VersionMismatch : Error {
    using Error::Error;
};
struct StorageUnavailable : Error {
    using Error::Error;
};
struct NoPassingPoint : Error {
    using Error::Error;
};

}  // namespace qpf
