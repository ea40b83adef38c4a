#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lipfree/numeric.hpp"

namespace lipfree {

enum class Errc {
    DimensionMismatch,
    AsymmetricMatrix,
    NegativeDistance,
    NonzeroDiagonal,
    ZeroOffDiagonal,
    TriangleViolation,
    InvalidPair,
    UnknownLabel,
    SignedMeasure,
    NotARepresentation,
    TooLarge,
    NotMonotone,
    EmptySet,
    EmptyFamily,
    InvalidArgument,
    ParseError,
    SchemaMismatch,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const { return code_; }
    std::string_view name() const { return errc_name(code_); }

private:
    Errc code_;
};

/// Metric-axiom violation with the offending indices. Unused slots are -1.
class MetricError : public Error {
public:
    MetricError(Errc code, const std::string& what, std::array<Index, 3> witness)
        : Error(code, what), witness_(witness) {}

    const std::array<Index, 3>& witness() const { return witness_; }

private:
    std::array<Index, 3> witness_;
};

}  // namespace lipfree
