#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tc {

enum class Errc {
    Syntax,
    UnknownCharacter,
    UnboundSymbol,
    DomainError,
    UnresolvableSample,
    InvalidArgument,
    DuplicateId,
    ReservedId,
    EmptySymbols,
    NotSymmetric,
    Singular,
    UnknownId,
    UnknownCoords,
    UnknownMetric,
    ShapeMismatch,
    InUseAsCoords,
    InUseAsMetric,
    RankMismatch,
    RoleForbidden,
    NoTransformPath,
    DimensionMismatch,
    RuleTargetsNonSourceSymbol,
    FreeIndexMismatch,
    MixedMetrics,
    CoordinateAddition,
    TripleIndex,
    DanglingDerivative,
    NoMetric,
    CollidesWithCoordinate,
    SchemaError,
    VersionUnsupported,
    DanglingReference,
    FileReadError,
    FileWriteError,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace tc
