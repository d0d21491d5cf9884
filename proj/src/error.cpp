#include "tensorcalc/error.hpp"

namespace tc {

std::string_view errc_name(Errc code) {
    switch (code) {
    case Errc::Syntax: return "Syntax";
    case Errc::UnknownCharacter: return "UnknownCharacter";
    case Errc::UnboundSymbol: return "UnboundSymbol";
    case Errc::DomainError: return "DomainError";
    case Errc::UnresolvableSample: return "UnresolvableSample";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::ReservedId: return "ReservedId";
    case Errc::EmptySymbols: return "EmptySymbols";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::Singular: return "Singular";
    case Errc::UnknownId: return "UnknownId";
    case Errc::UnknownCoords: return "UnknownCoords";
    case Errc::UnknownMetric: return "UnknownMetric";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::InUseAsCoords: return "InUseAsCoords";
    case Errc::InUseAsMetric: return "InUseAsMetric";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::RoleForbidden: return "RoleForbidden";
    case Errc::NoTransformPath: return "NoTransformPath";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RuleTargetsNonSourceSymbol: return "RuleTargetsNonSourceSymbol";
    case Errc::FreeIndexMismatch: return "FreeIndexMismatch";
    case Errc::MixedMetrics: return "MixedMetrics";
    case Errc::CoordinateAddition: return "CoordinateAddition";
    case Errc::TripleIndex: return "TripleIndex";
    case Errc::DanglingDerivative: return "DanglingDerivative";
    case Errc::NoMetric: return "NoMetric";
    case Errc::CollidesWithCoordinate: return "CollidesWithCoordinate";
    case Errc::SchemaError: return "SchemaError";
    case Errc::VersionUnsupported: return "VersionUnsupported";
    case Errc::DanglingReference: return "DanglingReference";
    case Errc::FileReadError: return "FileReadError";
    case Errc::FileWriteError: return "FileWriteError";
    }
    return "Unknown";
}

}  // namespace tc
