#include "fractal/error.hpp"

namespace fractal {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
        case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
        case ErrorCode::VarianceOverflow: return "VarianceOverflow";
        case ErrorCode::QuadratureNonconvergent: return "QuadratureNonconvergent";
        case ErrorCode::NoClosedForm: return "NoClosedForm";
        case ErrorCode::DeltaTooSmall: return "DeltaTooSmall";
        case ErrorCode::NearPole: return "NearPole";
        case ErrorCode::BoundaryPole: return "BoundaryPole";
        case ErrorCode::NonIsolable: return "NonIsolable";
        case ErrorCode::ContourContaminated: return "ContourContaminated";
        case ErrorCode::NotAPole: return "NotAPole";
        case ErrorCode::PoleOnLine: return "PoleOnLine";
        case ErrorCode::DimensionCollision: return "DimensionCollision";
        case ErrorCode::OutOfValidityRange: return "OutOfValidityRange";
        case ErrorCode::NonpositiveContent: return "NonpositiveContent";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace fractal
