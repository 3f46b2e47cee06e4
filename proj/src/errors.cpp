#include "nps/errors.hpp"

namespace nps {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::Ok: return "Ok";
        case ErrorCode::Syntax: return "SyntaxError";
        case ErrorCode::DegreeOverflow: return "DegreeOverflow";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::NumericFailure: return "NumericFailure";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::NeedsPreparation: return "NeedsPreparation";
        case ErrorCode::EdgeMismatch: return "EdgeMismatch";
        case ErrorCode::DepthExceeded: return "DepthExceeded";
        case ErrorCode::InsufficientTruncation: return "InsufficientTruncation";
        case ErrorCode::UltrametricViolation: return "UltrametricViolation";
        case ErrorCode::NonReduced: return "NonReduced";
        case ErrorCode::Schema: return "SchemaError";
        case ErrorCode::ConstraintUnsatisfiable: return "ConstraintUnsatisfiable";
        case ErrorCode::ProbeUnderflow: return "ProbeUnderflow";
        case ErrorCode::Exhausted: return "Exhausted";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "IoError";
        case ErrorCode::Internal: return "InternalError";
    }
    return "Unknown";
}

}  // namespace nps
