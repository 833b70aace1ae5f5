#include "frobg/errors.hpp"

namespace frobg {

std::string_view error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::LogOfNonPositive: return "LogOfNonPositive";
    case ErrorCode::UnassignedVariable: return "UnassignedVariable";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonConstantMetric: return "NonConstantMetric";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::NotQuasihomogeneous: return "NotQuasihomogeneous";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::Not2D: return "Not2D";
    case ErrorCode::NoCollision: return "NoCollision";
    case ErrorCode::NotLogarithmic: return "NotLogarithmic";
    case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::Usage: return "Usage";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace frobg
