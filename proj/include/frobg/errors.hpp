#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frobg {

enum class ErrorCode {
    DivisionByZero,
    LogOfNonPositive,
    UnassignedVariable,
    NotExact,
    UnsupportedShape,
    ParseError,
    NonConstantMetric,
    DegenerateMetric,
    NotQuasihomogeneous,
    NotSemisimple,
    Not2D,
    NoCollision,
    NotLogarithmic,
    DegenerateLeadingCoefficient,
    SingularTransform,
    PreconditionViolated,
    UnknownModel,
    UnknownCheck,
    InvalidModel,
    Usage,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace frobg
