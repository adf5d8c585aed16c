#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecsim {

enum class ErrorCode {
    SchedulingInPast,
    DegenerateTopology,
    InconsistentState,
    UnknownLocation,
    DuplicateId,
    UnknownId,
    NotTerminal,
    EmptySample,
    ParseError,
    ValidationError,
    Io,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All failures raised by the core carry a code so the C boundary can map them
// onto status values without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// ValidationError with the dotted path of the offending field, e.g. "profiles.weights".
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(ErrorCode::ValidationError, field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace ecsim
