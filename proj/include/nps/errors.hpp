#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nps {

// numeric values are shared with the C API (nps.h)
enum class ErrorCode : int {
    Ok = 0,
    Syntax = 1,
    DegreeOverflow = 2,
    ZeroPolynomial = 3,
    NumericFailure = 4,
    NonConvergence = 5,
    NeedsPreparation = 6,
    EdgeMismatch = 7,
    DepthExceeded = 8,
    InsufficientTruncation = 9,
    UltrametricViolation = 10,
    NonReduced = 11,
    Schema = 12,
    ConstraintUnsatisfiable = 13,
    ProbeUnderflow = 14,
    Exhausted = 15,
    InvalidArgument = 16,
    Io = 17,
    Internal = 99,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

class SyntaxError : public Error {
public:
    // offset is 0-based; position is the 1-based column reported to users
    SyntaxError(std::size_t offset, const std::string& expected)
        : Error(ErrorCode::Syntax,
                "syntax error at column " + std::to_string(offset + 1) + ": expected " + expected),
          position(offset + 1), expected(expected) {}
    std::size_t position;
    std::string expected;
};

class SchemaError : public Error {
public:
    SchemaError(const std::string& path, const std::string& field)
        : Error(ErrorCode::Schema, "schema error in " + path + ": " + field),
          path(path), field(field) {}
    std::string path;
    std::string field;
};

}  // namespace nps
