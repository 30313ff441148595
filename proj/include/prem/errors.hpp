#pragma once

#include <stdexcept>
#include <string>

namespace prem {

/// Malformed input files or arguments (CLI exit 64).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation's documented precondition does not hold (CLI exit 65).
/// `code` is a stable identifier such as "TriplePointsPresent".
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// A guarantee the construction should always meet was violated (CLI exit 70).
class ContractViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace prem
