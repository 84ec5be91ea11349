#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace magcouple {

enum class ErrorKind {
    NegativeField,
    NegativeFrequency,
    InvalidSystem,
    SingularResponse,
    EigenFailure,
    WindowTooNarrow,
    NoMinimum,
    NegativeCoupling,
    DegenerateProblem,
    DegenerateData,
    EmptyMap,
    InvalidGrid,
    Config,
    Io,
    MalformedData,
};

std::string_view to_string(ErrorKind kind);

// All failures raised by the library carry a kind so callers (and the CLI's
// exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

    // Same kind, extra location information appended.
    Error with_context(const std::string& context) const { return Error(kind_, detail_ + " (" + context + ")"); }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace magcouple
