#include "magcouple/errors.hpp"

namespace magcouple {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NegativeField: return "NegativeField";
    case ErrorKind::NegativeFrequency: return "NegativeFrequency";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::SingularResponse: return "SingularResponse";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorKind::NoMinimum: return "NoMinimum";
    case ErrorKind::NegativeCoupling: return "NegativeCoupling";
    case ErrorKind::DegenerateProblem: return "DegenerateProblem";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::EmptyMap: return "EmptyMap";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::MalformedData: return "MalformedData";
    }
    return "Unknown";
}

}  // namespace magcouple
