#include "compactor/error.hpp"

namespace compactor {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Mapping: return "mapping error";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::Verification: return "verification error";
    case ErrorKind::TooLarge: return "instance too large";
    case ErrorKind::Internal: return "internal error";
    }
    return "error";
}

}  // namespace compactor
