#include "curvipat/error.hpp"

namespace curvipat {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidDimension: return "invalid dimension";
        case ErrorKind::UnsupportedDimension: return "unsupported dimension";
        case ErrorKind::ParameterRange: return "parameter out of range";
        case ErrorKind::Structure: return "structure violation";
        case ErrorKind::Shape: return "shape mismatch";
        case ErrorKind::OracleSize: return "oracle size cap exceeded";
        case ErrorKind::NumericalFailure: return "numerical failure";
        case ErrorKind::Divergence: return "divergence";
        case ErrorKind::Usage: return "usage error";
        case ErrorKind::Io: return "i/o error";
    }
    return "unknown error";
}

}  // namespace curvipat
