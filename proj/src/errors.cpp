#include "entconc/errors.hpp"

namespace entconc {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::BadRank: return "BadRank";
        case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorKind::ZeroOperator: return "ZeroOperator";
        case ErrorKind::Annihilated: return "Annihilated";
        case ErrorKind::ZeroProbability: return "ZeroProbability";
        case ErrorKind::NotEntangled: return "NotEntangled";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NotBellDiagonal: return "NotBellDiagonal";
        case ErrorKind::Inconsistent: return "Inconsistent";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace entconc
