#include "sweepout/error.hpp"

namespace sweepout {

std::string_view error_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::DisconnectedComplex: return "DisconnectedComplex";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::RhoTooLarge: return "RhoTooLarge";
    case ErrorCode::RhoTooSmall: return "RhoTooSmall";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::TooCentral: return "TooCentral";
    case ErrorCode::ProjectionBudgetExceeded: return "ProjectionBudgetExceeded";
    case ErrorCode::CapacitorShortfall: return "CapacitorShortfall";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::CoareaBudgetExceeded: return "CoareaBudgetExceeded";
    case ErrorCode::BalanceFailure: return "BalanceFailure";
    case ErrorCode::ChainBudgetFailure: return "ChainBudgetFailure";
    case ErrorCode::NonSeparatingBoundary: return "NonSeparatingBoundary";
    case ErrorCode::SingleCellBudgetExceeded: return "SingleCellBudgetExceeded";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::ValueCollision: return "ValueCollision";
    case ErrorCode::GlobalBudgetExceeded: return "GlobalBudgetExceeded";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace sweepout
