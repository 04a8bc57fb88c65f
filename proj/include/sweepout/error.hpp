#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sweepout {

enum class ErrorCode {
    ParseError,
    DegenerateSimplex,
    NonManifold,
    DisconnectedComplex,
    UnsupportedDimension,
    RhoTooLarge,
    RhoTooSmall,
    CertificateFailure,
    TooCentral,
    ProjectionBudgetExceeded,
    CapacitorShortfall,
    EmptyRegion,
    CoareaBudgetExceeded,
    BalanceFailure,
    ChainBudgetFailure,
    NonSeparatingBoundary,
    SingleCellBudgetExceeded,
    EpsilonTooLarge,
    ValueCollision,
    GlobalBudgetExceeded,
    WidthMismatch,
    BadParams,
    IoError,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// CLI turns it into a machine-readable record.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

} // namespace sweepout
