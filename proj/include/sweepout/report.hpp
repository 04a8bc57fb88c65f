#pragma once

#include "sweepout/cells.hpp"
#include "sweepout/constants.hpp"
#include "sweepout/splitter.hpp"
#include "sweepout/sweepout.hpp"
#include "sweepout/width.hpp"

#include <json.hpp>

#include <string>

namespace sweepout {

using Json = nlohmann::json;

Json constants_json(const ConstantTable& T);
std::string constants_text(const ConstantTable& T);

/// Enough to rebuild the structure: rho, lambda_max and the centers.
Json cells_json(const CellStructure& cs);
CellStructure cells_from_json(const FlatComplex& K, const Json& j);

Json split_json(const RegionSplit& rs, const CellStructure& cs);
Json certificate_json(const SweepCertificate& cert);
/// Vertex values plus the refined complex in the interchange format.
Json function_json(const FlatComplex& refined, std::span<const double> values);
Json bisection_json(const Bisection& b);

/// kind,t,volume rows: `samples` evenly spaced levels, then each interval's
/// exact maximum.
std::string profile_csv(const WidthProfile& p, int samples = 512);

struct Verification {
    double width = 0.0;
    double claimed = 0.0;
    double bound = 0.0;
    double volume = 0.0;
};

/// Rebuilds the complex from the function file and recomputes the width.
/// Throws WidthMismatch, ValueCollision, GlobalBudgetExceeded or
/// CertificateFailure (the certificate records a failure).
Verification verify(const Json& cert, const Json& function);

} // namespace sweepout
