#pragma once

// JSON serialization of results. Every document carries "schema": 1 and
// only finite numbers; a non-finite value throws std::domain_error.

#include <string>

#include <json.hpp>

#include "hoepr/criteria.hpp"
#include "hoepr/gaussian.hpp"
#include "hoepr/spectral.hpp"
#include "hoepr/states.hpp"
#include "hoepr/wavefunc.hpp"

namespace hoepr {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json lambda_json(int order, const EigenResult& result, const SolverOptions& options,
                 bool converged);
Json bipartite_json(int order, Sign sign, const EigenResult& result, const ScalingCheck& check,
                    const SolverOptions& options);
Json fit_json(int order, FitObjective objective, const Grid& grid, const BesselGaussFit& fit);
Json state_json(const StateSpec& state);
Json criterion_json(const CriterionReport& report);
Json threshold_json(const Threshold& t);
Json scan_json(const ScanReport& report);

std::string to_string(FitObjective objective);

/// Throws std::domain_error if any number in the document is NaN or infinite.
void require_finite(const Json& doc);

}  // namespace hoepr
