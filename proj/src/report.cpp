#include "hoepr/report.hpp"

#include <cmath>
#include <stdexcept>

namespace hoepr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Json header(const char* command) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

Json finished(Json j) {
  require_finite(j);
  return j;
}

}  // namespace

std::string to_string(FitObjective objective) {
  return objective == FitObjective::sup_norm ? "sup_norm" : "least_squares";
}

void require_finite(const Json& doc) {
  if (doc.is_number_float() && !std::isfinite(doc.get<double>()))
    throw std::domain_error("refusing to serialize a non-finite number");
  if (doc.is_structured())
    for (const auto& v : doc) require_finite(v);
}

Json lambda_json(int order, const EigenResult& result, const SolverOptions& options,
                 bool converged) {
  Json j = header("lambda");
  j["order"] = order;
  j["N"] = result.truncation;
  j["tol"] = options.tol;
  j["solver"] = to_string(result.solver);
  j["lambda"] = result.eigenvalue;
  j["residual"] = result.residual_norm;
  j["iterations"] = result.iterations;
  j["converged"] = converged;
  return finished(std::move(j));
}

Json bipartite_json(int order, Sign sign, const EigenResult& result, const ScalingCheck& check,
                    const SolverOptions& options) {
  Json j = header("bipartite");
  j["order"] = order;
  j["sign"] = to_string(sign);
  j["N_per_mode"] = result.truncation;
  j["tol"] = options.tol;
  j["Lambda"] = result.eigenvalue;
  j["residual"] = result.residual_norm;
  j["single_mode_lambda"] = check.single;
  j["scaled_lambda"] = std::ldexp(check.single, order / 2);
  j["relative_error"] = check.relative_error;
  j["scaling_holds"] = check.holds;
  return finished(std::move(j));
}

Json fit_json(int order, FitObjective objective, const Grid& grid, const BesselGaussFit& fit) {
  Json j = header("fit");
  j["order"] = order;
  j["objective"] = to_string(objective);
  j["grid"] = {{"min", grid.min}, {"max", grid.max}, {"step", grid.step}};
  j["a"] = fit.a;
  j["b"] = fit.b;
  j["c"] = fit.c;
  j["max_rel_error"] = fit.max_rel_error;
  j["evaluations"] = fit.evaluations;
  return finished(std::move(j));
}

Json state_json(const StateSpec& state) {
  Json j;
  j["family"] = family_name(state);
  std::visit(overloaded{
                 [&](const SqueezedVacuum& s) { j["lambda"] = s.lambda; },
                 [&](const PsiN& s) {
                   j["n"] = s.n;
                   j["xi"] = s.xi;
                 },
                 [&](const Psi2Prime& s) { j["xi"] = s.xi; },
                 [&](const ExplicitState& s) {
                   j["dim_a"] = s.vector.dim_a;
                   j["dim_b"] = s.vector.dim_b;
                 },
                 [&](const GaussianState& s) {
                   Json sigma = Json::array();
                   for (int r = 0; r < 4; ++r)
                     for (int c = 0; c < 4; ++c) sigma.push_back(s.cov.sigma(r, c));
                   Json mean = Json::array();
                   for (int r = 0; r < 4; ++r) mean.push_back(s.cov.mean(r));
                   j["sigma"] = sigma;
                   j["mean"] = mean;
                 },
             },
             state);
  return j;
}

Json criterion_json(const CriterionReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["criterion"] = criterion_name(r.criterion);
  j["order"] = criterion_order(r.criterion);
  j["sign"] = to_string(criterion_sign(r.criterion));
  j["value"] = r.value;
  j["threshold"] = r.threshold;
  j["provenance"] = to_string(r.provenance);
  j["verdict"] = to_string(r.verdict);
  j["margin"] = r.margin;
  j["truncation"] = r.truncation;
  return finished(std::move(j));
}

Json threshold_json(const Threshold& t) {
  Json chain = Json::array();
  for (const auto& e : t.chain)
    chain.push_back({{"value", e.value}, {"provenance", to_string(e.provenance)}, {"note", e.note}});
  Json j;
  j["value"] = t.value;
  j["provenance"] = to_string(t.provenance);
  j["chain"] = chain;
  return finished(std::move(j));
}

Json scan_json(const ScanReport& r) {
  Json j = header("gaussian-scan");
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["threshold"] = r.threshold;
  j["min_value"] = r.min_value;
  j["argmin_sigma"] = r.argmin_sigma;
  j["violations"] = r.violations;
  j["duan_violating"] = r.duan_violating;
  return finished(std::move(j));
}

}  // namespace hoepr
