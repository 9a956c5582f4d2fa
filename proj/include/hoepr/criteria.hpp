#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "hoepr/sign.hpp"
#include "hoepr/states.hpp"

namespace hoepr {

/// (x_a + s x_b)^order + (p_a - s p_b)^order, order even.
struct DuanHigher {
  int order = 2;
  Sign sign = Sign::plus;
};

/// (a+^n + s b^n)(a^n + s b+^n).
struct PowerCriterion {
  int n = 2;
  Sign sign = Sign::plus;
};

/// Fourth-order form with centered operators da = a - <a>, db = b - <b>.
struct DbS {
  Sign sign = Sign::plus;
};

using CriterionId = std::variant<DuanHigher, PowerCriterion, DbS>;

std::string criterion_name(const CriterionId& id);
int criterion_order(const CriterionId& id);
Sign criterion_sign(const CriterionId& id);
CriterionId with_sign(const CriterionId& id, Sign sign);

enum class Provenance { analytic, numeric_table, vacuum };
std::string to_string(Provenance p);

struct ThresholdEntry {
  double value = 0.0;
  Provenance provenance = Provenance::analytic;
  std::string note;
};

/// The value used for verdicts plus weaker alternatives, strongest first.
struct Threshold {
  double value = 0.0;
  Provenance provenance = Provenance::analytic;
  std::vector<ThresholdEntry> chain;
};

/// Throws std::out_of_range for ids without a known separability bound.
Threshold threshold(const CriterionId& id);

/// A value below threshold - kVerdictTolerance reads as entangled.
inline constexpr double kVerdictTolerance = 1e-8;

enum class Verdict { entangled, inconclusive };
std::string to_string(Verdict v);

struct CriterionReport {
  CriterionId criterion;
  double value = 0.0;
  double threshold = 0.0;
  Provenance provenance = Provenance::analytic;
  Verdict verdict = Verdict::inconclusive;
  double margin = 0.0;         // threshold - value
  std::size_t truncation = 0;  // levels per mode; 0 for Gaussian moments
};

/// Evaluates the criterion on the state. Fock states use the given number of
/// levels per mode, or auto_truncation when it is 0.
CriterionReport evaluate(const StateSpec& state, const CriterionId& id, std::size_t truncation = 0);

/// Evaluates both signs and keeps the smaller value.
CriterionReport evaluate_best_sign(const StateSpec& state, const CriterionId& id,
                                   std::size_t truncation = 0);

struct HierarchyCheck {
  int low_order = 0;
  int high_order = 0;
  double high_threshold = 0.0;
  double half_square_low = 0.0;
  bool holds = false;
};

/// Lambda(4n) > Lambda(2n)^2 / 2 for the tabulated thresholds. Throws
/// std::logic_error if any check fails.
std::vector<HierarchyCheck> hierarchy_consistency();

/// 6 + min <a^4 + a+^4 + 6 a+^2 a^2 + 24 a+ a> / 2 over single-mode states.
double factorizable_fourth_order_extremum(std::size_t truncation = 200);

/// Same quantity restricted to the trial family N(|0> + c|4>).
struct TrialScan {
  double c = 0.0;
  double value = 0.0;
};
TrialScan trial_state_extremum();

}  // namespace hoepr
