#include "hoepr/criteria.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hoepr/fock_ops.hpp"
#include "hoepr/gaussian.hpp"
#include "hoepr/spectral.hpp"

namespace hoepr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Minimal eigenvalues Lambda of (x_a +- x_b)^(2n) + (p_a +- p_b)^(2n).
struct TableRow {
  int order;
  double value;
};
constexpr TableRow kBipartiteTable[] = {
    {2, 2.0}, {4, 5.5868}, {6, 23.624}, {8, 132.626}, {10, 927.171}, {12, 7757.88},
};

double table_value(int order) {
  for (const auto& row : kBipartiteTable)
    if (row.order == order) return row.value;
  throw std::out_of_range("no threshold for order " + std::to_string(order));
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

TwoModeOperator ladder_a(double shift) {
  return TwoModeOperator::term(0, 1, 0, 0) + TwoModeOperator::constant(-shift);
}
TwoModeOperator ladder_a_dag(double shift) {
  return TwoModeOperator::term(1, 0, 0, 0) + TwoModeOperator::constant(-shift);
}
TwoModeOperator ladder_b(double shift) {
  return TwoModeOperator::term(0, 0, 0, 1) + TwoModeOperator::constant(-shift);
}
TwoModeOperator ladder_b_dag(double shift) {
  return TwoModeOperator::term(0, 0, 1, 0) + TwoModeOperator::constant(-shift);
}

TwoModeOperator square(const TwoModeOperator& op) { return normal_product(op, op); }

// (da+^2 + s db^2)(da^2 + s db+^2) for real coefficient states, whose
// ladder means are real.
double centered_dbs(const BipartiteFockVector& v, Sign sign) {
  const double alpha = expectation(TwoModeOperator::term(0, 1, 0, 0), v);
  const double beta = expectation(TwoModeOperator::term(0, 0, 0, 1), v);
  const double s = sign_value(sign);
  const auto left = square(ladder_a_dag(alpha)) + square(ladder_b(beta)) * s;
  const auto right = square(ladder_a(alpha)) + square(ladder_b_dag(beta)) * s;
  return expectation(normal_product(left, right), v);
}

void check_id(const CriterionId& id) {
  std::visit(overloaded{
                 [](const DuanHigher& d) {
                   if (d.order < 2 || d.order % 2 != 0)
                     throw std::invalid_argument("duan_higher order must be even and >= 2");
                 },
                 [](const PowerCriterion& p) {
                   if (p.n < 1) throw std::invalid_argument("power criterion needs n >= 1");
                 },
                 [](const DbS&) {},
             },
             id);
}

double fock_value(const BipartiteFockVector& v, const CriterionId& id) {
  return std::visit(
      overloaded{
          [&](const DuanHigher& d) {
            const int s = sign_value(d.sign);
            return expectation(bipartite_quadrature_sum(d.order, s, -s), v);
          },
          [&](const PowerCriterion& p) {
            return expectation(power_criterion_operator(p.n, sign_value(p.sign)), v);
          },
          [&](const DbS& d) { return centered_dbs(v, d.sign); },
      },
      id);
}

double gaussian_value(const CovarianceMatrix& cov, const CriterionId& id) {
  return std::visit(
      overloaded{
          [&](const DuanHigher& d) { return gaussian_duan_higher(cov, d.order, d.sign); },
          [&](const PowerCriterion& p) {
            return gaussian_power_criterion(cov, p.n, p.sign, false).value;
          },
          [&](const DbS& d) { return criterion_dbS(cov, d.sign).value; },
      },
      id);
}

}  // namespace

std::string criterion_name(const CriterionId& id) {
  return std::visit(overloaded{
                        [](const DuanHigher&) { return std::string("duan_higher"); },
                        [](const PowerCriterion&) { return std::string("power"); },
                        [](const DbS&) { return std::string("dbS"); },
                    },
                    id);
}

int criterion_order(const CriterionId& id) {
  return std::visit(overloaded{
                        [](const DuanHigher& d) { return d.order; },
                        [](const PowerCriterion& p) { return p.n; },
                        [](const DbS&) { return 2; },
                    },
                    id);
}

Sign criterion_sign(const CriterionId& id) {
  return std::visit([](const auto& c) { return c.sign; }, id);
}

CriterionId with_sign(const CriterionId& id, Sign sign) {
  return std::visit(
      [sign](auto c) -> CriterionId {
        c.sign = sign;
        return c;
      },
      id);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::numeric_table: return "numeric_table";
    case Provenance::vacuum: return "vacuum";
  }
  return "unknown";
}

std::string to_string(Verdict v) { return v == Verdict::entangled ? "entangled" : "inconclusive"; }

Threshold threshold(const CriterionId& id) {
  check_id(id);
  return std::visit(
      overloaded{
          [](const DuanHigher& d) {
            Threshold t;
            if (d.order == 2) {
              t.chain = {{2.0, Provenance::analytic, "second-order sum of variances"}};
            } else if (d.order == 4) {
              t.chain = {
                  {5.7934, Provenance::analytic, "convexity bound 2 lambda4 + 3"},
                  {5.5868, Provenance::numeric_table, "minimal eigenvalue, partial transpose"},
                  {2.0 * (4.0 * std::numbers::sqrt2 - 3.0), Provenance::analytic,
                   "analytic bound 2(4 sqrt2 - 3)"},
              };
            } else if (d.order == 6) {
              t.chain = {
                  {23.624, Provenance::numeric_table, "minimal eigenvalue, partial transpose"},
                  {13.406, Provenance::analytic, "convexity bound, weaker"},
              };
            } else {
              t.chain = {{table_value(d.order), Provenance::numeric_table,
                          "minimal eigenvalue, partial transpose"}};
            }
            t.value = t.chain.front().value;
            t.provenance = t.chain.front().provenance;
            return t;
          },
          [](const PowerCriterion& p) {
            if (p.n > 20) throw std::out_of_range("power criterion order too large");
            Threshold t;
            t.value = factorial(p.n);
            t.provenance = Provenance::analytic;
            t.chain = {{t.value, t.provenance, "n! bound"}};
            return t;
          },
          [](const DbS&) {
            Threshold t;
            t.value = 2.0;
            t.provenance = Provenance::vacuum;
            t.chain = {{2.0, Provenance::vacuum, "attained by the two-mode vacuum"}};
            return t;
          },
      },
      id);
}

CriterionReport evaluate(const StateSpec& state, const CriterionId& id, std::size_t truncation) {
  validate(state);
  const auto th = threshold(id);
  CriterionReport r;
  r.criterion = id;
  r.threshold = th.value;
  r.provenance = th.provenance;
  if (const auto* g = std::get_if<GaussianState>(&state)) {
    r.value = gaussian_value(g->cov, id);
    r.truncation = 0;
  } else {
    if (truncation == 0) truncation = auto_truncation(state);
    const auto v = truncate_to_fock(state, truncation);
    r.value = fock_value(v, id);
    r.truncation = truncation;
  }
  if (!std::isfinite(r.value)) throw std::runtime_error("criterion value is not finite");
  r.margin = r.threshold - r.value;
  r.verdict = r.value < r.threshold - kVerdictTolerance ? Verdict::entangled
                                                        : Verdict::inconclusive;
  return r;
}

CriterionReport evaluate_best_sign(const StateSpec& state, const CriterionId& id,
                                   std::size_t truncation) {
  const auto plus = evaluate(state, with_sign(id, Sign::plus), truncation);
  const auto minus = evaluate(state, with_sign(id, Sign::minus), truncation);
  return minus.value < plus.value ? minus : plus;
}

std::vector<HierarchyCheck> hierarchy_consistency() {
  std::vector<HierarchyCheck> out;
  for (int low : {2, 4, 6}) {
    HierarchyCheck c;
    c.low_order = low;
    c.high_order = 2 * low;
    const double l = table_value(low);
    c.high_threshold = table_value(2 * low);
    c.half_square_low = 0.5 * l * l;
    c.holds = c.high_threshold > c.half_square_low;
    out.push_back(c);
  }
  for (const auto& c : out)
    if (!c.holds)
      throw std::logic_error("threshold hierarchy violated at order " +
                             std::to_string(c.high_order));
  return out;
}

namespace {

OperatorPolynomial extremum_operator() {
  OperatorPolynomial op;
  op.add({0, 4}, 1);
  op.add({4, 0}, 1);
  op.add({2, 2}, 6);
  op.add({1, 1}, 24);
  return op;
}

}  // namespace

double factorizable_fourth_order_extremum(std::size_t truncation) {
  const auto m = to_fock_matrix(extremum_operator(), truncation);
  SolverOptions opts;
  opts.kind = SolverKind::dense;
  const auto r = min_eigenpair(m, opts);
  return 6.0 + 0.5 * r.eigenvalue;
}

TrialScan trial_state_extremum() {
  const auto m = to_fock_matrix(extremum_operator(), 5);
  const double off = m.at(0, 4), diag = m.at(4, 4);
  auto value = [&](double c) { return 6.0 + 0.5 * (2.0 * c * off + c * c * diag) / (1.0 + c * c); };
  // coarse scan, then golden-section refinement around the best grid point
  double best_c = 0.0;
  for (int i = -1000; i <= 1000; ++i) {
    const double c = i * 1e-3;
    if (value(c) < value(best_c)) best_c = c;
  }
  double lo = best_c - 1e-3, hi = best_c + 1e-3;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 100; ++it) {
    const double c1 = hi - g * (hi - lo), c2 = lo + g * (hi - lo);
    if (value(c1) < value(c2))
      hi = c2;
    else
      lo = c1;
  }
  TrialScan t;
  t.c = 0.5 * (lo + hi);
  t.value = value(t.c);
  return t;
}

}  // namespace hoepr
