#include <doctest.h>

#include <random>

#include "hoepr/criteria.hpp"
#include "hoepr/report.hpp"

using namespace hoepr;

namespace {

std::vector<CriterionId> all_criteria() {
  std::vector<CriterionId> ids;
  for (Sign s : {Sign::plus, Sign::minus}) {
    for (int order : {2, 4, 6}) ids.push_back(DuanHigher{order, s});
    for (int n : {1, 2, 3}) ids.push_back(PowerCriterion{n, s});
    ids.push_back(DbS{s});
  }
  return ids;
}

std::vector<double> random_mode(std::size_t k, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.2, 3.0);
  // decaying amplitudes keep the product state well inside the truncation
  const double decay = u(rng);
  std::vector<double> c(k);
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    c[i] = g(rng) * std::exp(-static_cast<double>(i) / decay);
    s += c[i] * c[i];
  }
  for (auto& v : c) v /= std::sqrt(s);
  return c;
}

}  // namespace

TEST_CASE("threshold catalog") {
  const auto t4 = threshold(DuanHigher{4, Sign::plus});
  CHECK(t4.value == 5.7934);
  REQUIRE(t4.chain.size() == 3);
  CHECK(t4.chain[1].value == 5.5868);
  CHECK(t4.chain[1].provenance == Provenance::numeric_table);
  CHECK(t4.chain[2].value == doctest::Approx(5.3137).epsilon(1e-5));
  CHECK(t4.chain[2].value < t4.chain[1].value);
  CHECK(t4.chain[1].value < t4.chain[0].value);

  const auto t6 = threshold(DuanHigher{6, Sign::minus});
  CHECK(t6.value == 23.624);
  CHECK(t6.chain.back().value == 13.406);

  CHECK(threshold(DuanHigher{12, Sign::plus}).value == 7757.88);
  CHECK(threshold(PowerCriterion{2, Sign::plus}).value == 2.0);
  CHECK(threshold(PowerCriterion{3, Sign::plus}).value == 6.0);
  CHECK(threshold(DbS{Sign::minus}).provenance == Provenance::vacuum);
  CHECK_THROWS_AS(threshold(DuanHigher{14, Sign::plus}), std::out_of_range);
  CHECK_THROWS_AS(threshold(DuanHigher{3, Sign::plus}), std::invalid_argument);
}

TEST_CASE("squeezed vacuum violates the higher-order conditions") {
  const auto r = evaluate(SqueezedVacuum{-0.9}, DuanHigher{4, Sign::plus});
  CHECK(r.value == doctest::Approx(2.0 * 3.0 * std::pow(0.1 / 1.9, 2)).epsilon(1e-8));
  CHECK(r.verdict == Verdict::entangled);
  CHECK(r.margin == doctest::Approx(r.threshold - r.value));
  for (int order : {2, 4, 6}) {
    CHECK(evaluate(SqueezedVacuum{-0.9}, DuanHigher{order, Sign::plus}).verdict == Verdict::entangled);
    CHECK(evaluate(SqueezedVacuum{0.9}, DuanHigher{order, Sign::minus}).verdict == Verdict::entangled);
    CHECK(evaluate(SqueezedVacuum{0.9}, DuanHigher{order, Sign::plus}).verdict == Verdict::inconclusive);
  }
}

TEST_CASE("psi_2 violates the fourth-order power condition") {
  const auto r = evaluate(PsiN{2, -0.9}, PowerCriterion{2, Sign::plus});
  CHECK(r.value == doctest::Approx(criterion_value_psi_n(2, -0.9, Sign::plus)).epsilon(1e-8));
  CHECK(r.value == doctest::Approx(0.3386824872).epsilon(1e-8));
  CHECK(r.verdict == Verdict::entangled);
  CHECK(evaluate(PsiN{2, 0.9}, PowerCriterion{2, Sign::minus}).verdict == Verdict::entangled);
}

TEST_CASE("vacuum saturates without being flagged") {
  BipartiteFockVector v(1, 1);
  v.at(0, 0) = 1.0;
  for (Sign s : {Sign::plus, Sign::minus}) {
    const auto r = evaluate(ExplicitState{v}, PowerCriterion{2, s});
    CHECK(r.value == doctest::Approx(2.0));
    CHECK(r.verdict == Verdict::inconclusive);
    CHECK(evaluate(GaussianState{}, DbS{s}).verdict == Verdict::inconclusive);
  }
  // 6 = vacuum value of the fourth-order sum, above every fourth-order threshold
  CHECK(evaluate(ExplicitState{v}, DuanHigher{4, Sign::plus}).value == doctest::Approx(6.0));
}

TEST_CASE("Gaussian and Fock routes agree on the squeezed vacuum") {
  const double r = 0.4;
  const GaussianState g{CovarianceMatrix::two_mode_squeezed(r)};
  const SqueezedVacuum s{std::tanh(r)};
  for (const auto& id : all_criteria()) {
    const auto a = evaluate(g, id);
    const auto b = evaluate(s, id, 200);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
  }
}

TEST_CASE("best-sign mode picks the smaller value") {
  const auto r = evaluate_best_sign(PsiN{2, 0.6}, PowerCriterion{2, Sign::plus});
  CHECK(criterion_sign(r.criterion) == Sign::minus);
  CHECK(r.value == doctest::Approx(criterion_value_psi_n(2, 0.6, Sign::minus)).epsilon(1e-8));
}

TEST_CASE("separable product states are never flagged") {
  std::mt19937_64 rng(2024);
  const std::size_t k = 20;
  const auto ids = all_criteria();
  std::size_t flagged = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_mode(k, rng), b = random_mode(k, rng);
    BipartiteFockVector v(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) v.at(i, j) = a[i] * b[j];
    for (const auto& id : ids) {
      const auto r = evaluate(ExplicitState{v}, id, k);
      if (r.verdict == Verdict::entangled) ++flagged;
      if (std::holds_alternative<PowerCriterion>(id)) CHECK(r.value > 0.0);
    }
  }
  CHECK(flagged == 0);
}

TEST_CASE("power criterion values are positive on entangled families") {
  for (double xi = -0.95; xi < 1.0; xi += 0.1)
    for (Sign s : {Sign::plus, Sign::minus}) {
      CHECK(evaluate(PsiN{2, xi}, PowerCriterion{2, s}).value > 0.0);
      CHECK(evaluate(Psi2Prime{xi}, PowerCriterion{2, s}).value > 0.0);
    }
}

TEST_CASE("threshold hierarchy") {
  const auto checks = hierarchy_consistency();
  REQUIRE(checks.size() == 3);
  CHECK(checks[0].half_square_low == doctest::Approx(2.0));
  CHECK(checks[1].half_square_low == doctest::Approx(15.606));
  CHECK(checks[2].half_square_low == doctest::Approx(279.05).epsilon(1e-4));
  for (const auto& c : checks) CHECK(c.holds);
}

TEST_CASE("factorizable fourth-order extremum") {
  const double e = factorizable_fourth_order_extremum();
  CHECK(e == doctest::Approx(5.9272).epsilon(2e-5));
  CHECK(e > 5.7934);
  CHECK(e < 6.0);
  const auto t = trial_state_extremum();
  CHECK(t.value == doctest::Approx(5.9286).epsilon(2e-5));
  CHECK(t.value > e);
  // the 2x2 problem has the closed form 6 + (84 - sqrt(84^2 + 24)) / 2
  CHECK(t.value == doctest::Approx(6.0 + 0.5 * (84.0 - std::sqrt(84.0 * 84.0 + 24.0))).epsilon(1e-12));
}

TEST_CASE("reports serialize with schema and finite numbers") {
  const auto r = evaluate(PsiN{2, -0.5}, PowerCriterion{2, Sign::plus});
  const auto j = criterion_json(r);
  CHECK(j["schema"] == 1);
  CHECK(j["criterion"] == "power");
  CHECK(j["verdict"] == "entangled");
  CHECK(j["truncation"].get<std::size_t>() == r.truncation);
  Json bad;
  bad["x"] = std::nan("");
  CHECK_THROWS_AS(require_finite(bad), std::domain_error);
  Json nested;
  nested["a"] = Json::array({1.0, std::numeric_limits<double>::infinity()});
  CHECK_THROWS_AS(require_finite(nested), std::domain_error);
}

TEST_CASE("Gaussian unphysical input is rejected") {
  CovarianceMatrix bad;
  bad.sigma(0, 0) = bad.sigma(2, 2) = 0.2;
  CHECK_THROWS_AS(evaluate(GaussianState{bad}, DbS{Sign::plus}), PhysicalityError);
}
