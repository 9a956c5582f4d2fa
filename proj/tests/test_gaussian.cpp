#include <doctest.h>

#include <cmath>

#include "hoepr/gaussian.hpp"
#include "hoepr/parallel.hpp"
#include "hoepr/states.hpp"

using namespace hoepr;

TEST_CASE("vacuum and two-mode squeezed states are physical") {
  CHECK(physicality(CovarianceMatrix::vacuum()));
  CHECK(physicality_margin(CovarianceMatrix::vacuum()) == doctest::Approx(0.0).scale(1.0));
  CHECK(physicality(CovarianceMatrix::two_mode_squeezed(1.2)));
  CovarianceMatrix bad;
  bad.sigma(0, 0) = 0.1;
  CHECK_FALSE(physicality(bad));
  CHECK_THROWS_AS(criterion_dbS(bad, Sign::plus), PhysicalityError);
}

TEST_CASE("from_values validates input") {
  std::vector<double> s(16, 0.0);
  s[0] = s[5] = s[10] = s[15] = 0.5;
  CHECK_NOTHROW(CovarianceMatrix::from_values(s));
  s[1] = 0.1;
  CHECK_THROWS_AS(CovarianceMatrix::from_values(s), std::invalid_argument);
  CHECK_THROWS_AS(CovarianceMatrix::from_values(std::vector<double>(15, 0.0)), std::invalid_argument);
}

TEST_CASE("random covariances are physical and reproducible") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto c = random_physical_covariance(seed);
    CHECK(physicality(c));
    CHECK(c.sigma == random_physical_covariance(seed).sigma);
  }
  CHECK(random_physical_covariance(1).sigma != random_physical_covariance(2).sigma);
}

TEST_CASE("phase normalization equalizes local variances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = random_physical_covariance(seed);
    const auto n = phase_normalize(c).cov;
    CHECK(n.sigma(0, 0) == doctest::Approx(n.sigma(2, 2)).epsilon(1e-10));
    CHECK(n.sigma(1, 1) == doctest::Approx(n.sigma(3, 3)).epsilon(1e-10));
    CHECK(physicality_margin(n) == doctest::Approx(physicality_margin(c)).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("closed-form fourth moments agree with pairings") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto c = phase_normalize(random_physical_covariance(seed)).cov;
    const auto closed = fourth_moments_closed(c);
    const auto wick = wick_fourth_moments(c);
    CHECK(closed.n_a2 == doctest::Approx(wick.n_a2).epsilon(1e-9).scale(1.0));
    CHECK(closed.anti_b2 == doctest::Approx(wick.anti_b2).epsilon(1e-9).scale(1.0));
    CHECK(closed.cross_abs2 == doctest::Approx(wick.cross_abs2).epsilon(1e-9).scale(1.0));
  }
  CovarianceMatrix squeezed;
  squeezed.sigma(0, 0) = 1.0;
  squeezed.sigma(2, 2) = 0.25;
  CHECK_THROWS_AS(fourth_moments_closed(squeezed), std::invalid_argument);
}

TEST_CASE("pairings agree with Fock contraction for the squeezed vacuum") {
  for (double r : {0.2, 0.6, 1.0}) {
    const auto cov = CovarianceMatrix::two_mode_squeezed(r);
    const auto v = truncate_to_fock(SqueezedVacuum{std::tanh(r)}, 300);
    const std::array<Ladder, 4> na{Ladder::a_dag, Ladder::a_dag, Ladder::a, Ladder::a};
    const std::array<Ladder, 4> ab{Ladder::b, Ladder::b, Ladder::b_dag, Ladder::b_dag};
    const std::array<Ladder, 4> cr{Ladder::a, Ladder::a, Ladder::b, Ladder::b};
    CHECK(wick_moment(cov, na).real() == doctest::Approx(expectation(TwoModeOperator::term(2, 2, 0, 0), v)).epsilon(1e-9));
    CHECK(wick_moment(cov, ab).real() ==
          doctest::Approx(expectation(TwoModeOperator::mode_b(anti_normal_power(2)), v)).epsilon(1e-9));
    CHECK(wick_moment(cov, cr).real() == doctest::Approx(expectation(TwoModeOperator::term(0, 2, 0, 2), v)).epsilon(1e-9));
    const std::array<Ladder, 6> six{Ladder::a_dag, Ladder::a_dag, Ladder::a_dag, Ladder::a, Ladder::a, Ladder::a};
    CHECK(wick_moment(cov, six).real() == doctest::Approx(expectation(TwoModeOperator::term(3, 3, 0, 0), v)).epsilon(1e-9));
  }
}

TEST_CASE("pairings include the mean") {
  CovarianceMatrix c;
  c.mean << 1.0, 0.0, 0.5, 0.0;  // alpha = (1 + 0.5 i)/sqrt2
  const std::array<Ladder, 1> a{Ladder::a};
  const auto m = wick_moment(c, a);
  CHECK(m.real() == doctest::Approx(1.0 / std::numbers::sqrt2));
  CHECK(m.imag() == doctest::Approx(0.5 / std::numbers::sqrt2));
  const std::array<Ladder, 2> n{Ladder::a_dag, Ladder::a};
  CHECK(wick_moment(c, n).real() == doctest::Approx(std::norm(m)));
}

TEST_CASE("vacuum attains the bound") {
  const auto v = criterion_dbS(CovarianceMatrix::vacuum(), Sign::plus);
  CHECK(v.value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(v.strict_value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(gaussian_power_criterion(CovarianceMatrix::vacuum(), 3, Sign::minus).value == doctest::Approx(6.0));
}

TEST_CASE("strict form is invariant under local phases") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto c = random_physical_covariance(seed);
    const auto base = criterion_dbS(c, Sign::plus).strict_value;
    const auto rot = rotate_phases(c, 0.37, -1.21);
    CHECK(criterion_dbS(rot, Sign::plus).strict_value == doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("signed form is invariant when the phases cancel") {
  const auto c = random_physical_covariance(11);
  const auto base = criterion_dbS(c, Sign::minus).value;
  CHECK(criterion_dbS(rotate_phases(c, 0.8, -0.8), Sign::minus).value == doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("Duan values and higher moments") {
  CHECK(duan_value(CovarianceMatrix::vacuum()) == doctest::Approx(2.0));
  const auto tms = CovarianceMatrix::two_mode_squeezed(0.5);
  CHECK(duan_value(tms) == doctest::Approx(2.0 * std::exp(-1.0)));
  // Gaussian fourth moment of x_a - x_b: 3 var^2
  const double var = std::exp(-1.0);
  CHECK(gaussian_duan_higher(tms, 4, Sign::minus) == doctest::Approx(2.0 * 3.0 * var * var));
  CHECK(gaussian_duan_higher(CovarianceMatrix::vacuum(), 6, Sign::plus) == doctest::Approx(2.0 * 15.0));
}

TEST_CASE("scan finds no violations and is deterministic") {
  const auto a = theorem3_scan(2000, 42);
  CHECK(a.violations == 0);
  CHECK(a.min_value >= 2.0 - 1e-9);
  CHECK(a.duan_violating >= 100);
  set_thread_cap(1);
  const auto b = theorem3_scan(2000, 42);
  set_thread_cap(0);
  CHECK(a.min_value == b.min_value);
  CHECK(a.argmin_sigma == b.argmin_sigma);
  CHECK(a.duan_violating == b.duan_violating);
}

TEST_CASE("scan at sixth order") {
  const auto r = theorem3_scan(300, 5, 3);
  CHECK(r.threshold == 6.0);
  CHECK(r.violations == 0);
}

TEST_CASE("parallel_for propagates exceptions") {
  set_thread_cap(4);
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
                    if (i == 57) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  set_thread_cap(0);
}
