#include <doctest.h>

#include <cmath>

#include "hoepr/fock_ops.hpp"
#include "hoepr/states.hpp"
#include "oracles.hpp"

using namespace hoepr;

namespace {

const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

double max_grid_error(double (*f)(double, double, double), double xi, const BipartiteFockVector& v,
                      double step) {
  double err = 0.0;
  for (double x = -4.0; x <= 4.0 + 1e-9; x += step)
    for (double y = -4.0; y <= 4.0 + 1e-9; y += step)
      err = std::max(err, std::abs(f(xi, x, y) - oracle::series_2d(v.coefficients, v.dim_a, x, y)));
  return err;
}

}  // namespace

TEST_CASE("truncation of the limiting states") {
  auto v = truncate_to_fock(SqueezedVacuum{0.0}, 5);
  CHECK(v.at(0, 0) == 1.0);
  CHECK(v.norm() == doctest::Approx(1.0));

  v = truncate_to_fock(PsiN{2, 0.0}, 2);
  CHECK(v.at(1, 0) == doctest::Approx(1.0));

  v = truncate_to_fock(Psi2Prime{0.0}, 3);
  CHECK(v.at(2, 1) == doctest::Approx(1.0));
}

TEST_CASE("truncated states are normalized") {
  for (double p : {-0.7, -0.3, 0.3, 0.7}) {
    for (const StateSpec& s : {StateSpec{SqueezedVacuum{p}}, StateSpec{PsiN{2, p}}, StateSpec{PsiN{3, p}},
                               StateSpec{Psi2Prime{p}}}) {
      const auto v = truncate_to_fock(s, auto_truncation(s));
      CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("heavy tails are reported") {
  try {
    truncate_to_fock(SqueezedVacuum{0.99}, 50);
    FAIL("expected a truncation error");
  } catch (const TruncationError& e) {
    CHECK(e.tail_mass() == doctest::Approx(std::pow(0.99, 100)).epsilon(1e-6));
  }
  CHECK_THROWS_AS(auto_truncation(PsiN{3, 1.0}), TruncationError);
  CHECK_THROWS_AS(truncate_to_fock(PsiN{3, 1.0}, 400), TruncationError);
}

TEST_CASE("domains") {
  CHECK_THROWS_AS(validate(SqueezedVacuum{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(PsiN{2, 1.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(PsiN{3, -1.0}));
  CHECK_THROWS_AS(validate(PsiN{3, 1.01}), std::invalid_argument);
  CHECK_THROWS_AS(validate(PsiN{1, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(psi_n_norm(2, -1.0), std::invalid_argument);
}

TEST_CASE("squeezed moments") {
  CHECK(squeezed_moment(1, 0.0, Sign::plus) == doctest::Approx(1.0));
  CHECK(squeezed_moment(2, 0.5, Sign::minus) == doctest::Approx(1.0 / 3.0));
  CHECK(squeezed_moment(2, -0.9, Sign::plus) == doctest::Approx(3.0 * std::pow(0.1 / 1.9, 2)));
}

TEST_CASE("squeezed moments against truncated Fock quadratic forms") {
  for (double lam : {-0.9, -0.7, -0.3, 0.3, 0.7, 0.9})
    for (int n = 1; n <= 3; ++n)
      for (Sign s : {Sign::plus, Sign::minus}) {
        const auto v = truncate_to_fock(SqueezedVacuum{lam}, 200);
        const auto op = expand_bipartite_quadrature_power(Quadrature::X, sign_value(s), 2 * n);
        CHECK(expectation(op, v) == doctest::Approx(squeezed_moment(n, lam, s)).epsilon(1e-6));
      }
}

TEST_CASE("psi_n normalization") {
  CHECK(psi_n_norm(2, 0.0) == doctest::Approx(1.0));
  CHECK(psi_n_norm(3, 0.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(psi_n_norm(2, 0.5) == doctest::Approx(std::sqrt(0.5 / std::atanh(0.5))));
  const double n3 = psi_n_norm(3, 1.0);
  CHECK(n3 * n3 == doctest::Approx(3.0 * std::sqrt(3.0) / std::numbers::pi).epsilon(1e-13));
  CHECK(n3 * n3 < 2.0);
  // endpoint by digamma agrees with the direct series close to it
  CHECK(std::pow(psi_n_norm(4, 0.999999), 2) == doctest::Approx(std::pow(psi_n_norm(4, 1.0), 2)).epsilon(1e-5));
  CHECK(std::pow(psi_n_norm(3, -1.0), 2) == doctest::Approx(n3 * n3));
}

TEST_CASE("closed-form criterion values against Fock contraction") {
  for (double xi : {-0.7, -0.3, 0.3, 0.7})
    for (Sign s : {Sign::plus, Sign::minus}) {
      const auto v2 = truncate_to_fock(PsiN{2, xi}, 400);
      CHECK(expectation(power_criterion_operator(2, sign_value(s)), v2) ==
            doctest::Approx(criterion_value_psi_n(2, xi, s)).epsilon(1e-8));
      const auto v3 = truncate_to_fock(PsiN{3, xi}, 400);
      CHECK(expectation(power_criterion_operator(3, sign_value(s)), v3) ==
            doctest::Approx(criterion_value_psi_n(3, xi, s)).epsilon(1e-8));
      const auto vp = truncate_to_fock(Psi2Prime{xi}, 400);
      CHECK(expectation(power_criterion_operator(2, sign_value(s)), vp) ==
            doctest::Approx(criterion_value_psi2_prime(xi, s)).epsilon(1e-8));
    }
}

TEST_CASE("criterion limits at small xi") {
  CHECK(criterion_value_psi_n(2, 0.0, Sign::plus) == doctest::Approx(2.0));
  CHECK(criterion_value_psi_n(2, 1e-6, Sign::minus) == doctest::Approx(2.0).epsilon(1e-5));
  // |2,1>: <a+^2 a^2> + <b^2 b+^2> = 2 + 6
  CHECK(criterion_value_psi2_prime(0.0, Sign::plus) == doctest::Approx(8.0));
  const auto v = truncate_to_fock(Psi2Prime{0.0}, 4);
  CHECK(expectation(power_criterion_operator(2, 1), v) == doctest::Approx(8.0));
  // continuity across the series switch
  for (double xi : {0.99e-4, 1.01e-4})
    CHECK(criterion_value_psi2_prime(xi, Sign::minus) == doctest::Approx(8.0 - 12.0 * xi).epsilon(1e-7));
}

TEST_CASE("sign regions") {
  for (double xi = -0.95; xi < 0.0; xi += 0.05) CHECK(criterion_value_psi_n(2, xi, Sign::plus) < 2.0);
  for (double xi = 0.05; xi < 1.0; xi += 0.05) CHECK(criterion_value_psi_n(2, xi, Sign::minus) < 2.0);
  CHECK(criterion_value_psi_n(2, -0.9, Sign::plus) == doctest::Approx(0.33868248723925));
  CHECK(criterion_value_psi2_prime(0.9, Sign::minus) ==
        doctest::Approx(4.0 * 0.81 * 2.9 / (-std::log(0.19) * 3.61)));
  CHECK(criterion_value_psi_n(3, 1.0, Sign::minus) < 1.5);
  CHECK(criterion_value_psi2_prime(-0.999, Sign::plus) > criterion_value_psi2_prime(-0.999999, Sign::plus));
}

TEST_CASE("criterion values stay positive") {
  for (double xi = -0.99; xi < 1.0; xi += 0.03)
    for (Sign s : {Sign::plus, Sign::minus}) {
      CHECK(criterion_value_psi_n(2, xi, s) > 0.0);
      CHECK(criterion_value_psi_n(4, xi, s) > 0.0);
      CHECK(criterion_value_psi2_prime(xi, s) > 0.0);
    }
}

TEST_CASE("wave functions against two-dimensional Hermite series") {
  for (double xi : {-0.7, -0.5, -0.3, 0.3, 0.5, 0.7}) {
    const auto v = truncate_to_fock(PsiN{2, xi}, 300);
    CHECK(max_grid_error(psi2_wavefunction, xi, v, 0.2) < 1e-8);
    const auto w = truncate_to_fock(Psi2Prime{xi}, 300);
    CHECK(max_grid_error(psi2_prime_wavefunction, xi, w, 0.2) < 1e-8);
  }
}

TEST_CASE("wave functions at xi = 0") {
  for (double x = -4.0; x <= 4.0; x += 0.5)
    for (double y = -4.0; y <= 4.0; y += 0.5) {
      const double g = std::exp(-(x * x + y * y) / 2);
      CHECK(psi2_wavefunction(0.0, x, y) == doctest::Approx(std::sqrt(2.0) * kInvSqrtPi * x * g).epsilon(1e-12).scale(1e-10));
      CHECK(psi2_prime_wavefunction(0.0, x, y) ==
            doctest::Approx(kInvSqrtPi * (2 * x * x - 1) * y * g).epsilon(1e-12).scale(1e-10));
    }
}

TEST_CASE("wave function parities") {
  for (double xi : {-0.6, 0.4})
    for (double x : {-1.5, 0.2, 2.0})
      for (double y : {0.3, 1.7}) {
        CHECK(psi2_prime_wavefunction(xi, x, -y) == doctest::Approx(-psi2_prime_wavefunction(xi, x, y)));
        CHECK(psi2_wavefunction(xi, -x, y) == doctest::Approx(-psi2_wavefunction(xi, x, y)));
      }
}

TEST_CASE("wave functions stay finite near |xi| = 1") {
  for (double xi : {-0.999, 0.999})
    for (double x = -6.0; x <= 6.0; x += 0.75)
      for (double y = -6.0; y <= 6.0; y += 0.75) {
        CHECK(std::isfinite(psi2_wavefunction(xi, x, y)));
        CHECK(std::isfinite(psi2_prime_wavefunction(xi, x, y)));
      }
}

TEST_CASE("explicit states are padded or checked") {
  BipartiteFockVector v(2, 2);
  v.at(0, 0) = 1.0;
  v.at(1, 1) = 1.0;
  const auto t = truncate_to_fock(ExplicitState{v}, 4);
  CHECK(t.dim_a == 4);
  CHECK(t.at(1, 1) == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(truncate_to_fock(ExplicitState{v}, 1), TruncationError);
  CHECK_THROWS_AS(truncate_to_fock(GaussianState{}, 4), std::invalid_argument);
}
