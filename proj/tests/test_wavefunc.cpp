#include <doctest.h>

#include <cmath>

#include "hoepr/spectral.hpp"
#include "hoepr/wavefunc.hpp"
#include "oracles.hpp"

using namespace hoepr;

TEST_CASE("Hermite functions match the plain recurrence") {
  for (double x : {-5.0, -1.3, 0.0, 0.7, 4.0}) {
    const auto got = hermite_functions(80, x);
    const auto want = oracle::hermite(80, x);
    for (std::size_t k = 0; k < 80; ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12).scale(1e-3));
  }
}

TEST_CASE("Hermite functions stay finite far out") {
  const auto h = hermite_functions(3000, 60.0);
  for (double v : h) CHECK(std::isfinite(v));
  const auto z = hermite_at_zero(6);
  CHECK(z[0] == doctest::Approx(std::pow(std::numbers::pi, -0.25)));
  CHECK(z[1] == 0.0);
  CHECK(z[2] == doctest::Approx(-std::pow(std::numbers::pi, -0.25) / std::numbers::sqrt2));
}

TEST_CASE("Hermite functions are orthonormal under the quadrature rule") {
  const auto rule = gauss_hermite_functions_rule(200);
  for (std::size_t j : {0u, 3u, 10u, 57u})
    for (std::size_t k : {0u, 3u, 10u, 57u}) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const auto h = hermite_functions(60, rule.nodes[i]);
        s += rule.weights[i] * h[j] * h[k];
      }
      CHECK(s == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("vacuum derivatives at zero") {
  FockVector v{{1.0}};
  const auto d = derivatives_at_zero(v, 4);
  const double c = std::pow(std::numbers::pi, -0.25);
  CHECK(d[0] == doctest::Approx(c));
  CHECK(d[1] == 0.0);
  CHECK(d[2] == doctest::Approx(-c));
  CHECK(d[4] == doctest::Approx(3.0 * c));
}

TEST_CASE("derivative coefficients agree with finite differences") {
  const auto r = solve_order(6, 300);
  const auto c = r.fock_vector();
  const auto dc = derivative_coefficients(c);
  CHECK(dc.size() == c.size() + 1);
  const double h = 1e-5;
  for (double x : {-1.0, 0.3, 2.0}) {
    const double fd = (hermite_eval(c, x + h) - hermite_eval(c, x - h)) / (2 * h);
    CHECK(hermite_eval(dc, x) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("eigenfunctions are normalized and solve the differential equation") {
  for (int order : {4, 6, 8, 10, 12}) {
    const auto r = solve_order(order, 400);
    CHECK(norm_squared_quadrature(r.fock_vector()) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ode_residual_max(r.fock_vector(), order, r.eigenvalue) < 1e-8 * r.eigenvalue);
  }
}

TEST_CASE("Bessel-Gauss normalization") {
  // a = 0 reduces to a normalized Gaussian
  CHECK(normalization_c(0.0, 0.5) == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-14));
  CHECK(elliptic_modulus(0.0, 0.5) == 0.0);
  // squared integral of c J0(a x^2) exp(-b x^2) is one
  for (auto [a, b] : {std::pair{0.345424, 0.402533}, std::pair{0.297065, 0.429728}}) {
    const double c = normalization_c(a, b);
    std::vector<double> x, w;
    oracle::gauss_legendre(400, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double t = 8.0 * x[i];
      const double f = bessel_gauss(a, b, t);
      s += 8.0 * w[i] * f * f;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(bessel_gauss(a, b, 0.0) == doctest::Approx(c));
  }
  CHECK(normalization_c(0.345424, 0.402533) == doctest::Approx(0.73157482).epsilon(1e-7));
}

TEST_CASE("fit of the Gaussian ground state is exact") {
  const auto fit = fit_bessel_gauss(solve_order(2, 20).fock_vector());
  CHECK(fit.a == 0.0);
  CHECK(fit.b == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(fit.c == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-8));
  CHECK(fit.max_rel_error < 1e-7);
}

TEST_CASE("Bessel-Gauss fits are accurate to a fraction of a percent") {
  for (int order : {4, 8, 12}) {
    const auto c = solve_order(order, 400).fock_vector();
    const auto sup = fit_bessel_gauss(c);
    const auto ls = fit_bessel_gauss(c, FitObjective::least_squares);
    CHECK(sup.max_rel_error < 0.005);
    CHECK(sup.max_rel_error <= ls.max_rel_error + 1e-9);
  }
}

TEST_CASE("grid points") {
  const Grid g{-1.0, 1.0, 0.5};
  const auto p = g.points();
  REQUIRE(p.size() == 5);
  CHECK(p.front() == -1.0);
  CHECK(p.back() == doctest::Approx(1.0));
}
