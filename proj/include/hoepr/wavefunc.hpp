#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hoepr/spectral.hpp"

namespace hoepr {

struct Grid {
  double min = -6.0;
  double max = 6.0;
  double step = 0.01;

  std::vector<double> points() const;
};

/// Hermite functions psi_0(x) .. psi_{count-1}(x). The recurrence runs on
/// rescaled values with a tracked exponent, so nothing underflows before the
/// Gaussian factor is applied.
std::vector<double> hermite_functions(std::size_t count, double x);

/// psi_k(0) for k < count.
std::vector<double> hermite_at_zero(std::size_t count);

/// Wave function sum_k c_k psi_k(x) of a Fock-coefficient vector.
class HermiteSeries {
 public:
  explicit HermiteSeries(FockVector coefficients);

  double operator()(double x) const;
  std::vector<double> evaluate(std::span<const double> xs) const;
  const FockVector& coefficients() const { return coeffs_; }

 private:
  FockVector coeffs_;
};

double hermite_eval(const FockVector& coefficients, double x);

/// Coefficients of psi' in the same basis; one entry longer than the input.
FockVector derivative_coefficients(const FockVector& coefficients);

/// psi^(m)(0) for m = 0 .. max_order. Odd orders come back as exact zeros when
/// the state has no odd component.
std::vector<double> derivatives_at_zero(const FockVector& coefficients, int max_order);

/// max over the grid of |x^(2n) psi + (-1)^n psi^(2n) - lambda psi|.
double ode_residual_max(const FockVector& coefficients, int order, double lambda,
                        const Grid& grid = {-5.0, 5.0, 0.01});

/// Gauss-Hermite rule with the Gaussian weight folded in: sum w_i f(x_i)
/// approximates the plain integral of f when f carries its own e^{-x^2}.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_hermite_functions_rule(std::size_t nodes = 400);

/// Integral of psi^2 via the 400-node rule.
double norm_squared_quadrature(const FockVector& coefficients);

// Bessel-Gauss approximant c J0(a x^2) exp(-b x^2).

/// Modulus k of the elliptic integral in the normalization constant.
double elliptic_modulus(double a, double b);
double normalization_c(double a, double b);
double bessel_gauss(double a, double b, double x);

enum class FitObjective { sup_norm, least_squares };

struct BesselGaussFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double max_rel_error = 0.0;  // max |psi_ab - psi| / max |psi| on the fit grid
  int evaluations = 0;
};

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BesselGaussFit fit_bessel_gauss(const FockVector& coefficients,
                                FitObjective objective = FitObjective::sup_norm,
                                const Grid& grid = {});

}  // namespace hoepr
