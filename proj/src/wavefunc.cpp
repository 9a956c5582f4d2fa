#include "hoepr/wavefunc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "hoepr/special.hpp"

namespace hoepr {

namespace {

const double kPiQuarter = std::pow(std::numbers::pi, -0.25);

// Calls f(k, psi_k(x)) for k < count.
template <class F>
void for_each_hermite(std::size_t count, double x, F&& f) {
  if (count == 0) return;
  const double gauss = -0.5 * x * x;
  double log_scale = 0.0;
  double prev = 0.0, cur = kPiQuarter;
  double factor = std::exp(gauss);
  f(0, cur * factor);
  if (count == 1) return;
  double next = std::numbers::sqrt2 * x * cur;
  prev = cur;
  cur = next;
  f(1, cur * factor);
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const double kk = static_cast<double>(k);
    next = std::sqrt(2.0 / (kk + 1.0)) * x * cur - std::sqrt(kk / (kk + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e150) {
      cur *= 1e-150;
      prev *= 1e-150;
      log_scale += 150.0 * std::numbers::ln10;
      factor = std::exp(gauss + log_scale);
    }
    f(k + 1, cur * factor);
  }
}

double odd_norm(const FockVector& c) {
  double s = 0.0;
  for (std::size_t k = 1; k < c.size(); k += 2) s += c.coefficients[k] * c.coefficients[k];
  return std::sqrt(s);
}

struct NelderMead {
  std::function<double(const std::array<double, 2>&)> f;
  int evaluations = 0;

  std::pair<std::array<double, 2>, double> run(std::array<double, 2> x0, double step,
                                               int max_eval) {
    std::array<std::array<double, 2>, 3> s{x0, x0, x0};
    s[1][0] += step;
    s[2][1] += step;
    std::array<double, 3> v{};
    for (int i = 0; i < 3; ++i) v[i] = eval(s[i]);
    while (evaluations < max_eval) {
      std::array<int, 3> idx{0, 1, 2};
      std::sort(idx.begin(), idx.end(), [&](int l, int r) { return v[l] < v[r]; });
      auto sorted_s = s;
      auto sorted_v = v;
      for (int i = 0; i < 3; ++i) {
        s[i] = sorted_s[idx[i]];
        v[i] = sorted_v[idx[i]];
      }
      const double size = std::max(std::abs(s[1][0] - s[0][0]) + std::abs(s[1][1] - s[0][1]),
                                   std::abs(s[2][0] - s[0][0]) + std::abs(s[2][1] - s[0][1]));
      if (size < 1e-13) break;
      const std::array<double, 2> c{0.5 * (s[0][0] + s[1][0]), 0.5 * (s[0][1] + s[1][1])};
      auto along = [&](double t) {
        return std::array<double, 2>{c[0] + t * (s[2][0] - c[0]), c[1] + t * (s[2][1] - c[1])};
      };
      const auto xr = along(-1.0);
      const double vr = eval(xr);
      if (vr < v[0]) {
        const auto xe = along(-2.0);
        const double ve = eval(xe);
        if (ve < vr) {
          s[2] = xe;
          v[2] = ve;
        } else {
          s[2] = xr;
          v[2] = vr;
        }
      } else if (vr < v[1]) {
        s[2] = xr;
        v[2] = vr;
      } else {
        const auto xc = vr < v[2] ? along(-0.5) : along(0.5);
        const double vc = eval(xc);
        if (vc < std::min(vr, v[2])) {
          s[2] = xc;
          v[2] = vc;
        } else {
          for (int i = 1; i < 3; ++i) {
            s[i] = {0.5 * (s[i][0] + s[0][0]), 0.5 * (s[i][1] + s[0][1])};
            v[i] = eval(s[i]);
          }
        }
      }
    }
    const auto best = std::min_element(v.begin(), v.end()) - v.begin();
    return {s[static_cast<std::size_t>(best)], v[static_cast<std::size_t>(best)]};
  }

  double eval(const std::array<double, 2>& x) {
    ++evaluations;
    return f(x);
  }
};

}  // namespace

std::vector<double> Grid::points() const {
  if (!(step > 0.0) || max < min) throw std::invalid_argument("invalid grid");
  const auto n = static_cast<std::size_t>(std::llround((max - min) / step)) + 1;
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = min + static_cast<double>(i) * step;
  return xs;
}

std::vector<double> hermite_functions(std::size_t count, double x) {
  std::vector<double> out(count);
  for_each_hermite(count, x, [&](std::size_t k, double v) { out[k] = v; });
  return out;
}

std::vector<double> hermite_at_zero(std::size_t count) {
  std::vector<double> out(count, 0.0);
  if (count == 0) return out;
  out[0] = kPiQuarter;
  for (std::size_t k = 1; k + 1 < count; k += 2) {
    const double kk = static_cast<double>(k);
    out[k + 1] = -std::sqrt(kk / (kk + 1.0)) * out[k - 1];
  }
  return out;
}

HermiteSeries::HermiteSeries(FockVector coefficients) : coeffs_(std::move(coefficients)) {}

double HermiteSeries::operator()(double x) const { return hermite_eval(coeffs_, x); }

std::vector<double> HermiteSeries::evaluate(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = hermite_eval(coeffs_, xs[i]);
  return out;
}

double hermite_eval(const FockVector& coefficients, double x) {
  double s = 0.0;
  const auto& c = coefficients.coefficients;
  for_each_hermite(c.size(), x, [&](std::size_t k, double v) { s += c[k] * v; });
  return s;
}

FockVector derivative_coefficients(const FockVector& coefficients) {
  const auto& c = coefficients.coefficients;
  const std::size_t n = c.size();
  FockVector out{std::vector<double>(n + 1, 0.0)};
  // psi_k' = (sqrt(k) psi_{k-1} - sqrt(k+1) psi_{k+1}) / sqrt(2)
  for (std::size_t k = 0; k <= n; ++k) {
    double v = 0.0;
    if (k + 1 < n) v += std::sqrt(static_cast<double>(k + 1)) * c[k + 1];
    if (k >= 1 && k - 1 < n) v -= std::sqrt(static_cast<double>(k)) * c[k - 1];
    out.coefficients[k] = v / std::numbers::sqrt2;
  }
  return out;
}

std::vector<double> derivatives_at_zero(const FockVector& coefficients, int max_order) {
  if (max_order < 0) throw std::invalid_argument("derivative order must be >= 0");
  const bool even_state = odd_norm(coefficients) <= 1e-12 * std::max(1.0, coefficients.norm());
  std::vector<double> out;
  FockVector d = coefficients;
  const auto at0 = hermite_at_zero(coefficients.size() + static_cast<std::size_t>(max_order) + 1);
  for (int m = 0; m <= max_order; ++m) {
    if (m % 2 == 1 && even_state) {
      out.push_back(0.0);
    } else {
      double s = 0.0;
      for (std::size_t k = 0; k < d.size(); ++k) s += d.coefficients[k] * at0[k];
      out.push_back(s);
    }
    if (m < max_order) d = derivative_coefficients(d);
  }
  return out;
}

double ode_residual_max(const FockVector& coefficients, int order, double lambda,
                        const Grid& grid) {
  if (order < 2 || order % 2 != 0) throw std::invalid_argument("order must be even and >= 2");
  FockVector d = coefficients;
  for (int i = 0; i < order; ++i) d = derivative_coefficients(d);
  const double sign = (order / 2) % 2 == 0 ? 1.0 : -1.0;
  double worst = 0.0;
  for (double x : grid.points()) {
    const double psi = hermite_eval(coefficients, x);
    const double dn = hermite_eval(d, x);
    const double r = std::pow(x, order) * psi + sign * dn - lambda * psi;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

QuadratureRule gauss_hermite_functions_rule(std::size_t nodes) {
  if (nodes == 0) throw std::invalid_argument("quadrature needs at least one node");
  const auto n = static_cast<Eigen::Index>(nodes);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  QuadratureRule rule;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = es.eigenvalues()(i);
    double s = 0.0;
    for_each_hermite(nodes, x, [&](std::size_t, double v) { s += v * v; });
    rule.nodes.push_back(x);
    rule.weights.push_back(1.0 / s);
  }
  return rule;
}

double norm_squared_quadrature(const FockVector& coefficients) {
  static const QuadratureRule rule = gauss_hermite_functions_rule(400);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = hermite_eval(coefficients, rule.nodes[i]);
    s += rule.weights[i] * v * v;
  }
  return s;
}

double elliptic_modulus(double a, double b) {
  if (!(a >= 0.0) || !(b > 0.0)) throw std::invalid_argument("need a >= 0 and b > 0");
  // k^2 = (a - sqrt(2b) sqrt(R - b)) / (2a) with R = sqrt(a^2 + b^2), rewritten
  // so that small a does not cancel.
  const double r = std::hypot(a, b);
  const double rb = r + b;
  const double k2 = a * a / (2.0 * rb * rb * (1.0 + std::sqrt(2.0 * b / rb)));
  return std::sqrt(k2);
}

double normalization_c(double a, double b) {
  const double k = elliptic_modulus(a, b);
  const double rb = std::hypot(a, b) + b;
  return 0.5 * std::pow(std::numbers::pi, 0.75) * std::pow(rb, 0.25) / elliptic_K(k);
}

double bessel_gauss(double a, double b, double x) {
  return normalization_c(a, b) * bessel_j0(a * x * x) * std::exp(-b * x * x);
}

BesselGaussFit fit_bessel_gauss(const FockVector& coefficients, FitObjective objective,
                                const Grid& grid) {
  const auto xs = grid.points();
  const auto target = HermiteSeries(coefficients).evaluate(xs);
  double peak = 0.0;
  for (double v : target) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0)) throw FitError("target wave function vanishes on the grid");

  auto sup_error = [&](double a, double b) {
    const double c = normalization_c(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x2 = xs[i] * xs[i];
      const double v = c * bessel_j0(a * x2) * std::exp(-b * x2);
      worst = std::max(worst, std::abs(v - target[i]));
    }
    return worst / peak;
  };
  auto sq_error = [&](double a, double b) {
    const double c = normalization_c(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x2 = xs[i] * xs[i];
      const double d = c * bessel_j0(a * x2) * std::exp(-b * x2) - target[i];
      s += d * d;
    }
    return s;
  };
  auto cost = [&](double a, double b) {
    if (!(b > 1e-6) || !std::isfinite(a)) return std::numeric_limits<double>::infinity();
    return objective == FitObjective::sup_norm ? sup_error(std::abs(a), b)
                                               : sq_error(std::abs(a), b);
  };

  NelderMead nm;
  nm.f = [&](const std::array<double, 2>& p) { return cost(p[0], p[1]); };
  std::array<double, 2> best{0.3, 0.42};
  double best_value = cost(best[0], best[1]);
  for (int restart = 0; restart < 4; ++restart) {
    auto [x, v] = nm.run(best, restart == 0 ? 0.05 : 0.005, 4000 * (restart + 1));
    if (v <= best_value) {
      best = x;
      best_value = v;
    }
  }
  double a = std::abs(best[0]);
  double b = best[1];

  // a = 0 is a boundary optimum for the Gaussian case; refine b there.
  if (cost(0.0, b) <= best_value) {
    a = 0.0;
    double lo = std::max(1e-3, b - 0.05), hi = b + 0.05;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = cost(0.0, x1), f2 = cost(0.0, x2);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = cost(0.0, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = cost(0.0, x2);
      }
      nm.evaluations += 1;
    }
    const double bg = 0.5 * (lo + hi);
    if (cost(0.0, bg) <= cost(0.0, b)) b = bg;
  }
  if (!std::isfinite(best_value)) throw FitError("Bessel-Gauss fit did not find a finite optimum");

  BesselGaussFit fit;
  fit.a = a;
  fit.b = b;
  fit.c = normalization_c(a, b);
  fit.max_rel_error = sup_error(a, b);
  fit.evaluations = nm.evaluations;
  return fit;
}

}  // namespace hoepr
