#include "hoepr/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/digamma.hpp>

#include "hoepr/special.hpp"
#include "hoepr/wavefunc.hpp"

namespace hoepr {

namespace {

constexpr double kSeriesCutoff = 1e-4;
constexpr std::size_t kMaxAutoLevels = 20000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_open_unit(double v, const char* what) {
  if (!std::isfinite(v) || std::abs(v) >= 1.0)
    throw std::invalid_argument(std::string(what) + " must satisfy |value| < 1");
}

// 1 / prod_{j=1}^{n-1} (nk + j)
double psi_n_weight(int n, std::size_t k) {
  double w = 1.0;
  for (int j = 1; j < n; ++j) w /= static_cast<double>(n) * static_cast<double>(k) + j;
  return w;
}

// sum_k xi^(2k) / prod_{j<n} (nk + j)
double psi_n_series(int n, double xi) {
  const double x2 = xi * xi;
  if (n == 2) {
    if (std::abs(xi) < kSeriesCutoff) return 1.0 + x2 / 3.0 + x2 * x2 / 5.0;
    return std::atanh(xi) / xi;
  }
  if (std::abs(xi) == 1.0) {
    // Partial fractions turn the sum into digamma values at j/n.
    double s = 0.0;
    for (int j = 1; j < n; ++j) {
      double a = 1.0;
      for (int i = 1; i < n; ++i)
        if (i != j) a /= static_cast<double>(i - j);
      s += a * boost::math::digamma(static_cast<double>(j) / n);
    }
    return -s / n;
  }
  double sum = 0.0, power = 1.0;
  const double tail_factor = 1.0 / (1.0 - x2);
  for (std::size_t k = 0; k < 100000000; ++k) {
    const double term = power * psi_n_weight(n, k);
    sum += term;
    if (term * tail_factor < 1e-17 * sum) break;
    power *= x2;
  }
  return sum;
}

// xi^2 / -log(1 - xi^2), limit 1 at xi = 0
double psi2_prime_ratio(double xi) {
  const double x2 = xi * xi;
  if (std::abs(xi) < kSeriesCutoff) return 1.0 / (1.0 + x2 / 2.0 + x2 * x2 / 3.0);
  return x2 / -std::log1p(-x2);
}

// Smallest term count K with q^K / (1 - q) < 1e-12, q = v^2.
std::size_t geometric_terms(double v) {
  const double q = v * v;
  if (q == 0.0) return 1;
  const double target = 1e-12 * (1.0 - q);
  const double k = std::ceil(std::log(target) / std::log(q));
  return static_cast<std::size_t>(std::max(1.0, k));
}

BipartiteFockVector finish(BipartiteFockVector v, double kept_mass, const std::string& what) {
  const double tail = std::max(0.0, 1.0 - kept_mass);
  if (tail >= kMaxTailMass)
    throw TruncationError(what + ": discarded tail mass " + std::to_string(tail) +
                              " exceeds the limit; increase the truncation",
                          tail);
  v.normalize();
  return v;
}

double psi2_series(double xi, double x, double y) {
  const auto hx = hermite_functions(9, x);
  const auto hy = hermite_functions(8, y);
  const double norm = std::sqrt(1.0 / psi_n_series(2, xi));
  double s = 0.0, p = 1.0;
  for (std::size_t k = 0; k < 4; ++k, p *= xi)
    s += p / std::sqrt(2.0 * k + 1.0) * hx[2 * k + 1] * hy[2 * k];
  return norm * s;
}

double psi2_prime_series(double xi, double x, double y) {
  const auto hx = hermite_functions(9, x);
  const auto hy = hermite_functions(8, y);
  const double norm = std::sqrt(2.0 * psi2_prime_ratio(xi));
  double s = 0.0, p = 1.0;
  for (std::size_t k = 0; k < 4; ++k, p *= xi)
    s += p / std::sqrt(2.0 * k + 2.0) * hx[2 * k + 2] * hy[2 * k + 1];
  return norm * s;
}

}  // namespace

void validate(const StateSpec& spec) {
  std::visit(overloaded{
                 [](const SqueezedVacuum& s) { require_open_unit(s.lambda, "lambda"); },
                 [](const PsiN& s) {
                   if (s.n < 2) throw std::invalid_argument("psi_n needs n >= 2");
                   if (s.n == 2)
                     require_open_unit(s.xi, "xi");
                   else if (!std::isfinite(s.xi) || std::abs(s.xi) > 1.0)
                     throw std::invalid_argument("xi must satisfy |xi| <= 1");
                 },
                 [](const Psi2Prime& s) { require_open_unit(s.xi, "xi"); },
                 [](const ExplicitState& s) {
                   if (s.vector.dim_a == 0 || s.vector.dim_b == 0 ||
                       s.vector.coefficients.size() != s.vector.dim_a * s.vector.dim_b)
                     throw std::invalid_argument("explicit state has inconsistent dimensions");
                   for (double c : s.vector.coefficients)
                     if (!std::isfinite(c)) throw std::invalid_argument("non-finite coefficient");
                   if (s.vector.norm() == 0.0) throw std::invalid_argument("zero state");
                 },
                 [](const GaussianState& s) {
                   if (!physicality(s.cov)) throw PhysicalityError("covariance matrix is not physical");
                 },
             },
             spec);
}

std::string family_name(const StateSpec& spec) {
  return std::visit(overloaded{
                        [](const SqueezedVacuum&) { return std::string("squeezed_vacuum"); },
                        [](const PsiN&) { return std::string("psi_n"); },
                        [](const Psi2Prime&) { return std::string("psi2_prime"); },
                        [](const ExplicitState&) { return std::string("explicit"); },
                        [](const GaussianState&) { return std::string("gaussian"); },
                    },
                    spec);
}

std::size_t auto_truncation(const StateSpec& spec) {
  validate(spec);
  const std::size_t levels = std::visit(
      overloaded{
          [](const SqueezedVacuum& s) { return geometric_terms(s.lambda); },
          [](const PsiN& s) -> std::size_t {
            if (std::abs(s.xi) == 1.0)
              throw TruncationError("psi_n at |xi| = 1 has a power-law tail; no finite truncation",
                                    1.0);
            return static_cast<std::size_t>(s.n) * geometric_terms(s.xi);
          },
          [](const Psi2Prime& s) { return 2 * geometric_terms(s.xi) + 1; },
          [](const ExplicitState& s) { return std::max(s.vector.dim_a, s.vector.dim_b); },
          [](const GaussianState&) -> std::size_t {
            throw std::invalid_argument("Gaussian states have no finite Fock truncation");
          },
      },
      spec);
  if (levels > kMaxAutoLevels)
    throw TruncationError("required truncation " + std::to_string(levels) + " is too large", 1.0);
  return levels;
}

BipartiteFockVector truncate_to_fock(const StateSpec& spec, std::size_t levels) {
  validate(spec);
  if (levels == 0) throw std::invalid_argument("truncation must be positive");
  return std::visit(
      overloaded{
          [&](const SqueezedVacuum& s) {
            BipartiteFockVector v(levels, levels);
            const double n = std::sqrt(1.0 - s.lambda * s.lambda);
            double p = 1.0, kept = 0.0;
            for (std::size_t k = 0; k < levels; ++k, p *= s.lambda) {
              v.at(k, k) = n * p;
              kept += n * n * p * p;
            }
            return finish(std::move(v), kept, "squeezed_vacuum");
          },
          [&](const PsiN& s) {
            BipartiteFockVector v(levels, levels);
            const auto n = static_cast<std::size_t>(s.n);
            const double norm2 = 1.0 / psi_n_series(s.n, s.xi);
            double p = 1.0, kept = 0.0;
            for (std::size_t k = 0; n * k + n - 1 < levels; ++k, p *= s.xi) {
              const double w = psi_n_weight(s.n, k);
              v.at(n * k + n - 1, n * k) = std::sqrt(norm2 * w) * p;
              kept += norm2 * w * p * p;
            }
            return finish(std::move(v), kept, "psi_n");
          },
          [&](const Psi2Prime& s) {
            BipartiteFockVector v(levels, levels);
            const double norm2 = 2.0 * psi2_prime_ratio(s.xi);
            double p = 1.0, kept = 0.0;
            for (std::size_t k = 0; 2 * k + 2 < levels; ++k, p *= s.xi) {
              const double w = 1.0 / (2.0 * k + 2.0);
              v.at(2 * k + 2, 2 * k + 1) = std::sqrt(norm2 * w) * p;
              kept += norm2 * w * p * p;
            }
            return finish(std::move(v), kept, "psi2_prime");
          },
          [&](const ExplicitState& s) {
            const auto& in = s.vector;
            const double total = in.norm() * in.norm();
            BipartiteFockVector v(levels, levels);
            double kept = 0.0;
            for (std::size_t k = 0; k < std::min(levels, in.dim_a); ++k)
              for (std::size_t l = 0; l < std::min(levels, in.dim_b); ++l) {
                v.at(k, l) = in.at(k, l);
                kept += in.at(k, l) * in.at(k, l) / total;
              }
            return finish(std::move(v), kept, "explicit");
          },
          [](const GaussianState&) -> BipartiteFockVector {
            throw std::invalid_argument("Gaussian states have no finite Fock truncation");
          },
      },
      spec);
}

double squeezed_moment(int n, double lambda, Sign sign) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  require_open_unit(lambda, "lambda");
  // (2n)! / (2^n n!) = (2n - 1)!!
  double dfact = 1.0;
  for (int j = 1; j < 2 * n; j += 2) dfact *= j;
  const double s = sign_value(sign);
  return dfact * std::pow((1.0 + s * lambda) / (1.0 - s * lambda), n);
}

double psi_n_norm(int n, double xi) {
  validate(PsiN{n, xi});
  return 1.0 / std::sqrt(psi_n_series(n, xi));
}

double criterion_value_psi_n(int n, double xi, Sign sign) {
  validate(PsiN{n, xi});
  const double d = 1.0 - sign_value(sign) * xi;
  if (d == 0.0) throw std::domain_error("criterion value diverges at this endpoint");
  return n / (psi_n_series(n, xi) * d * d);
}

double criterion_value_psi2_prime(double xi, Sign sign) {
  require_open_unit(xi, "xi");
  const double s = sign_value(sign);
  const double d = 1.0 - s * xi;
  return 4.0 * psi2_prime_ratio(xi) * (2.0 - s * xi) / (d * d);
}

double psi2_wavefunction(double xi, double x, double y) {
  require_open_unit(xi, "xi");
  if (std::abs(xi) < kSeriesCutoff) return psi2_series(xi, x, y);
  y = std::abs(y);  // even in y
  const double e = 0.5 * (y * y - x * x);
  if (xi > 0.0) {
    const double r = std::sqrt(xi), d = std::sqrt(1.0 - xi);
    const double a = (y + x * r) / d, b = (y - x * r) / d;
    const double pre = 0.5 / std::sqrt(2.0 * std::atanh(xi));
    return pre * (scaled_erfc(b, e).real() - scaled_erfc(a, e).real());
  }
  const std::complex<double> z(y / std::sqrt(1.0 - xi), std::sqrt(-xi) * x / std::sqrt(1.0 - xi));
  const double pre = 1.0 / std::sqrt(-2.0 * std::atanh(xi));
  return -pre * scaled_erfc(z, e).imag();
}

double psi2_prime_wavefunction(double xi, double x, double y) {
  require_open_unit(xi, "xi");
  if (std::abs(xi) < kSeriesCutoff) return psi2_prime_series(xi, x, y);
  const double parity = y < 0.0 ? -1.0 : 1.0;  // odd in y
  y = std::abs(y);
  const double e = 0.5 * (y * y - x * x);
  const double l = std::sqrt(-std::log1p(-xi * xi));
  if (xi > 0.0) {
    const double r = std::sqrt(xi), d = std::sqrt(1.0 - xi);
    const double a = (y + x * r) / d, b = (y - x * r) / d;
    const double v = scaled_erfc(a, e).real() + scaled_erfc(b, e).real() -
                     2.0 * scaled_erfc(y, e).real();
    return parity * v / (2.0 * l);
  }
  const std::complex<double> z(y / std::sqrt(1.0 - xi), std::sqrt(-xi) * x / std::sqrt(1.0 - xi));
  return parity * (scaled_erfc(y, e).real() - scaled_erfc(z, e).real()) / l;
}

double expectation(const TwoModeOperator& op, const BipartiteFockVector& state) {
  struct Entry {
    std::size_t k, l;
    double c;
  };
  std::vector<Entry> nonzero;
  for (std::size_t k = 0; k < state.dim_a; ++k)
    for (std::size_t l = 0; l < state.dim_b; ++l)
      if (state.at(k, l) != 0.0) nonzero.push_back({k, l, state.at(k, l)});

  double total = 0.0;
  for (const auto& [m, coeff] : op.terms()) {
    const int pa = m.a.creators, qa = m.a.annihilators;
    const int pb = m.b.creators, qb = m.b.annihilators;
    double partial = 0.0;
    for (const auto& e : nonzero) {
      if (e.k < static_cast<std::size_t>(qa) || e.l < static_cast<std::size_t>(qb)) continue;
      const std::size_t k2 = e.k - static_cast<std::size_t>(qa) + static_cast<std::size_t>(pa);
      const std::size_t l2 = e.l - static_cast<std::size_t>(qb) + static_cast<std::size_t>(pb);
      if (k2 >= state.dim_a || l2 >= state.dim_b) continue;
      const double bra = state.at(k2, l2);
      if (bra == 0.0) continue;
      partial += bra * e.c * monomial_element(pa, qa, e.k) * monomial_element(pb, qb, e.l);
    }
    total += coeff * partial;
  }
  const double n2 = state.norm() * state.norm();
  return total / n2;
}

}  // namespace hoepr
