#include "hoepr/fock_ops.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hoepr/banded_matrix.hpp"

namespace hoepr {

namespace {

using boost::multiprecision::cpp_int;

cpp_int factorial(int n) {
  cpp_int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

cpp_int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

void require_even_order(int order) {
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("quadrature order must be even and >= 2, got " +
                                std::to_string(order));
}

void require_sign(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
}

std::string monomial_text(const Monomial& m) {
  std::string s;
  auto part = [&](const char* sym, int power) {
    if (power == 0) return;
    if (!s.empty()) s += ' ';
    s += sym;
    if (power > 1) s += '^' + std::to_string(power);
  };
  part("a+", m.creators);
  part("a", m.annihilators);
  return s;
}

}  // namespace

OperatorPolynomial OperatorPolynomial::constant(const Rational& value) {
  OperatorPolynomial p;
  p.add({0, 0}, value);
  return p;
}

OperatorPolynomial OperatorPolynomial::monomial(int creators, int annihilators,
                                                const Rational& coefficient) {
  OperatorPolynomial p;
  p.add({creators, annihilators}, coefficient);
  return p;
}

void OperatorPolynomial::add(Monomial m, const Rational& coefficient) {
  if (m.creators < 0 || m.annihilators < 0)
    throw std::invalid_argument("monomial powers must be nonnegative");
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational OperatorPolynomial::coefficient(int creators, int annihilators) const {
  auto it = terms_.find({creators, annihilators});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool OperatorPolynomial::is_hermitian() const {
  for (const auto& [m, c] : terms_)
    if (coefficient(m.annihilators, m.creators) != c) return false;
  return true;
}

int OperatorPolynomial::max_offset() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, std::abs(m.creators - m.annihilators));
  return d;
}

OperatorPolynomial& OperatorPolynomial::operator+=(const OperatorPolynomial& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

OperatorPolynomial& OperatorPolynomial::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= factor;
  return *this;
}

std::string OperatorPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    auto text = monomial_text(m);
    if (text.empty()) {
      os << c;
    } else if (c == 1) {
      os << text;
    } else {
      os << '(' << c << ") " << text;
    }
  }
  return os.str();
}

OperatorPolynomial normal_product(const OperatorPolynomial& lhs, const OperatorPolynomial& rhs) {
  OperatorPolynomial out;
  for (const auto& [l, cl] : lhs.terms()) {
    for (const auto& [r, cr] : rhs.terms()) {
      const int q = l.annihilators;
      const int s = r.creators;
      for (int k = 0; k <= std::min(q, s); ++k) {
        Rational w = Rational(binomial(q, k) * binomial(s, k) * factorial(k));
        out.add({l.creators + s - k, q - k + r.annihilators}, cl * cr * w);
      }
    }
  }
  return out;
}

OperatorPolynomial anti_normal_power(int n) {
  if (n < 0) throw std::invalid_argument("power must be nonnegative");
  OperatorPolynomial out;
  const cpp_int nf = factorial(n);
  for (int k = 0; k <= n; ++k) {
    const cpp_int d = factorial(n - k);
    out.add({n - k, n - k}, Rational(nf * nf, factorial(k) * d * d));
  }
  return out;
}

OperatorPolynomial expand_ladder_power(int sign, int power) {
  require_sign(sign);
  if (power < 0) throw std::invalid_argument("power must be nonnegative");
  OperatorPolynomial out;
  const cpp_int mf = factorial(power);
  for (int k = 0; k <= power; ++k) {
    for (int l = 0; 2 * l <= power - k; ++l) {
      const int p = power - k - 2 * l;
      Rational c(mf, factorial(k) * (cpp_int(1) << l) * factorial(l) * factorial(p));
      if (sign < 0 && (power - k - l) % 2 != 0) c = -c;
      out.add({p, k}, c);
    }
  }
  return out;
}

OperatorPolynomial expand_quadrature_power(Quadrature which, int order) {
  require_even_order(order);
  const int n = order / 2;
  const int sign = which == Quadrature::X ? 1 : -1;
  Rational scale(cpp_int(1), cpp_int(1) << n);
  if (which == Quadrature::P && n % 2 != 0) scale = -scale;
  return expand_ladder_power(sign, order) * scale;
}

OperatorPolynomial expand_sum(int order) {
  return expand_quadrature_power(Quadrature::X, order) +
         expand_quadrature_power(Quadrature::P, order);
}

Rational vacuum_expectation_exact(int order) {
  require_even_order(order);
  const int n = order / 2;
  return Rational(factorial(order), (cpp_int(1) << (order - 1)) * factorial(n));
}

double vacuum_expectation(int order) {
  require_even_order(order);
  double v = 2.0;
  for (int j = 1; j <= order / 2; ++j) v *= (2.0 * j - 1.0) / 2.0;
  return v;
}

double monomial_element(int creators, int annihilators, std::size_t k) {
  if (creators < 0 || annihilators < 0) throw std::invalid_argument("negative power");
  const auto q = static_cast<std::size_t>(annihilators);
  if (k < q) return 0.0;
  const std::size_t base = k - q;
  double e = 1.0;
  for (std::size_t j = base + 1; j <= k; ++j) e *= std::sqrt(static_cast<double>(j));
  for (std::size_t j = base + 1; j <= base + static_cast<std::size_t>(creators); ++j)
    e *= std::sqrt(static_cast<double>(j));
  return e;
}

BandedFockMatrix to_fock_matrix(const OperatorPolynomial& poly, std::size_t truncation) {
  if (truncation == 0) throw std::invalid_argument("truncation must be >= 1");
  if (!poly.is_hermitian()) throw std::invalid_argument("polynomial is not Hermitian");
  std::optional<int> tag;
  BandedFockMatrix m(truncation, tag);
  // Upper triangle only: M(i, i + d) = <i| a+^p a^q |i + d> with d = q - p.
  for (const auto& [mono, c] : poly.terms()) {
    if (mono.annihilators < mono.creators) continue;
    const auto d = static_cast<std::size_t>(mono.annihilators - mono.creators);
    if (d >= truncation) continue;
    const double cf = c.convert_to<double>();
    for (std::size_t i = 0; i + d < truncation; ++i) {
      const double e = monomial_element(mono.creators, mono.annihilators, i + d);
      if (e != 0.0) m.add(i, d, cf * e);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

TwoModeOperator TwoModeOperator::constant(double value) {
  TwoModeOperator o;
  o.add({{0, 0}, {0, 0}}, value);
  return o;
}

TwoModeOperator TwoModeOperator::mode_a(const OperatorPolynomial& poly) {
  TwoModeOperator o;
  for (const auto& [m, c] : poly.terms()) o.add({m, {0, 0}}, c.convert_to<double>());
  return o;
}

TwoModeOperator TwoModeOperator::mode_b(const OperatorPolynomial& poly) {
  TwoModeOperator o;
  for (const auto& [m, c] : poly.terms()) o.add({{0, 0}, m}, c.convert_to<double>());
  return o;
}

TwoModeOperator TwoModeOperator::term(int pa, int qa, int pb, int qb, double coefficient) {
  TwoModeOperator o;
  o.add({{pa, qa}, {pb, qb}}, coefficient);
  return o;
}

void TwoModeOperator::add(const TwoModeMonomial& m, double coefficient) {
  if (coefficient == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double TwoModeOperator::coefficient(int pa, int qa, int pb, int qb) const {
  auto it = terms_.find({{pa, qa}, {pb, qb}});
  return it == terms_.end() ? 0.0 : it->second;
}

TwoModeOperator& TwoModeOperator::operator+=(const TwoModeOperator& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

TwoModeOperator& TwoModeOperator::operator*=(double factor) {
  for (auto& [m, c] : terms_) c *= factor;
  return *this;
}

TwoModeOperator normal_product(const TwoModeOperator& lhs, const TwoModeOperator& rhs) {
  TwoModeOperator out;
  for (const auto& [l, cl] : lhs.terms()) {
    for (const auto& [r, cr] : rhs.terms()) {
      auto pa = normal_product(OperatorPolynomial::monomial(l.a.creators, l.a.annihilators),
                               OperatorPolynomial::monomial(r.a.creators, r.a.annihilators));
      auto pb = normal_product(OperatorPolynomial::monomial(l.b.creators, l.b.annihilators),
                               OperatorPolynomial::monomial(r.b.creators, r.b.annihilators));
      for (const auto& [ma, ca] : pa.terms())
        for (const auto& [mb, cb] : pb.terms())
          out.add({ma, mb}, cl * cr * ca.convert_to<double>() * cb.convert_to<double>());
    }
  }
  return out;
}

TwoModeOperator expand_bipartite_quadrature_power(Quadrature which, int sign, int order) {
  require_even_order(order);
  require_sign(sign);
  const int n = order / 2;
  // (x_a + s x_b)^(2n) = 2^-n sum_j C(2n,j) s^(2n-j) Y_a^j Y_b^(2n-j), Y = a + a+;
  // the p version uses Z = a - a+ and an extra (-1)^n.
  const int ladder_sign = which == Quadrature::X ? 1 : -1;
  Rational scale(cpp_int(1), cpp_int(1) << n);
  if (which == Quadrature::P && n % 2 != 0) scale = -scale;
  TwoModeOperator out;
  for (int j = 0; j <= order; ++j) {
    Rational c = scale * Rational(binomial(order, j));
    if (sign < 0 && (order - j) % 2 != 0) c = -c;
    const auto ya = expand_ladder_power(ladder_sign, j);
    const auto yb = expand_ladder_power(ladder_sign, order - j);
    for (const auto& [ma, ca] : ya.terms())
      for (const auto& [mb, cb] : yb.terms()) out.add({ma, mb}, (c * ca * cb).convert_to<double>());
  }
  return out;
}

TwoModeOperator bipartite_quadrature_sum(int order, int x_sign, int p_sign) {
  return expand_bipartite_quadrature_power(Quadrature::X, x_sign, order) +
         expand_bipartite_quadrature_power(Quadrature::P, p_sign, order);
}

TwoModeOperator power_criterion_operator(int n, int sign) {
  if (n < 1) throw std::invalid_argument("power must be >= 1");
  require_sign(sign);
  auto out = TwoModeOperator::mode_a(OperatorPolynomial::monomial(n, n)) +
             TwoModeOperator::mode_b(anti_normal_power(n));
  out += TwoModeOperator::term(n, 0, n, 0, sign);
  out += TwoModeOperator::term(0, n, 0, n, sign);
  return out;
}

}  // namespace hoepr
