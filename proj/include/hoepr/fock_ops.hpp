#pragma once

// Normal-ordered algebra of a single bosonic mode and of two commuting modes.
//
// Conventions: [x, p] = i, x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)).
// A monomial (p, q) stands for a^dag^p a^q; everything is kept in normal order.

#include <array>
#include <cstddef>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hoepr {

using Rational = boost::multiprecision::cpp_rational;

class BandedFockMatrix;

enum class Quadrature { X, P };

struct Monomial {
  int creators = 0;      // power of a^dag
  int annihilators = 0;  // power of a

  auto operator<=>(const Monomial&) const = default;
};

/// Sum of normal-ordered monomials a^dag^p a^q with exact rational
/// coefficients. Zero coefficients are never stored.
class OperatorPolynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  OperatorPolynomial() = default;

  static OperatorPolynomial constant(const Rational& value);
  static OperatorPolynomial monomial(int creators, int annihilators,
                                     const Rational& coefficient = 1);

  void add(Monomial m, const Rational& coefficient);

  Rational coefficient(int creators, int annihilators) const;
  Rational constant_term() const { return coefficient(0, 0); }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// coefficient(p, q) == coefficient(q, p) for every stored term.
  bool is_hermitian() const;

  /// Largest |p - q| over stored terms.
  int max_offset() const;

  OperatorPolynomial& operator+=(const OperatorPolynomial& other);
  OperatorPolynomial& operator*=(const Rational& factor);

  friend OperatorPolynomial operator+(OperatorPolynomial lhs,
                                      const OperatorPolynomial& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend OperatorPolynomial operator*(OperatorPolynomial lhs,
                                      const Rational& factor) {
    lhs *= factor;
    return lhs;
  }
  friend bool operator==(const OperatorPolynomial&,
                         const OperatorPolynomial&) = default;

  std::string to_string() const;

 private:
  TermMap terms_;
};

/// Normal-ordered product of two normal-ordered polynomials, using
/// a^q a^dag^r = sum_k C(q,k) C(r,k) k! a^dag^(r-k) a^(q-k).
OperatorPolynomial normal_product(const OperatorPolynomial& lhs,
                                  const OperatorPolynomial& rhs);

/// a^n a^dag^n rewritten in normal order.
OperatorPolynomial anti_normal_power(int n);

/// (a + sign * a^dag)^power in normal order, for any power >= 0 and sign = +1/-1.
OperatorPolynomial expand_ladder_power(int sign, int power);

/// x^order or p^order in normal order. Order must be even and >= 2.
OperatorPolynomial expand_quadrature_power(Quadrature which, int order);

/// x^order + p^order in normal order. Order must be even and >= 2.
OperatorPolynomial expand_sum(int order);

/// Vacuum value (2n)! / (2^(2n-1) n!) of x^(2n) + p^(2n).
Rational vacuum_expectation_exact(int order);
double vacuum_expectation(int order);

/// <k - q + p| a^dag^p a^q |k>, zero when k < q. Accumulated as a product of
/// square roots so that it stays finite for very large k.
double monomial_element(int creators, int annihilators, std::size_t k);

/// Truncated N x N Fock-basis matrix of a Hermitian polynomial.
BandedFockMatrix to_fock_matrix(const OperatorPolynomial& poly, std::size_t truncation);

// ---------------------------------------------------------------------------
// Two commuting modes a, b.

struct TwoModeMonomial {
  Monomial a;
  Monomial b;

  auto operator<=>(const TwoModeMonomial&) const = default;
};

/// Two-mode normal-ordered operator with real floating-point coefficients.
class TwoModeOperator {
 public:
  using TermMap = std::map<TwoModeMonomial, double>;

  TwoModeOperator() = default;

  static TwoModeOperator constant(double value);
  static TwoModeOperator mode_a(const OperatorPolynomial& poly);
  static TwoModeOperator mode_b(const OperatorPolynomial& poly);
  static TwoModeOperator term(int pa, int qa, int pb, int qb, double coefficient = 1.0);

  void add(const TwoModeMonomial& m, double coefficient);
  double coefficient(int pa, int qa, int pb, int qb) const;
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  TwoModeOperator& operator+=(const TwoModeOperator& other);
  TwoModeOperator& operator*=(double factor);

  friend TwoModeOperator operator+(TwoModeOperator lhs, const TwoModeOperator& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend TwoModeOperator operator*(TwoModeOperator lhs, double factor) {
    lhs *= factor;
    return lhs;
  }

 private:
  TermMap terms_;
};

/// Normal-ordered product; the modes commute so each factorizes per mode.
TwoModeOperator normal_product(const TwoModeOperator& lhs, const TwoModeOperator& rhs);

/// (x_a + s x_b)^order or (p_a + s p_b)^order, s = +1/-1, order even and >= 2.
TwoModeOperator expand_bipartite_quadrature_power(Quadrature which, int sign, int order);

/// (x_a + s1 x_b)^(2n) + (p_a + s2 p_b)^(2n).
TwoModeOperator bipartite_quadrature_sum(int order, int x_sign, int p_sign);

/// (a^dag^n + s b^n)(a^n + s b^dag^n), normal ordered.
TwoModeOperator power_criterion_operator(int n, int sign);

}  // namespace hoepr
