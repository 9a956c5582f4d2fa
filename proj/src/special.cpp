#include "hoepr/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hoepr {

namespace {

using cplx = std::complex<double>;

constexpr int kTerms = 40;

struct Weideman {
  double L;
  std::array<double, kTerms> a{};  // a[m-1] multiplies Z^(m-1)

  Weideman() : L(std::sqrt(kTerms / std::numbers::sqrt2)) {
    const int M = 2 * kTerms;
    std::array<double, 2 * M> f{};
    // f(k) for k = -M+1 .. M-1; f(-M) = 0.
    for (int k = -M + 1; k < M; ++k) {
      const double t = L * std::tan(0.5 * k * std::numbers::pi / M);
      f[static_cast<std::size_t>(k + M)] = std::exp(-t * t) * (L * L + t * t);
    }
    for (int m = 1; m <= kTerms; ++m) {
      double s = 0.0;
      for (int k = -M + 1; k < M; ++k)
        s += f[static_cast<std::size_t>(k + M)] * std::cos(std::numbers::pi * k * m / M);
      a[static_cast<std::size_t>(m - 1)] = s / (2.0 * M);
    }
  }

  cplx operator()(cplx z) const {
    const cplx iz(-z.imag(), z.real());
    const cplx den = L - iz;
    const cplx Z = (L + iz) / den;
    cplx p = 0.0;
    for (int m = kTerms - 1; m >= 0; --m) p = p * Z + a[static_cast<std::size_t>(m)];
    return 2.0 * p / (den * den) + (1.0 / std::sqrt(std::numbers::pi)) / den;
  }
};

const Weideman& weideman() {
  static const Weideman w;
  return w;
}

double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

// Miller's backward recurrence normalized with J0 + 2 sum J_2k = 1.
double j0_miller(double x) {
  int start = 2 * (static_cast<int>(x) + 30);
  double jp1 = 0.0, j = 1e-30, norm = 0.0, j0 = 0.0;
  for (int k = start; k >= 1; --k) {
    const double jm1 = 2.0 * k / x * j - jp1;
    jp1 = j;
    j = jm1;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      norm *= 1e-250;
    }
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j;
  }
  j0 = j;
  norm += j0;
  return j0 / norm;
}

double j0_asymptotic(double x) {
  // Hankel expansion, |a_k| = prod (2j-1)^2 / (k! 8^k); the signs are folded into p and q.
  double p = 1.0, q = 0.0, term = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next > term) break;
    term = next;
    const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) p += sgn * term;
    else q += sgn * term;
    if (term < 1e-17) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) + q * std::sin(chi));
}

cplx erf_taylor(cplx z) {
  const cplx z2 = z * z;
  cplx term = z, sum = z;
  for (int n = 1; n < 100; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cplx add = term / (2.0 * n + 1.0);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum * (2.0 / std::sqrt(std::numbers::pi));
}

}  // namespace

double elliptic_K(double k) {
  if (!(k >= 0.0) || k >= 1.0) throw std::domain_error("elliptic_K requires 0 <= k < 1");
  double a = 1.0, g = std::sqrt((1.0 - k) * (1.0 + k));
  for (int it = 0; it < 64 && std::abs(a - g) > 2e-16 * a; ++it) {
    const double an = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

double bessel_j0(double x) {
  x = std::abs(x);
  if (x <= 8.0) return j0_series(x);
  if (x < 25.0) return j0_miller(x);
  return j0_asymptotic(x);
}

cplx faddeeva_w(cplx z) {
  if (z.imag() >= 0.0) return weideman()(z);
  return 2.0 * std::exp(-z * z) - weideman()(-z);
}

cplx erf(cplx z) {
  if (z.imag() == 0.0) return std::erf(z.real());
  if (std::abs(z) < 1.0) return erf_taylor(z);
  if (z.real() < 0.0) return -erf(-z);
  return 1.0 - scaled_erfc(z, 0.0);
}

cplx scaled_erfc(cplx z, cplx log_scale) {
  if (z.real() < 0.0) return 2.0 * std::exp(log_scale) - scaled_erfc(-z, log_scale);
  const cplx iz(-z.imag(), z.real());
  return std::exp(log_scale - z * z) * faddeeva_w(iz);
}

}  // namespace hoepr
