#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's algebra or special functions.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Dense annihilation operator on levels 0 .. m-1.
inline Eigen::MatrixXd annihilation(std::size_t m) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t k = 1; k < m; ++k)
    a(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = std::sqrt(static_cast<double>(k));
  return a;
}

inline Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, int p) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  for (int i = 0; i < p; ++i) r = r * m;
  return r;
}

/// x^order + p^order by repeated dense multiplication with enough head room
/// that the leading n x n block is exact. The p power is real for even order.
inline Eigen::MatrixXd quadrature_sum_block(int order, std::size_t n) {
  const std::size_t m = n + static_cast<std::size_t>(order) + 2;
  const Eigen::MatrixXd a = annihilation(m);
  const Eigen::MatrixXd ad = a.transpose();
  const Eigen::MatrixXd x = (a + ad) / std::numbers::sqrt2;
  const Eigen::MatrixXcd p = (a - ad).cast<std::complex<double>>() /
                             std::complex<double>(0.0, std::numbers::sqrt2);
  Eigen::MatrixXcd pp = Eigen::MatrixXcd::Identity(p.rows(), p.cols());
  for (int i = 0; i < order; ++i) pp = pp * p;
  const Eigen::MatrixXd full = matrix_power(x, order) + pp.real();
  const auto ni = static_cast<Eigen::Index>(n);
  return full.topLeftCorner(ni, ni);
}

/// Two-mode operators on an m x m product space, index k * m + l.
struct TwoMode {
  std::size_t m;
  Eigen::MatrixXd a, ad, b, bd;

  explicit TwoMode(std::size_t levels) : m(levels) {
    const Eigen::MatrixXd s = annihilation(m);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    a = kron(s, id);
    b = kron(id, s);
    ad = a.transpose();
    bd = b.transpose();
  }

  static Eigen::MatrixXd kron(const Eigen::MatrixXd& l, const Eigen::MatrixXd& r) {
    Eigen::MatrixXd out(l.rows() * r.rows(), l.cols() * r.cols());
    for (Eigen::Index i = 0; i < l.rows(); ++i)
      for (Eigen::Index j = 0; j < l.cols(); ++j)
        out.block(i * r.rows(), j * r.cols(), r.rows(), r.cols()) = l(i, j) * r;
    return out;
  }

  /// Embeds an n x n coefficient array (row-major, k = mode a) into the space.
  Eigen::VectorXd embed(const std::vector<double>& c, std::size_t n) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m * m));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) v(static_cast<Eigen::Index>(k * m + l)) = c[k * n + l];
    return v;
  }
};

/// Hermite functions by the three-term recurrence.
inline std::vector<double> hermite(std::size_t count, double x) {
  std::vector<double> h(count, 0.0);
  if (count == 0) return h;
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (count > 1) h[1] = std::numbers::sqrt2 * x * h[0];
  for (std::size_t k = 1; k + 1 < count; ++k)
    h[k + 1] = std::sqrt(2.0 / (k + 1.0)) * x * h[k] - std::sqrt(k / (k + 1.0)) * h[k - 1];
  return h;
}

/// sum_{k,l} c_{kl} psi_k(x) psi_l(y) for an n x n row-major array.
inline double series_2d(const std::vector<double>& c, std::size_t n, double x, double y) {
  const auto hx = hermite(n, x);
  const auto hy = hermite(n, y);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      if (c[k * n + l] != 0.0) s += c[k * n + l] * hx[k] * hy[l];
  return s;
}

/// Composite Simpson rule with an even number of panels.
template <class T>
T simpson(const std::function<T(double)>& f, double lo, double hi, int panels) {
  if (panels % 2) ++panels;
  const double h = (hi - lo) / panels;
  T s = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * (h / 3.0);
}

/// erf(z) = 2z/sqrt(pi) * int_0^1 exp(-z^2 t^2) dt.
inline std::complex<double> erf(std::complex<double> z) {
  const std::function<std::complex<double>(double)> f = [z](double t) { return std::exp(-z * z * t * t); };
  return 2.0 * z / std::sqrt(std::numbers::pi) * simpson(f, 0.0, 1.0, 20000);
}

/// K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta), trapezoid on a
/// periodic integrand.
inline double elliptic_k(double k) {
  const int n = 2000;
  const double h = std::numbers::pi / 2.0 / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h, st = std::sin(t);
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    s += w / std::sqrt(1.0 - k * k * st * st);
  }
  return s * h;
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace oracle
