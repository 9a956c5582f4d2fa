#include "band_cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hoepr/banded_matrix.hpp"

namespace hoepr {

BandCholesky::BandCholesky(const BandedFockMatrix& m, double shift)
    : n_(m.size()), w_(std::min(m.bandwidth(), m.size() - 1)) {
  data_.assign(n_ * (w_ + 1), 0.0);
  for (auto d : m.offsets()) {
    auto band = m.band(d);
    for (std::size_t i = 0; i + d < n_; ++i) l(i + d, i) = band[i];
  }
  factor(shift);
}

BandCholesky::BandCholesky(const SparseSymmetricMatrix& m, double shift)
    : n_(m.size()), w_(std::min(m.bandwidth(), m.size() - 1)) {
  data_.assign(n_ * (w_ + 1), 0.0);
  const auto& rs = m.row_starts();
  const auto& cs = m.columns();
  const auto& vs = m.values();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t e = rs[i]; e < rs[i + 1]; ++e)
      if (cs[e] <= i) l(i, cs[e]) = vs[e];
  factor(shift);
}

void BandCholesky::factor(double shift) {
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t k0 = j > w_ ? j - w_ : 0;
    double s = l(j, j) - shift;
    for (std::size_t k = k0; k < j; ++k) s -= l(j, k) * l(j, k);
    if (!(s > 0.0) || !std::isfinite(s))
      throw NotPositiveDefinite("Cholesky pivot " + std::to_string(j) + " is not positive");
    const double piv = std::sqrt(s);
    l(j, j) = piv;
    const std::size_t iend = std::min(n_ - 1, j + w_);
    for (std::size_t i = j + 1; i <= iend; ++i) {
      const std::size_t kk = std::max(k0, i > w_ ? i - w_ : 0);
      double t = l(i, j);
      for (std::size_t k = kk; k < j; ++k) t -= l(i, k) * l(j, k);
      l(i, j) = t / piv;
    }
  }
}

void BandCholesky::solve(std::span<double> rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("dimension mismatch in Cholesky solve");
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t k0 = i > w_ ? i - w_ : 0;
    double s = rhs[i];
    for (std::size_t k = k0; k < i; ++k) s -= l(i, k) * rhs[k];
    rhs[i] = s / l(i, i);
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = rhs[ii];
    const std::size_t kend = std::min(n_ - 1, ii + w_);
    for (std::size_t k = ii + 1; k <= kend; ++k) s -= l(k, ii) * rhs[k];
    rhs[ii] = s / l(ii, ii);
  }
}

}  // namespace hoepr
