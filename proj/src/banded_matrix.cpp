#include "hoepr/banded_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hoepr {

BandedFockMatrix::BandedFockMatrix(std::size_t size, std::optional<int> order_tag)
    : size_(size), order_tag_(order_tag) {
  if (size == 0) throw std::invalid_argument("matrix size must be positive");
  band_storage(0);
}

std::vector<double>& BandedFockMatrix::band_storage(std::size_t offset) {
  auto it = std::lower_bound(offsets_.begin(), offsets_.end(), offset);
  auto pos = static_cast<std::size_t>(it - offsets_.begin());
  if (it == offsets_.end() || *it != offset) {
    offsets_.insert(it, offset);
    bands_.insert(bands_.begin() + static_cast<std::ptrdiff_t>(pos),
                  std::vector<double>(size_ - offset, 0.0));
  }
  return bands_[pos];
}

std::span<const double> BandedFockMatrix::band(std::size_t offset) const {
  auto it = std::lower_bound(offsets_.begin(), offsets_.end(), offset);
  if (it == offsets_.end() || *it != offset) return {};
  return bands_[static_cast<std::size_t>(it - offsets_.begin())];
}

void BandedFockMatrix::add(std::size_t i, std::size_t offset, double value) {
  if (offset >= size_ || i + offset >= size_)
    throw std::out_of_range("band entry outside matrix");
  band_storage(offset)[i] += value;
}

double BandedFockMatrix::at(std::size_t row, std::size_t col) const {
  if (row > col) std::swap(row, col);
  auto b = band(col - row);
  return b.empty() ? 0.0 : b[row];
}

void BandedFockMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size_ || y.size() != size_)
    throw std::invalid_argument("dimension mismatch in banded multiply");
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t b = 0; b < offsets_.size(); ++b) {
    const std::size_t d = offsets_[b];
    const auto& v = bands_[b];
    if (d == 0) {
      for (std::size_t i = 0; i < size_; ++i) y[i] += v[i] * x[i];
      continue;
    }
    for (std::size_t i = 0; i + d < size_; ++i) {
      y[i] += v[i] * x[i + d];
      y[i + d] += v[i] * x[i];
    }
  }
}

double BandedFockMatrix::quadratic_form(std::span<const double> x) const {
  std::vector<double> y(size_);
  multiply(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < size_; ++i) s += x[i] * y[i];
  return s;
}

Eigen::MatrixXd BandedFockMatrix::to_dense() const {
  const auto n = static_cast<Eigen::Index>(size_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t b = 0; b < offsets_.size(); ++b) {
    const std::size_t d = offsets_[b];
    for (std::size_t i = 0; i + d < size_; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const auto c = static_cast<Eigen::Index>(i + d);
      m(r, c) = bands_[b][i];
      m(c, r) = bands_[b][i];
    }
  }
  return m;
}

double BandedFockMatrix::gershgorin_lower() const {
  double lo = std::numeric_limits<double>::infinity();
  auto diag = band(0);
  for (std::size_t i = 0; i < size_; ++i) {
    double radius = 0.0;
    for (std::size_t b = 0; b < offsets_.size(); ++b) {
      const std::size_t d = offsets_[b];
      if (d == 0) continue;
      if (i + d < size_) radius += std::abs(bands_[b][i]);
      if (i >= d) radius += std::abs(bands_[b][i - d]);
    }
    lo = std::min(lo, diag[i] - radius);
  }
  return lo;
}

BandedFockMatrix BandedFockMatrix::leading(std::size_t n) const {
  if (n == 0 || n > size_) throw std::invalid_argument("bad leading block size");
  BandedFockMatrix out(n, order_tag_);
  for (std::size_t b = 0; b < offsets_.size(); ++b) {
    const std::size_t d = offsets_[b];
    if (d >= n) break;
    for (std::size_t i = 0; i + d < n; ++i) out.add(i, d, bands_[b][i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

SparseSymmetricMatrix::SparseSymmetricMatrix(std::size_t size, std::vector<Triplet> triplets)
    : size_(size) {
  if (size == 0) throw std::invalid_argument("matrix size must be positive");
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& l, const Triplet& r) {
    return l.row != r.row ? l.row < r.row : l.col < r.col;
  });
  row_start_.assign(size_ + 1, 0);
  for (std::size_t t = 0; t < triplets.size();) {
    const auto& cur = triplets[t];
    if (cur.row >= size_ || cur.col >= size_)
      throw std::out_of_range("triplet outside matrix");
    double v = 0.0;
    std::size_t u = t;
    while (u < triplets.size() && triplets[u].row == cur.row && triplets[u].col == cur.col)
      v += triplets[u++].value;
    if (v != 0.0) {
      cols_.push_back(cur.col);
      values_.push_back(v);
      ++row_start_[cur.row + 1];
      bandwidth_ = std::max(bandwidth_, cur.row > cur.col ? cur.row - cur.col : cur.col - cur.row);
    }
    t = u;
  }
  for (std::size_t i = 0; i < size_; ++i) row_start_[i + 1] += row_start_[i];
}

double SparseSymmetricMatrix::at(std::size_t row, std::size_t col) const {
  auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[row]);
  auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[row + 1]);
  auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

void SparseSymmetricMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size_ || y.size() != size_)
    throw std::invalid_argument("dimension mismatch in sparse multiply");
  for (std::size_t i = 0; i < size_; ++i) {
    double s = 0.0;
    for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e) s += values_[e] * x[cols_[e]];
    y[i] = s;
  }
}

double SparseSymmetricMatrix::quadratic_form(std::span<const double> x) const {
  std::vector<double> y(size_);
  multiply(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < size_; ++i) s += x[i] * y[i];
  return s;
}

double SparseSymmetricMatrix::gershgorin_lower() const {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size_; ++i) {
    double diag = 0.0, radius = 0.0;
    for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e) {
      if (cols_[e] == i) diag = values_[e];
      else radius += std::abs(values_[e]);
    }
    lo = std::min(lo, diag - radius);
  }
  return lo;
}

Eigen::MatrixXd SparseSymmetricMatrix::to_dense() const {
  const auto n = static_cast<Eigen::Index>(size_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols_[e])) = values_[e];
  return m;
}

bool SparseSymmetricMatrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e)
      if (std::abs(values_[e] - at(cols_[e], i)) > tol) return false;
  return true;
}

}  // namespace hoepr
