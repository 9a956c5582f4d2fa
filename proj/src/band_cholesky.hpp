#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace hoepr {

class BandedFockMatrix;
class SparseSymmetricMatrix;

struct NotPositiveDefinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cholesky factor L L^T = M - shift * I of a symmetric band matrix, lower band
// kept row-wise: row i stores L(i, i - w) .. L(i, i).
class BandCholesky {
 public:
  BandCholesky(const BandedFockMatrix& m, double shift);
  BandCholesky(const SparseSymmetricMatrix& m, double shift);

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return w_; }

  // Overwrites rhs with (M - shift)^-1 rhs.
  void solve(std::span<double> rhs) const;

 private:
  double& l(std::size_t i, std::size_t j) { return data_[i * (w_ + 1) + (j + w_ - i)]; }
  double l(std::size_t i, std::size_t j) const { return data_[i * (w_ + 1) + (j + w_ - i)]; }
  void factor(double shift);

  std::size_t n_ = 0;
  std::size_t w_ = 0;
  std::vector<double> data_;
};

}  // namespace hoepr
