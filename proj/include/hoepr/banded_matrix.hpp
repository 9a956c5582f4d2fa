#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hoepr {

/// Symmetric matrix stored as its upper diagonals. Band d holds M(i, i + d)
/// for i = 0 .. size - d - 1; the lower triangle is implied.
class BandedFockMatrix {
 public:
  BandedFockMatrix() = default;
  explicit BandedFockMatrix(std::size_t size, std::optional<int> order_tag = std::nullopt);

  std::size_t size() const { return size_; }
  const std::vector<std::size_t>& offsets() const { return offsets_; }
  std::span<const double> band(std::size_t offset) const;
  std::optional<int> order_tag() const { return order_tag_; }
  std::size_t bandwidth() const { return offsets_.empty() ? 0 : offsets_.back(); }

  /// Adds value to M(i, i + offset) (and its mirror).
  void add(std::size_t i, std::size_t offset, double value);

  double at(std::size_t row, std::size_t col) const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  double quadratic_form(std::span<const double> x) const;

  Eigen::MatrixXd to_dense() const;

  /// Lower end of the Gershgorin spectrum enclosure.
  double gershgorin_lower() const;

  /// Leading principal submatrix of the given size.
  BandedFockMatrix leading(std::size_t n) const;

 private:
  std::vector<double>& band_storage(std::size_t offset);

  std::size_t size_ = 0;
  std::vector<std::size_t> offsets_;  // sorted ascending
  std::vector<std::vector<double>> bands_;
  std::optional<int> order_tag_;
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Symmetric matrix in compressed sparse row form, both triangles stored.
class SparseSymmetricMatrix {
 public:
  SparseSymmetricMatrix() = default;

  /// Triplets must describe the full matrix; duplicates are summed.
  SparseSymmetricMatrix(std::size_t size, std::vector<Triplet> triplets);

  std::size_t size() const { return size_; }
  std::size_t nonzeros() const { return values_.size(); }
  std::size_t bandwidth() const { return bandwidth_; }

  double at(std::size_t row, std::size_t col) const;
  void multiply(std::span<const double> x, std::span<double> y) const;
  double quadratic_form(std::span<const double> x) const;
  double gershgorin_lower() const;
  Eigen::MatrixXd to_dense() const;

  bool is_symmetric(double tol = 0.0) const;

  const std::vector<std::size_t>& row_starts() const { return row_start_; }
  const std::vector<std::size_t>& columns() const { return cols_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t size_ = 0;
  std::size_t bandwidth_ = 0;
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

}  // namespace hoepr
