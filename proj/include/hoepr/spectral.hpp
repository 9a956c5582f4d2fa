#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hoepr/banded_matrix.hpp"

namespace hoepr {

enum class SolverKind { dense, banded_iterative };

std::string to_string(SolverKind kind);

struct SolverOptions {
  double tol = 1e-10;
  SolverKind kind = SolverKind::banded_iterative;
  std::size_t dense_cap = 4000;
  int max_iterations = 400;
};

/// Single-mode Fock coefficients c_0 .. c_{N-1}.
struct FockVector {
  std::vector<double> coefficients;

  std::size_t size() const { return coefficients.size(); }
  double norm() const;
};

/// Two-mode coefficients c_{kl}, row-major with k the mode-a index.
struct BipartiteFockVector {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::vector<double> coefficients;

  BipartiteFockVector() = default;
  BipartiteFockVector(std::size_t na, std::size_t nb)
      : dim_a(na), dim_b(nb), coefficients(na * nb, 0.0) {}

  double& at(std::size_t k, std::size_t l) { return coefficients[k * dim_b + l]; }
  double at(std::size_t k, std::size_t l) const { return coefficients[k * dim_b + l]; }
  double norm() const;
  void normalize();
};

struct EigenResult {
  double eigenvalue = 0.0;
  std::vector<double> vector;
  std::size_t truncation = 0;  // per mode for bipartite problems
  bool bipartite = false;
  double residual_norm = 0.0;  // ||M v - lambda v||_2
  SolverKind solver = SolverKind::banded_iterative;
  int iterations = 0;

  FockVector fock_vector() const;
  BipartiteFockVector bipartite_vector() const;
};

/// Thrown when the solver misses its tolerance; carries the best iterate.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, EigenResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const EigenResult& best() const { return best_; }

 private:
  EigenResult best_;
};

/// Convergence test applied to the residual: ||M v - lambda v|| <= tol * max(1, |lambda|).
bool residual_within(double residual, double eigenvalue, double tol);

EigenResult min_eigenpair(const BandedFockMatrix& matrix, const SolverOptions& options = {});
EigenResult min_eigenpair(const SparseSymmetricMatrix& matrix, const SolverOptions& options = {});

/// Default truncation: 2000 up to order 8, 4000 above.
std::size_t default_truncation(int order);

/// Matrix of x^order + p^order truncated to N levels, tagged with its order.
BandedFockMatrix quadrature_sum_matrix(int order, std::size_t truncation);

/// Minimal eigenpair of x^order + p^order.
EigenResult solve_order(int order, std::size_t truncation, const SolverOptions& options = {});

struct SweepPoint {
  std::size_t truncation;
  double eigenvalue;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  bool converged = false;
  std::optional<std::size_t> first_converged;  // first N whose change from the previous N is < tol
  bool monotone = true;                        // non-increasing up to rounding
};

SweepResult truncation_sweep(int order, std::span<const std::size_t> schedule, double tol,
                             const SolverOptions& options = {});

/// Upper bound on N_per_mode accepted by build_bipartite_matrix.
inline constexpr std::size_t kMaxBipartiteTruncation = 300;

/// (x_a + s x_b)^order + (p_a + s p_b)^order on the product basis, index k * N + l.
SparseSymmetricMatrix build_bipartite_matrix(int order, int sign, std::size_t truncation_per_mode);

/// Residual tolerance 1e-6: truncation splits the degenerate ground level into
/// a tight cluster, which bounds the attainable Ritz residual.
inline SolverOptions bipartite_solver_options() {
  SolverOptions o;
  o.tol = 1e-6;
  return o;
}

EigenResult solve_bipartite(int order, int sign, std::size_t truncation_per_mode,
                            const SolverOptions& options = bipartite_solver_options());

struct ScalingCheck {
  double bipartite = 0.0;  // Lambda
  double single = 0.0;     // lambda
  double relative_error = 0.0;
  bool holds = false;
};

/// Compares Lambda against 2^n lambda with |Lambda - 2^n lambda| <= tol * Lambda.
ScalingCheck verify_scaling_identity(int order, std::size_t truncation_per_mode, double tol,
                                     std::size_t single_truncation = 400);

/// (<x^order>, <p^order>) in a single-mode state.
std::pair<double, double> eigenstate_moments(const FockVector& state, int order);
std::pair<double, double> eigenstate_moments(const EigenResult& result, int order);

/// Singular values of the coefficient matrix, descending.
std::vector<double> schmidt_spectrum(const BipartiteFockVector& state);

}  // namespace hoepr
