#pragma once

// Bipartite state families with closed-form criterion values.
//
//   squeezed vacuum  sqrt(1 - l^2) sum_k l^k |k, k>
//   psi_n            N_n sum_k xi^k / sqrt(prod_{j<n} (nk + j)) |nk + n - 1, nk>
//   psi2_prime       N' sum_k xi^k / sqrt(2k + 2) |2k + 2, 2k + 1>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>

#include "hoepr/fock_ops.hpp"
#include "hoepr/gaussian.hpp"
#include "hoepr/sign.hpp"
#include "hoepr/spectral.hpp"

namespace hoepr {

struct SqueezedVacuum {
  double lambda = 0.0;
};

struct PsiN {
  int n = 2;
  double xi = 0.0;
};

struct Psi2Prime {
  double xi = 0.0;
};

struct ExplicitState {
  BipartiteFockVector vector;
};

struct GaussianState {
  CovarianceMatrix cov;
};

using StateSpec = std::variant<SqueezedVacuum, PsiN, Psi2Prime, ExplicitState, GaussianState>;

/// Throws std::invalid_argument when the parameters are outside the family's domain.
void validate(const StateSpec& spec);

std::string family_name(const StateSpec& spec);

class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double tail_mass)
      : std::runtime_error(what), tail_mass_(tail_mass) {}
  double tail_mass() const { return tail_mass_; }

 private:
  double tail_mass_;
};

/// Largest discarded norm squared accepted by truncate_to_fock.
inline constexpr double kMaxTailMass = 1e-10;

/// Levels per mode; the kept terms satisfy xi^(2K) / (1 - xi^2) < 1e-12.
std::size_t auto_truncation(const StateSpec& spec);

/// Coefficients on levels 0 .. K-1 of each mode, renormalized.
BipartiteFockVector truncate_to_fock(const StateSpec& spec, std::size_t levels);

/// <(x_a +- x_b)^(2n)> in the squeezed vacuum.
double squeezed_moment(int n, double lambda, Sign sign);

/// N_n(xi) > 0.
double psi_n_norm(int n, double xi);

/// <(a+^n +- b^n)(a^n +- b+^n)> in psi_n.
double criterion_value_psi_n(int n, double xi, Sign sign);

/// <(a+^2 +- b^2)(a^2 +- b+^2)> in psi2_prime.
double criterion_value_psi2_prime(double xi, Sign sign);

/// Position-space wave functions psi(x, y) of psi_2 and psi2_prime.
double psi2_wavefunction(double xi, double x, double y);
double psi2_prime_wavefunction(double xi, double x, double y);

/// <psi| op |psi> by direct contraction over the stored coefficients.
double expectation(const TwoModeOperator& op, const BipartiteFockVector& state);

}  // namespace hoepr
