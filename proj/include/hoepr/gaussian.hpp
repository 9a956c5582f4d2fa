#pragma once

// Two-mode Gaussian states. Quadrature ordering is (x_a, x_b, p_a, p_b) and
// the vacuum has sigma = diag(1/2, 1/2, 1/2, 1/2).

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hoepr/sign.hpp"

namespace hoepr {

struct CovarianceMatrix {
  Eigen::Matrix4d sigma = 0.5 * Eigen::Matrix4d::Identity();
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();

  static CovarianceMatrix vacuum() { return {}; }
  static CovarianceMatrix two_mode_squeezed(double r);
  static CovarianceMatrix from_values(std::span<const double> sigma16,
                                      std::span<const double> mean4 = {});
};

struct PhysicalityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Smallest eigenvalue of sigma + (i/2) Omega.
double physicality_margin(const CovarianceMatrix& cov);
bool physicality(const CovarianceMatrix& cov, double tol = 1e-10);

/// Deterministic per seed; always physical.
CovarianceMatrix random_physical_covariance(std::uint64_t seed);

/// Rotates mode a by phi_a and mode b by phi_b: x' = x cos + p sin, p' = -x sin + p cos.
CovarianceMatrix rotate_phases(const CovarianceMatrix& cov, double phi_a, double phi_b);

struct PhaseNormalized {
  CovarianceMatrix cov;
  double phi_a = 0.0;
  double phi_b = 0.0;
};

/// Local rotations that make sigma_11 = sigma_33 and sigma_22 = sigma_44.
PhaseNormalized phase_normalize(const CovarianceMatrix& cov);

struct FourthMoments {
  double n_a2 = 0.0;                     // <a+^2 a^2>
  double anti_b2 = 0.0;                  // <b^2 b+^2>
  double cross_abs2 = 0.0;               // |<a^2 b^2>|^2
  std::complex<double> cross{0.0, 0.0};  // <a^2 b^2>, when available
};

/// Closed forms for a phase-normalized covariance (mean ignored).
FourthMoments fourth_moments_closed(const CovarianceMatrix& cov);

/// Same quantities from pairings of second moments (mean ignored).
FourthMoments wick_fourth_moments(const CovarianceMatrix& cov);

enum class Ladder { a, a_dag, b, b_dag };

/// <l_1 l_2 ... l_m> for the Gaussian state, means included unless centered.
std::complex<double> wick_moment(const CovarianceMatrix& cov, std::span<const Ladder> ops,
                                 bool centered = false);

struct DbSValue {
  double value = 0.0;         // <a+^2 a^2> + <b^2 b+^2> +- 2 Re <a^2 b^2>, centered
  double strict_value = 0.0;  // same with -2 |<a^2 b^2>|
};

DbSValue criterion_dbS(const CovarianceMatrix& cov, Sign sign);

/// <(da+^n +- db^n)(da^n +- db+^n)> and its -2|<da^n db^n>| lower form, for any n >= 1.
/// With centered = false the plain ladder operators are used instead.
DbSValue gaussian_power_criterion(const CovarianceMatrix& cov, int n, Sign sign,
                                  bool centered = true);

/// <(x_a + s x_b)^(2n) + (p_a - s p_b)^(2n)> including the mean.
double gaussian_duan_higher(const CovarianceMatrix& cov, int order, Sign sign);

/// Second-order Duan value minimized over the sign, centered.
double duan_value(const CovarianceMatrix& cov);

struct ScanReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  int n = 2;
  double threshold = 2.0;
  double min_value = 0.0;
  std::array<double, 16> argmin_sigma{};
  std::size_t violations = 0;
  std::size_t duan_violating = 0;
};

/// Minimum of the strict form over random physical covariances.
ScanReport theorem3_scan(std::size_t samples, std::uint64_t seed, int n = 2);
ScanReport scan_covariances(std::span<const CovarianceMatrix> covs, int n = 2);

}  // namespace hoepr
