#include "hoepr/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hoepr/parallel.hpp"

namespace hoepr {

namespace {

using cplx = std::complex<double>;
using Vec4c = Eigen::Matrix<cplx, 4, 1>;

Eigen::Matrix4d omega() {
  Eigen::Matrix4d o = Eigen::Matrix4d::Zero();
  o(0, 2) = 1.0;
  o(2, 0) = -1.0;
  o(1, 3) = 1.0;
  o(3, 1) = -1.0;
  return o;
}

Vec4c ladder_vector(Ladder l) {
  const double h = 1.0 / std::numbers::sqrt2;
  Vec4c v = Vec4c::Zero();
  switch (l) {
    case Ladder::a: v(0) = h; v(2) = cplx(0, h); break;
    case Ladder::a_dag: v(0) = h; v(2) = cplx(0, -h); break;
    case Ladder::b: v(1) = h; v(3) = cplx(0, h); break;
    case Ladder::b_dag: v(1) = h; v(3) = cplx(0, -h); break;
  }
  return v;
}

Eigen::Matrix4d two_mode_squeezer(double r) {
  const double c = std::cosh(r), s = std::sinh(r);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = c; m(0, 1) = s; m(1, 0) = s; m(1, 1) = c;
  m(2, 2) = c; m(2, 3) = -s; m(3, 2) = -s; m(3, 3) = c;
  return m;
}

Eigen::Matrix4d beam_splitter(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = c; m(0, 1) = s; m(1, 0) = -s; m(1, 1) = c;
  m(2, 2) = c; m(2, 3) = s; m(3, 2) = -s; m(3, 3) = c;
  return m;
}

Eigen::Matrix4d phase_rotation(double phi_a, double phi_b) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  const double ca = std::cos(phi_a), sa = std::sin(phi_a);
  const double cb = std::cos(phi_b), sb = std::sin(phi_b);
  m(0, 0) = ca; m(0, 2) = sa; m(2, 0) = -sa; m(2, 2) = ca;
  m(1, 1) = cb; m(1, 3) = sb; m(3, 1) = -sb; m(3, 3) = cb;
  return m;
}

Eigen::Matrix4d local_squeezer(double ra, double rb) {
  Eigen::Vector4d d(std::exp(-ra), std::exp(-rb), std::exp(ra), std::exp(rb));
  return d.asDiagonal();
}

CovarianceMatrix sample(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto coin = [&](double p) { return unit(rng) < p; };

  const double nu_a = 0.5 + (coin(0.5) ? 0.0 : 1.5 * unit(rng));
  const double nu_b = 0.5 + (coin(0.5) ? 0.0 : 1.5 * unit(rng));
  Eigen::Matrix4d s = Eigen::Matrix4d::Identity();
  if (coin(0.5)) s = local_squeezer(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0) * s;
  s = two_mode_squeezer(1.5 * unit(rng)) * s;
  if (coin(0.5)) s = beam_splitter(std::numbers::pi * unit(rng)) * s;
  if (coin(0.5)) s = phase_rotation(2.0 * std::numbers::pi * unit(rng),
                                    2.0 * std::numbers::pi * unit(rng)) * s;
  CovarianceMatrix cov;
  cov.sigma = s * Eigen::Vector4d(nu_a, nu_b, nu_a, nu_b).asDiagonal() * s.transpose();
  if (coin(0.3)) {
    const double eps = 0.05 * unit(rng);
    for (int attempt = 0; attempt < 10; ++attempt) {
      Eigen::Matrix4d g;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = normal(rng);
      CovarianceMatrix trial = cov;
      trial.sigma += eps * 0.5 * (g + g.transpose());
      if (physicality(trial)) {
        cov = trial;
        break;
      }
    }
  }
  if (coin(0.5))
    for (int i = 0; i < 4; ++i) cov.mean(i) = normal(rng);
  return cov;
}

cplx centered_pair(const CovarianceMatrix& cov, const Vec4c& l, const Vec4c& r) {
  const Eigen::Matrix4cd m = cov.sigma.cast<cplx>() + cplx(0, 0.5) * omega().cast<cplx>();
  return (l.transpose() * m * r)(0, 0);
}

// Ordered Isserlis expansion: each operator either contributes its mean or
// pairs with a later operator, keeping the original order inside the pair.
cplx wick_recursive(const CovarianceMatrix& cov, std::vector<Vec4c>& ops, std::size_t first,
                    std::vector<bool>& used, bool centered) {
  while (first < ops.size() && used[first]) ++first;
  if (first == ops.size()) return 1.0;
  used[first] = true;
  cplx total = 0.0;
  if (!centered) {
    const cplx mean = (ops[first].transpose() * cov.mean.cast<cplx>())(0, 0);
    if (mean != 0.0) total += mean * wick_recursive(cov, ops, first + 1, used, centered);
  }
  for (std::size_t j = first + 1; j < ops.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    total += centered_pair(cov, ops[first], ops[j]) *
             wick_recursive(cov, ops, first + 1, used, centered);
    used[j] = false;
  }
  used[first] = false;
  return total;
}

void require_physical(const CovarianceMatrix& cov) {
  if (!physicality(cov)) throw PhysicalityError("covariance matrix is not physical");
}

double strict_from(double n_a, double anti_b, double cross_abs) {
  return n_a + anti_b - 2.0 * cross_abs;
}

}  // namespace

CovarianceMatrix CovarianceMatrix::two_mode_squeezed(double r) {
  CovarianceMatrix c;
  const double ch = 0.5 * std::cosh(2.0 * r), sh = 0.5 * std::sinh(2.0 * r);
  c.sigma = ch * Eigen::Matrix4d::Identity();
  c.sigma(0, 1) = c.sigma(1, 0) = sh;
  c.sigma(2, 3) = c.sigma(3, 2) = -sh;
  return c;
}

CovarianceMatrix CovarianceMatrix::from_values(std::span<const double> sigma16,
                                               std::span<const double> mean4) {
  if (sigma16.size() != 16) throw std::invalid_argument("sigma needs 16 entries");
  if (!mean4.empty() && mean4.size() != 4) throw std::invalid_argument("mean needs 4 entries");
  CovarianceMatrix c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c.sigma(i, j) = sigma16[static_cast<std::size_t>(4 * i + j)];
  if ((c.sigma - c.sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("sigma is not symmetric");
  for (int i = 0; i < 4 && !mean4.empty(); ++i) c.mean(i) = mean4[static_cast<std::size_t>(i)];
  return c;
}

double physicality_margin(const CovarianceMatrix& cov) {
  const Eigen::Matrix4cd m = cov.sigma.cast<cplx>() + cplx(0, 0.5) * omega().cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool physicality(const CovarianceMatrix& cov, double tol) {
  if (!cov.sigma.allFinite() || (cov.sigma - cov.sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    return false;
  return physicality_margin(cov) >= -tol;
}

CovarianceMatrix random_physical_covariance(std::uint64_t seed) { return sample(seed, 0); }

CovarianceMatrix rotate_phases(const CovarianceMatrix& cov, double phi_a, double phi_b) {
  const Eigen::Matrix4d r = phase_rotation(phi_a, phi_b);
  CovarianceMatrix out;
  out.sigma = r * cov.sigma * r.transpose();
  out.sigma = 0.5 * (out.sigma + out.sigma.transpose());
  out.mean = r * cov.mean;
  return out;
}

PhaseNormalized phase_normalize(const CovarianceMatrix& cov) {
  auto angle = [](double sxx, double spp, double sxp) {
    const double a = 0.5 * (sxx - spp);
    if (a == 0.0 && sxp == 0.0) return 0.0;
    // A cos 2phi + B sin 2phi = 0 with B = sigma_xp.
    double two_phi = std::atan2(-a, sxp);
    if (two_phi < 0.0) two_phi += std::numbers::pi;
    return 0.5 * two_phi;
  };
  PhaseNormalized out;
  out.phi_a = angle(cov.sigma(0, 0), cov.sigma(2, 2), cov.sigma(0, 2));
  out.phi_b = angle(cov.sigma(1, 1), cov.sigma(3, 3), cov.sigma(1, 3));
  out.cov = rotate_phases(cov, out.phi_a, out.phi_b);
  return out;
}

FourthMoments fourth_moments_closed(const CovarianceMatrix& cov) {
  const auto& s = cov.sigma;
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if (std::abs(s(0, 0) - s(2, 2)) > 1e-10 * scale || std::abs(s(1, 1) - s(3, 3)) > 1e-10 * scale)
    throw std::invalid_argument("covariance is not phase-normalized");
  const double s1 = 0.5 * (s(0, 0) + s(2, 2));
  const double s2 = 0.5 * (s(1, 1) + s(3, 3));
  const double s13 = s(0, 2), s24 = s(1, 3);
  const double u = s(0, 1) - s(2, 3);
  const double v = s(0, 3) + s(1, 2);
  FourthMoments m;
  m.n_a2 = 2.0 * s1 * s1 - 2.0 * s1 + s13 * s13 + 0.5;
  m.anti_b2 = 2.0 * s2 * s2 + 2.0 * s2 + s24 * s24 + 0.5;
  const double uv = u * u + v * v;
  m.cross_abs2 = std::max(
      0.0, 0.25 * (uv * uv - 4.0 * s13 * s24 * (u * u - v * v) + 4.0 * s13 * s13 * s24 * s24));
  return m;
}

std::complex<double> wick_moment(const CovarianceMatrix& cov, std::span<const Ladder> ops,
                                 bool centered) {
  std::vector<Vec4c> vecs;
  vecs.reserve(ops.size());
  for (auto l : ops) vecs.push_back(ladder_vector(l));
  std::vector<bool> used(vecs.size(), false);
  return wick_recursive(cov, vecs, 0, used, centered);
}

FourthMoments wick_fourth_moments(const CovarianceMatrix& cov) {
  using L = Ladder;
  FourthMoments m;
  const std::array<L, 4> na{L::a_dag, L::a_dag, L::a, L::a};
  const std::array<L, 4> ab{L::b, L::b, L::b_dag, L::b_dag};
  const std::array<L, 4> cr{L::a, L::a, L::b, L::b};
  m.n_a2 = wick_moment(cov, na, true).real();
  m.anti_b2 = wick_moment(cov, ab, true).real();
  m.cross = wick_moment(cov, cr, true);
  m.cross_abs2 = std::norm(m.cross);
  return m;
}

DbSValue criterion_dbS(const CovarianceMatrix& cov, Sign sign) {
  require_physical(cov);
  const auto m = wick_fourth_moments(cov);
  DbSValue out;
  out.value = m.n_a2 + m.anti_b2 + 2.0 * sign_value(sign) * m.cross.real();
  out.strict_value = strict_from(m.n_a2, m.anti_b2, std::abs(m.cross));
  return out;
}

DbSValue gaussian_power_criterion(const CovarianceMatrix& cov, int n, Sign sign,
                                  bool centered) {
  if (n < 1) throw std::invalid_argument("power must be >= 1");
  require_physical(cov);
  const auto nn = static_cast<std::size_t>(n);
  std::vector<Ladder> na(2 * nn), ab(2 * nn), cr(2 * nn);
  for (std::size_t i = 0; i < nn; ++i) {
    na[i] = Ladder::a_dag;
    na[nn + i] = Ladder::a;
    ab[i] = Ladder::b;
    ab[nn + i] = Ladder::b_dag;
    cr[i] = Ladder::a;
    cr[nn + i] = Ladder::b;
  }
  const double n_a = wick_moment(cov, na, centered).real();
  const double anti_b = wick_moment(cov, ab, centered).real();
  const cplx cross = wick_moment(cov, cr, centered);
  DbSValue out;
  out.value = n_a + anti_b + 2.0 * sign_value(sign) * cross.real();
  out.strict_value = strict_from(n_a, anti_b, std::abs(cross));
  return out;
}

double gaussian_duan_higher(const CovarianceMatrix& cov, int order, Sign sign) {
  if (order < 2 || order % 2 != 0) throw std::invalid_argument("order must be even and >= 2");
  require_physical(cov);
  const double s = sign_value(sign);
  const auto& c = cov.sigma;
  auto moment = [order](double mu, double var) {
    // E[u^order] for u ~ N(mu, var)
    double total = 0.0, binom = 1.0, dfact = 1.0;
    for (int k = 0; 2 * k <= order; ++k) {
      if (k > 0) {
        binom *= static_cast<double>(order - 2 * k + 2) * (order - 2 * k + 1) /
                 (static_cast<double>(2 * k) * (2 * k - 1));
        dfact *= 2.0 * k - 1.0;
      }
      total += binom * std::pow(mu, order - 2 * k) * std::pow(var, k) * dfact;
    }
    return total;
  };
  const double vx = c(0, 0) + c(1, 1) + 2.0 * s * c(0, 1);
  const double vp = c(2, 2) + c(3, 3) - 2.0 * s * c(2, 3);
  return moment(cov.mean(0) + s * cov.mean(1), vx) + moment(cov.mean(2) - s * cov.mean(3), vp);
}

double duan_value(const CovarianceMatrix& cov) {
  const auto& c = cov.sigma;
  double best = std::numeric_limits<double>::infinity();
  for (double s : {1.0, -1.0})
    best = std::min(best, c(0, 0) + c(1, 1) + 2.0 * s * c(0, 1) + c(2, 2) + c(3, 3) -
                              2.0 * s * c(2, 3));
  return best;
}

ScanReport scan_covariances(std::span<const CovarianceMatrix> covs, int n) {
  if (covs.empty()) throw std::invalid_argument("scan needs at least one sample");
  ScanReport rep;
  rep.samples = covs.size();
  rep.n = n;
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  rep.threshold = factorial;
  std::vector<double> values(covs.size());
  parallel_for(covs.size(), [&](std::size_t i) {
    if (n == 2) {
      const auto m = fourth_moments_closed(phase_normalize(covs[i]).cov);
      values[i] = strict_from(m.n_a2, m.anti_b2, std::sqrt(m.cross_abs2));
    } else {
      values[i] = gaussian_power_criterion(covs[i], n, Sign::plus).strict_value;
    }
  });
  rep.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < covs.size(); ++i) {
    if (values[i] < rep.min_value) {
      rep.min_value = values[i];
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          rep.argmin_sigma[static_cast<std::size_t>(4 * r + c)] = covs[i].sigma(r, c);
    }
    if (values[i] < rep.threshold - 1e-9) ++rep.violations;
    if (duan_value(covs[i]) < 2.0 - 1e-9) ++rep.duan_violating;
  }
  return rep;
}

ScanReport theorem3_scan(std::size_t samples, std::uint64_t seed, int n) {
  if (samples == 0) throw std::invalid_argument("scan needs at least one sample");
  std::vector<CovarianceMatrix> covs(samples);
  parallel_for(samples, [&](std::size_t i) { covs[i] = sample(seed, i); });
  auto rep = scan_covariances(covs, n);
  rep.seed = seed;
  return rep;
}

}  // namespace hoepr
