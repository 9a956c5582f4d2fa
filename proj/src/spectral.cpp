#include "hoepr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "band_cholesky.hpp"
#include "hoepr/fock_ops.hpp"

namespace hoepr {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void scale(std::span<double> a, double f) {
  for (auto& v : a) v *= f;
}

void fix_sign(std::vector<double>& v) {
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-12 * mx) {
      if (x < 0) scale(v, -1.0);
      return;
    }
  }
}

template <class Matrix>
double residual(const Matrix& m, std::span<const double> v, double lambda) {
  std::vector<double> r(v.size());
  m.multiply(v, r);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = r[i] - lambda * v[i];
    s += d * d;
  }
  return std::sqrt(s);
}

template <class Matrix>
std::pair<BandCholesky, double> factor_with_fallback(const Matrix& m) {
  try {
    return {BandCholesky(m, 0.0), 0.0};
  } catch (const NotPositiveDefinite&) {
    const double shift = std::min(m.gershgorin_lower(), 0.0) - 1.0;
    return {BandCholesky(m, shift), shift};
  }
}

// Shift-invert Lanczos with full reorthogonalization: the largest eigenvalue
// theta of (M - shift)^-1 gives lambda = shift + 1 / theta. A few inverse
// iteration steps then clean up the high-index tail of the eigenvector.
template <class Matrix>
EigenResult iterative_min(const Matrix& m, const SolverOptions& opt) {
  const std::size_t n = m.size();
  EigenResult res;
  res.solver = SolverKind::banded_iterative;
  auto [chol, shift] = factor_with_fallback(m);

  std::vector<double> x(n);
  if (n == 1) {
    x[0] = 1.0;
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : x) v = u(rng);
    scale(x, 1.0 / norm2(x));

    const std::size_t kmax = std::min<std::size_t>(n, 120);
    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;
    basis.push_back(x);
    std::vector<double> w(n);
    Eigen::VectorXd best;
    for (std::size_t j = 0; j < kmax; ++j) {
      w = basis[j];
      chol.solve(w);
      const double a = dot(w, basis[j]);
      alpha.push_back(a);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) {
          const double c = dot(w, b);
          for (std::size_t i = 0; i < n; ++i) w[i] -= c * b[i];
        }
      const double bnorm = norm2(w);
      ++res.iterations;

      const auto k = static_cast<Eigen::Index>(alpha.size());
      const bool last = j + 1 == kmax || bnorm < 1e-300;
      if (last || j % 4 == 3) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
          t(i, i) = alpha[static_cast<std::size_t>(i)];
          if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const double theta = es.eigenvalues()(k - 1);
        best = es.eigenvectors().col(k - 1);
        const double est = std::abs(bnorm * best(k - 1));
        if (last || est <= 1e-15 * std::abs(theta)) break;
      }
      beta.push_back(bnorm);
      scale(w, 1.0 / bnorm);
      basis.push_back(w);
    }
    std::fill(x.begin(), x.end(), 0.0);
    for (Eigen::Index i = 0; i < best.size(); ++i)
      for (std::size_t r = 0; r < n; ++r) x[r] += best(i) * basis[static_cast<std::size_t>(i)][r];
    scale(x, 1.0 / norm2(x));
  }

  auto rayleigh_inverse = [&](std::vector<double>& v) {
    std::vector<double> y = v;
    chol.solve(y);
    const double theta = dot(v, y);
    scale(y, 1.0 / norm2(y));
    v = std::move(y);
    return shift + 1.0 / theta;
  };

  double lambda = 0.0;
  for (int it = 0; it < 3; ++it) lambda = rayleigh_inverse(x);
  double r = residual(m, x, lambda);
  for (int it = 3; it < opt.max_iterations && !residual_within(r, lambda, opt.tol); ++it) {
    lambda = rayleigh_inverse(x);
    r = residual(m, x, lambda);
  }
  fix_sign(x);
  res.eigenvalue = lambda;
  res.vector = std::move(x);
  res.residual_norm = r;
  if (!residual_within(r, lambda, opt.tol))
    throw SolverError("iterative solver did not reach the residual tolerance", res);
  return res;
}

EigenResult dense_min(const Eigen::MatrixXd& a, const SolverOptions& opt) {
  const auto n = a.rows();
  if (static_cast<std::size_t>(n) > opt.dense_cap)
    throw std::length_error("matrix of size " + std::to_string(n) +
                                " exceeds the dense solver cap " + std::to_string(opt.dense_cap));
  double shift = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
      lo = std::min(lo, a(i, i) - (a.row(i).cwiseAbs().sum() - std::abs(a(i, i))));
    shift = std::min(lo, 0.0) - 1.0;
    llt.compute(a - shift * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() != Eigen::Success)
      throw SolverError("dense Cholesky failed after shifting", EigenResult{});
  }
  // The inverse (L L^T)^-1 = L^-T L^-1 shares eigenvectors with the matrix and
  // maps the smallest eigenvalue to the best-resolved end of the spectrum.
  Eigen::MatrixXd linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd g = linv.transpose() * linv;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  EigenResult res;
  res.solver = SolverKind::dense;
  res.eigenvalue = shift + 1.0 / es.eigenvalues()(n - 1);
  Eigen::VectorXd v = es.eigenvectors().col(n - 1).normalized();
  res.vector.assign(v.data(), v.data() + n);
  fix_sign(res.vector);
  Eigen::Map<const Eigen::VectorXd> vm(res.vector.data(), n);
  res.residual_norm = (a * vm - res.eigenvalue * vm).norm();
  res.iterations = 1;
  if (!residual_within(res.residual_norm, res.eigenvalue, opt.tol))
    throw SolverError("dense solver did not reach the residual tolerance", res);
  return res;
}

template <class Matrix>
EigenResult dispatch(const Matrix& m, const SolverOptions& opt) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (opt.kind == SolverKind::dense) return dense_min(m.to_dense(), opt);
  return iterative_min(m, opt);
}

}  // namespace

std::string to_string(SolverKind kind) {
  return kind == SolverKind::dense ? "dense" : "banded_iterative";
}

double FockVector::norm() const { return norm2(coefficients); }

double BipartiteFockVector::norm() const { return norm2(coefficients); }

void BipartiteFockVector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
  scale(coefficients, 1.0 / nrm);
}

FockVector EigenResult::fock_vector() const {
  if (bipartite) throw std::logic_error("result is bipartite");
  return FockVector{vector};
}

BipartiteFockVector EigenResult::bipartite_vector() const {
  if (!bipartite) throw std::logic_error("result is single-mode");
  BipartiteFockVector out(truncation, truncation);
  out.coefficients = vector;
  return out;
}

bool residual_within(double residual, double eigenvalue, double tol) {
  return std::isfinite(residual) && residual <= tol * std::max(1.0, std::abs(eigenvalue));
}

EigenResult min_eigenpair(const BandedFockMatrix& matrix, const SolverOptions& options) {
  auto r = dispatch(matrix, options);
  r.truncation = matrix.size();
  return r;
}

EigenResult min_eigenpair(const SparseSymmetricMatrix& matrix, const SolverOptions& options) {
  auto r = dispatch(matrix, options);
  r.truncation = matrix.size();
  return r;
}

std::size_t default_truncation(int order) { return order <= 8 ? 2000 : 4000; }

BandedFockMatrix quadrature_sum_matrix(int order, std::size_t truncation) {
  auto poly = expand_sum(order);
  auto m = to_fock_matrix(poly, truncation);
  BandedFockMatrix tagged(truncation, order);
  for (auto d : m.offsets()) {
    auto band = m.band(d);
    for (std::size_t i = 0; i < band.size(); ++i) tagged.add(i, d, band[i]);
  }
  return tagged;
}

namespace {

// The quadrature sum only couples levels four apart and the ground state lies
// in the class k = 0 mod 4, so the problem reduces to that sector.
BandedFockMatrix ground_sector(const BandedFockMatrix& m) {
  BandedFockMatrix s((m.size() + 3) / 4, m.order_tag());
  for (auto d : m.offsets()) {
    if (d % 4 != 0) continue;
    auto band = m.band(d);
    for (std::size_t i = 0; i < band.size(); i += 4) s.add(i / 4, d / 4, band[i]);
  }
  return s;
}

EigenResult solve_ground_sector(const BandedFockMatrix& full, const SolverOptions& options) {
  auto r = min_eigenpair(ground_sector(full), options);
  std::vector<double> v(full.size(), 0.0);
  for (std::size_t j = 0; j < r.vector.size(); ++j) v[4 * j] = r.vector[j];
  r.vector = std::move(v);
  r.truncation = full.size();
  return r;
}

}  // namespace

EigenResult solve_order(int order, std::size_t truncation, const SolverOptions& options) {
  return solve_ground_sector(quadrature_sum_matrix(order, truncation), options);
}

SweepResult truncation_sweep(int order, std::span<const std::size_t> schedule, double tol,
                             const SolverOptions& options) {
  if (schedule.empty()) throw std::invalid_argument("empty truncation schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1])
      throw std::invalid_argument("truncation schedule must be strictly increasing");
  SweepResult out;
  const auto full = quadrature_sum_matrix(order, schedule.back());
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const auto r = solve_ground_sector(full.leading(schedule[i]), options);
    out.points.push_back({schedule[i], r.eigenvalue});
    if (i == 0) continue;
    const double prev = out.points[i - 1].eigenvalue;
    if (r.eigenvalue > prev + 1e-11 * std::abs(prev)) out.monotone = false;
    if (!out.first_converged && std::abs(prev - r.eigenvalue) < tol) {
      out.first_converged = schedule[i];
    }
  }
  if (out.points.size() >= 2) {
    const auto& p = out.points;
    out.converged = std::abs(p[p.size() - 1].eigenvalue - p[p.size() - 2].eigenvalue) < tol;
  }
  return out;
}

SparseSymmetricMatrix build_bipartite_matrix(int order, int sign, std::size_t n) {
  if (n < 2) throw std::invalid_argument("bipartite truncation must be >= 2");
  if (n > kMaxBipartiteTruncation)
    throw std::length_error("bipartite truncation " + std::to_string(n) +
                            " exceeds the memory guard " +
                            std::to_string(kMaxBipartiteTruncation));
  const auto op = bipartite_quadrature_sum(order, sign, sign);
  std::vector<Triplet> trip;
  for (const auto& [mono, c] : op.terms()) {
    const long da = mono.a.creators - mono.a.annihilators;
    const long db = mono.b.creators - mono.b.annihilators;
    const long shift = da * static_cast<long>(n) + db;
    if (shift > 0) continue;  // upper triangle: row index <= column index
    for (std::size_t ka = 0; ka < n; ++ka) {
      const long ma = static_cast<long>(ka) + da;
      if (ma < 0 || ma >= static_cast<long>(n)) continue;
      const double ea = monomial_element(mono.a.creators, mono.a.annihilators, ka);
      if (ea == 0.0) continue;
      for (std::size_t kb = 0; kb < n; ++kb) {
        const long mb = static_cast<long>(kb) + db;
        if (mb < 0 || mb >= static_cast<long>(n)) continue;
        const double eb = monomial_element(mono.b.creators, mono.b.annihilators, kb);
        if (eb == 0.0) continue;
        const std::size_t row = static_cast<std::size_t>(ma) * n + static_cast<std::size_t>(mb);
        const std::size_t col = ka * n + kb;
        const double v = c * ea * eb;
        trip.push_back({row, col, v});
        if (row != col) trip.push_back({col, row, v});
      }
    }
  }
  return SparseSymmetricMatrix(n * n, std::move(trip));
}

EigenResult solve_bipartite(int order, int sign, std::size_t n, const SolverOptions& options) {
  auto r = min_eigenpair(build_bipartite_matrix(order, sign, n), options);
  r.truncation = n;
  r.bipartite = true;
  return r;
}

ScalingCheck verify_scaling_identity(int order, std::size_t n, double tol,
                                     std::size_t single_truncation) {
  ScalingCheck out;
  out.bipartite = solve_bipartite(order, 1, n).eigenvalue;
  out.single = solve_order(order, single_truncation).eigenvalue;
  const double scaled = std::ldexp(out.single, order / 2);
  out.relative_error = std::abs(out.bipartite - scaled) / out.bipartite;
  out.holds = out.relative_error <= tol;
  return out;
}

std::pair<double, double> eigenstate_moments(const FockVector& state, int order) {
  const auto n = state.size();
  const auto mx = to_fock_matrix(expand_quadrature_power(Quadrature::X, order), n);
  const auto mp = to_fock_matrix(expand_quadrature_power(Quadrature::P, order), n);
  return {mx.quadratic_form(state.coefficients), mp.quadratic_form(state.coefficients)};
}

std::pair<double, double> eigenstate_moments(const EigenResult& result, int order) {
  return eigenstate_moments(result.fock_vector(), order);
}

std::vector<double> schmidt_spectrum(const BipartiteFockVector& state) {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> c(state.coefficients.data(), static_cast<Eigen::Index>(state.dim_a),
                               static_cast<Eigen::Index>(state.dim_b));
  const Eigen::MatrixXd dense = c;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace hoepr
