#include "cesaro/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "cesaro/simd.hpp"

namespace cesaro {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::VectorXd symmetric_eigenvalues(const DenseSection& sec) {
  if (!sec.is_symmetric()) throw DomainError("section is not symmetric");
  const Eigen::Map<const RowMajor> a(sec.data.data(), static_cast<Eigen::Index>(sec.n),
                                     static_cast<Eigen::Index>(sec.n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DomainError("symmetric eigensolver did not converge");
  return es.eigenvalues();  // ascending
}

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

} // namespace

double dense_norm(const DenseSection& sec, std::uint64_t seed) {
  const std::size_t n = sec.n;
  if (n < 1 || sec.data.size() != n * n) throw DomainError("dense_norm: malformed section");

  constexpr double kRelResidual = 1e-13;
  const std::size_t max_steps = std::min<std::size_t>(n, 300);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& e : v) e = unif(rng);
  const double v_norm = std::sqrt(simd::dot(v, v));
  for (auto& e : v) e /= v_norm;

  std::vector<std::vector<double>> basis;
  std::vector<double> alphas, betas;
  std::vector<double> av(n), w(n);
  double theta = 0.0;

  for (std::size_t k = 0; k < max_steps; ++k) {
    simd::gemv(sec.data, n, n, v, av);
    simd::gemv_transposed(sec.data, n, n, av, w);
    const double alpha = simd::dot(w, v);
    axpy(-alpha, v, w);
    if (!basis.empty()) axpy(-betas.back(), basis.back(), w);
    basis.push_back(v);
    // Twice is enough.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) axpy(-simd::dot(w, q), q, w);
    const double beta = std::sqrt(simd::dot(w, w));
    alphas.push_back(alpha);

    const auto m = static_cast<Eigen::Index>(alphas.size());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alphas.data(), m);
    Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(betas.data(), m - 1))
                                : Eigen::VectorXd(0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    theta = es.eigenvalues()(m - 1);
    const double residual = beta * std::abs(es.eigenvectors()(m - 1, m - 1));

    const double scale = std::max(theta, std::numeric_limits<double>::min());
    if (residual <= kRelResidual * scale || beta <= 1e-14 * scale || k + 1 == n) break;
    betas.push_back(beta);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / beta;
  }
  return std::sqrt(std::max(theta, 0.0));
}

double min_eigenvalue(const DenseSection& sec) { return symmetric_eigenvalues(sec)(0); }

SpectralReport hyponormality_check(std::size_t n, double tol, const TailConfig& cfg) {
  const DenseSection sec = truncate(commutator(cfg), n);
  const double required = rounding::mul_up(static_cast<double>(n), sec.max_width);
  if (!(tol >= required))
    throw DomainError("tolerance " + std::to_string(tol) + " is below the width inflation " +
                      std::to_string(required) + "; refusing an unsound check");
  const Eigen::VectorXd ev = symmetric_eigenvalues(sec);
  SpectralReport r;
  r.n = n;
  r.min_eig = ev(0);
  r.max_eig = ev(ev.size() - 1);
  r.norm2 = std::max(std::abs(r.min_eig), std::abs(r.max_eig));
  r.tolerance_used = tol;
  r.max_width = sec.max_width;
  r.passed = r.min_eig >= -tol;
  return r;
}

std::string_view to_string(Summability s) {
  switch (s) {
  case Summability::inside: return "inside";
  case Summability::outside: return "outside";
  case Summability::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

EigenProbe adjoint_eigen_probe(std::complex<double> lambda, std::size_t n) {
  if (lambda == 0.0) throw DomainError("lambda = 0 is not an eigenvalue candidate");
  if (n < 8) throw DomainError("probe length must be >= 8");

  EigenProbe probe;
  probe.lambda = lambda;
  auto& x = probe.coeffs;
  x.assign(n, 0.0);
  x[0] = 1.0;
  // Row k minus row k+1 of C* x = lambda x: x_k/(k+1) = lambda (x_k - x_{k+1}).
  std::size_t support = n;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    x[k + 1] = x[k] * (1.0 - 1.0 / (lambda * static_cast<double>(k + 1)));
    if (x[k + 1] == 0.0 && support == n) support = k + 1;
  }

  bool finite = true;
  double sq = 0.0;
  for (const auto& c : x) {
    finite = finite && std::isfinite(c.real()) && std::isfinite(c.imag());
    sq += std::norm(c);
  }
  if (!finite) {
    probe.residual = std::numeric_limits<double>::infinity();
    probe.coeff_norm = std::numeric_limits<double>::infinity();
    probe.verdict = Summability::inconclusive;
    return probe;
  }
  probe.coeff_norm = std::sqrt(sq);

  // (C*_n x)_k = sum_{j=k}^{n-1} x_j/(j+1), accumulated from the end.
  std::vector<std::complex<double>> cx(n);
  std::complex<double> acc = 0.0;
  for (std::size_t j = n; j-- > 0;) {
    acc += x[j] / static_cast<double>(j + 1);
    cx[j] = acc;
  }
  double r2 = 0.0;
  for (std::size_t k = 0; k < n / 2; ++k) r2 += std::norm(cx[k] - lambda * x[k]);
  probe.residual = std::sqrt(r2);

  if (support < n) {
    probe.decay_exponent = std::numeric_limits<double>::infinity();
    probe.verdict = Summability::inside;
    return probe;
  }

  // Least-squares slope of log|x_k| against log k over the last quarter.
  const std::size_t k0 = std::max<std::size_t>(1, (3 * n) / 4);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto cnt = static_cast<double>(n - k0);
  for (std::size_t k = k0; k < n; ++k) {
    const double lx = std::log(static_cast<double>(k));
    const double ly = std::log(std::abs(x[k]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  probe.decay_exponent = -slope;

  constexpr double kThreshold = 0.5;
  constexpr double kMargin = 0.05;
  if (probe.decay_exponent > kThreshold + kMargin)
    probe.verdict = Summability::inside;
  else if (probe.decay_exponent < kThreshold - kMargin)
    probe.verdict = Summability::outside;
  else
    probe.verdict = Summability::inconclusive;
  return probe;
}

std::vector<double> section_spectrum(const EntryOracle& op, std::size_t n) {
  if (!op.symmetric)
    throw UnsupportedError("section spectra of the nonsymmetric operator '" + op.name +
                           "' are spectral pollution; refusing");
  const Eigen::VectorXd ev = symmetric_eigenvalues(truncate(op, n));
  return {ev.data(), ev.data() + ev.size()};
}

} // namespace cesaro
