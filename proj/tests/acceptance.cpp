// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "cesaro/analysis.hpp"
#include "cesaro/kernels.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/schur.hpp"

using namespace cesaro;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kNMax = 10'000;
const TailConfig kCfg{1'000'000};

// Reference spectral norm of the 4096 Cesaro section (LAPACK SVD,
// tests/oracles/frozen_values.py).
constexpr double kCesaro4096 = 1.7947759186163759;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      else detail += "; " + what;
      pass = false;
    }
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Outcome ac1_identities() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const TailTable table(kCfg);
  std::size_t bad = 0;
  double widest = 0.0;
  for (std::size_t m = 1; m <= kNMax; ++m) {
    const IdentityWitness w = table.verify_identity(m);
    bad += !w.consistent;
    widest = std::max({widest, w.lhs.width(), w.rhs.width()});
  }
  // Spot checks through the direct (non-table) summation path.
  for (std::size_t m : {1u, 2u, 5000u, 10000u}) bad += !verify_identity(m, kCfg).consistent;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(bad == 0, std::to_string(bad) + " inconsistent witnesses");
  o.require(widest < 1e-6, "max width " + fmt(widest));
  o.require(secs < 60.0, "took " + fmt(secs) + " s");
  if (o.pass) o.detail = "m<=10^4 consistent, max width " + fmt(widest) + ", " + fmt(secs) + " s";
  return o;
}

Outcome ac2_bounds() {
  Outcome o;
  const auto table = TailTable::shared(kCfg);
  std::size_t violations = 0;
  double min_margin = INFINITY;
  for (std::size_t m = 2; m <= kNMax; ++m) {
    const double hi = table->commutator_tail(m).hi();
    const double b = commutator_tail_bound(m);
    violations += !(hi < b);
    min_margin = std::min(min_margin, (b - hi) / b);
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = "0 violations, min relative margin " + fmt(min_margin);
  return o;
}

Outcome ac3_row_sums() {
  Outcome o;
  const EntryOracle d = commutator(kCfg);
  std::size_t violations = 0;
  for (std::size_t n = 2; n <= kNMax; ++n)
    violations += !(d.row_abs_sum(n - 1).hi() < row_sum_estimate(n));
  o.require(violations == 0, std::to_string(violations) + " rows above (2n-1)/(2(n-1)^2)");
  const Interval r1 = d.row_abs_sum(0), r2 = d.row_abs_sum(1);
  o.require(r1.contains(1.0) && r1.width() <= 1e-8, "row 1 enclosure misses 1");
  o.require(r2.contains(0.5) && r2.width() <= 1e-8, "row 2 enclosure misses 0.5");
  if (o.pass) o.detail = "0 violations; row1 width " + fmt(r1.width()) + ", row2 width " + fmt(r2.width());
  return o;
}

Outcome ac4_compactness() {
  Outcome o;
  const EntryOracle d = commutator(kCfg);
  const DecayCertificate c = compactness_certificate(d, {10, 100, 1000, 10000});
  o.require(c.vanishes, "certificate does not vanish");
  const double env = c.samples.back().envelope;
  o.require(env < 1.1e-4, "envelope(10^4) = " + fmt(env));
  for (std::size_t N : {50u, 100u, 200u}) {
    const Interval bound = truncation_error_bound(d, N);
    DenseSection diff = truncate(d, 2 * N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) diff.data[i * diff.n + j] = 0.0;
    const double norm = dense_norm(diff);
    const double tol = 1e-9 + 2.0 * static_cast<double>(N) * diff.max_width;
    o.require(norm <= bound.hi() + tol,
              "N=" + std::to_string(N) + ": " + fmt(norm) + " > " + fmt(bound.hi()));
  }
  if (o.pass) o.detail = "vanishes, envelope(10^4) = " + fmt(env) + ", truncation bounds hold";
  return o;
}

Outcome ac5_psd() {
  Outcome o;
  double worst = INFINITY;
  for (std::size_t n : {1u, 50u, 500u, 1500u}) {
    const DenseSection s = truncate(commutator(kCfg), n);
    const double lam = min_eigenvalue(s);
    worst = std::min(worst, lam);
    o.require(lam >= -1e-9, "n=" + std::to_string(n) + " min eigenvalue " + fmt(lam));
  }
  if (o.pass) o.detail = "smallest min eigenvalue " + fmt(worst);
  return o;
}

Outcome ac6_schur() {
  Outcome o;
  const EntryOracle d = commutator(kCfg);
  const SchurResult r = schur_test(d, SchurWeight::unit(), 1, kNMax, envelope_tail(d));
  if (!r.ok()) {
    o.require(false, "Schur test failed");
    return o;
  }
  const auto& c = *r.certificate;
  o.require(c.alpha == c.beta, "alpha != beta");
  o.require(c.alpha.contains(1.0), "alpha misses the row-1 sum 1.0");
  o.require(c.norm_bound <= 1.0 + 1e-6, "normBound " + fmt(c.norm_bound));
  for (std::size_t n : {1u, 50u, 500u, 1500u}) {
    const double nrm = dense_norm(truncate(d, n));
    o.require(nrm <= c.norm_bound + 1e-6, "n=" + std::to_string(n) + " norm " + fmt(nrm));
  }
  if (o.pass) o.detail = "normBound " + fmt(c.norm_bound);
  return o;
}

Outcome ac7_products() {
  Outcome o;
  const EntryOracle g = gram(kCfg);
  std::size_t misses = 0, exact_misses = 0;
  for (Index i = 0; i < 200; ++i)
    for (Index j = 0; j < 200; ++j) {
      misses += !gram_partial_product(i, j, 400).intersects(g.entry(i, j));
      exact_misses += !(cogram_finite_product(i, j) == cogram_closed_form(i, j));
    }
  o.require(misses == 0, std::to_string(misses) + " C*C entries missed");
  o.require(exact_misses == 0, std::to_string(exact_misses) + " CC* entries differ");
  if (o.pass) o.detail = "40000 C*C and CC* entries consistent";
  return o;
}

Outcome ac8_cesaro_norms() {
  Outcome o;
  const SchurResult r = schur_test(cesaro::cesaro(), SchurWeight::power_law(0.5), 1, 64,
                                   cesaro_sqrt_weight_tail(), TailConfig{100'000});
  const double ceiling = r.ok() ? r.certificate->norm_bound : INFINITY;
  o.require(r.ok(), "square-root weight Schur test failed");
  double prev = 0.0, last = 0.0;
  for (std::size_t n = 16; n <= 4096; n *= 2) {
    const double v = dense_norm(truncate(cesaro::cesaro(), n));
    o.require(v >= prev, "not monotone at n=" + std::to_string(n));
    o.require(v <= ceiling, "n=" + std::to_string(n) + " above Schur bound");
    prev = last = v;
  }
  o.require(std::abs(last - kCesaro4096) <= 1e-8,
            "n=4096 norm " + fmt(last) + " differs from SVD reference");
  if (o.pass)
    o.detail = "monotone to " + fmt(last) + " <= " + fmt(ceiling) +
               ", |diff| " + fmt(std::abs(last - kCesaro4096));
  return o;
}

Outcome ac9_probes() {
  Outcome o;
  const EigenProbe one = adjoint_eigen_probe(1.0, kNMax);
  bool unit = one.coeffs[0] == std::complex<double>(1.0);
  for (std::size_t k = 1; k < one.coeffs.size(); ++k) unit = unit && one.coeffs[k] == 0.0;
  o.require(one.residual == 0.0 && unit, "lambda=1 is not e_0 with zero residual");

  const EigenProbe in = adjoint_eigen_probe(0.8, kNMax);
  o.require(in.verdict == Summability::inside, "lambda=0.8 verdict not inside");
  o.require(in.residual <= 1e-8 * in.coeff_norm,
            "lambda=0.8 residual " + fmt(in.residual) + " > 1e-8*||x|| = " +
                fmt(1e-8 * in.coeff_norm));

  const EigenProbe out = adjoint_eigen_probe(2.5, kNMax);
  o.require(out.verdict == Summability::outside, "lambda=2.5 verdict not outside");
  if (o.pass) o.detail = "all probe checks hold";
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = "'" CESARO_CLI "' " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac10_determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("cesaro_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path a = dir / "a.json", b = dir / "b.json";
  const int ra = run_cli("all --out '" + a.string() + "'");
  const int rb = run_cli("all --out '" + b.string() + "'");
  o.require(ra == 0, "first run exit " + std::to_string(ra));
  o.require(rb == 0, "second run exit " + std::to_string(rb));
  const std::string x = slurp(a), y = slurp(b);
  o.require(!x.empty() && x == y, "reports differ");
  if (o.pass) o.detail = "two runs exit 0, " + std::to_string(x.size()) + " identical bytes";
  fs::remove_all(dir);
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1  identity suite", ac1_identities},
      {"AC2  strict bound suite", ac2_bounds},
      {"AC3  row-sum suite", ac3_row_sums},
      {"AC4  compactness certificate", ac4_compactness},
      {"AC5  positive semidefinite sections", ac5_psd},
      {"AC6  Schur soundness", ac6_schur},
      {"AC7  closed-form products", ac7_products},
      {"AC8  Cesaro norm monotonicity and ceiling", ac8_cesaro_norms},
      {"AC9  point-spectrum probes", ac9_probes},
      {"AC10 CLI determinism", ac10_determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
