#include "cesaro/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "cesaro/kernels.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/simd.hpp"

namespace cesaro::report {
namespace {

using json = nlohmann::ordered_json;

constexpr double kPsdFloor = 1e-9;
constexpr double kNormSlack = 1e-6;
constexpr double kAnchorWidth = 1e-8;
constexpr double kGramCeiling = 4.0001;
constexpr double kCesaroSchurCeiling = 3.0;
constexpr std::size_t kCesaroSweep = 64;
constexpr std::size_t kCesaroBudget = 100'000;

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

// Records checks for one section; remembers the first failing one.
class Checks {
public:
  explicit Checks(Section& s) : s_(s) {}
  bool operator()(bool ok, std::string_view check, const std::string& detail) {
    if (!ok && s_.passed) {
      s_.passed = false;
      s_.first_failure = Failure{std::string(to_string(s_.command)), std::string(check), detail};
    }
    return ok;
  }

private:
  Section& s_;
};

std::string describe(const Interval& x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::vector<std::size_t> powers_of_ten_up_to(std::size_t limit) {
  std::vector<std::size_t> out;
  for (std::size_t N = 10; N <= limit; N *= 10) out.push_back(N);
  return out;
}

Section identities(const RunConfig& cfg, const TailTable& table) {
  Section s;
  s.command = Command::verify_identities;
  Checks check(s);
  Table t{"identities", {"m", "lhs", "rhs", "consistent"}, {}};
  for (std::size_t m = 1; m <= cfg.n_max; ++m) {
    const IdentityWitness w = table.verify_identity(m);
    t.rows.push_back({as_int(m), w.lhs, w.rhs, w.consistent});
    check(w.consistent, "identity s_m - 1/m = t_m",
          "m=" + std::to_string(m) + " lhs=" + describe(w.lhs) + " rhs=" + describe(w.rhs));
  }
  s.tables.push_back(std::move(t));
  return s;
}

Section bounds(const RunConfig& cfg, const TailTable& table) {
  Section s;
  s.command = Command::verify_bounds;
  Checks check(s);
  Table t{"bounds", {"n", "t_hi", "bound", "margin", "holds"}, {}};
  for (std::size_t n = 2; n <= cfg.n_max; ++n) {
    const double hi = table.commutator_tail(n).hi();
    const double bound = commutator_tail_bound(n);
    const bool holds = hi < bound;
    t.rows.push_back({as_int(n), hi, bound, bound - hi, holds});
    check(holds, "t_n < 1/(2(n-1)^2)",
          "n=" + std::to_string(n) + " t_hi=" + num(hi) + " bound=" + num(bound));
  }
  s.tables.push_back(std::move(t));
  return s;
}

Section commutator_section(const RunConfig& cfg) {
  Section s;
  s.command = Command::commutator_report;
  Checks check(s);
  const EntryOracle delta = commutator(cfg.tail_config());

  Table rows{"row_sums", {"n", "row_sum", "estimate", "holds"}, {}};
  for (std::size_t n = 2; n <= cfg.n_max; ++n) {
    const Interval rs = delta.row_abs_sum(n - 1);
    const double est = row_sum_estimate(n);
    const bool holds = rs.hi() < est;
    rows.rows.push_back({as_int(n), rs, est, holds});
    check(holds, "row sum < (2n-1)/(2(n-1)^2)",
          "n=" + std::to_string(n) + " row=" + describe(rs) + " estimate=" + num(est));
  }

  Table anchors{"anchors", {"n", "row_sum", "expected", "width", "encloses"}, {}};
  for (auto [n, expected] : {std::pair<std::size_t, double>{1, 1.0}, {2, 0.5}}) {
    const Interval rs = delta.row_abs_sum(n - 1);
    const bool ok = rs.contains(expected) && rs.width() <= kAnchorWidth;
    anchors.rows.push_back({as_int(n), rs, expected, rs.width(), ok});
    check(ok, "row sum anchor",
          "n=" + std::to_string(n) + " row=" + describe(rs) + " expected=" + num(expected));
  }

  std::vector<std::size_t> Ns;
  for (std::size_t N : powers_of_ten_up_to(cfg.n_max))
    if (N + 1000 <= cfg.cutoff) Ns.push_back(N);
  Table decay{"decay_samples", {"N", "sup", "envelope", "holds"}, {}};
  if (!Ns.empty()) {
    const DecayCertificate dc = compactness_certificate(delta, Ns);
    for (const auto& smp : dc.samples)
      decay.rows.push_back({as_int(smp.N), smp.sup, smp.envelope, smp.sup.hi() <= smp.envelope});
    check(dc.vanishes, "decay certificate", "row sums beyond N exceed the envelope");
    s.extra["decay_certificate"] = to_json(dc, delta.name);
  }

  Table trunc{"truncation", {"N", "bound", "section_difference_norm", "holds"}, {}};
  for (std::size_t N : {50u, 100u, 200u}) {
    if (2 * N > cfg.cutoff) continue;
    const Interval bound = truncation_error_bound(delta, N);
    DenseSection diff = truncate(delta, 2 * N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) diff.data[i * diff.n + j] = 0.0;
    const double norm = dense_norm(diff, cfg.seed);
    const double allowance = kPsdFloor + rounding::mul_up(2.0 * N, diff.max_width);
    const bool holds = norm <= bound.hi() + allowance;
    trunc.rows.push_back({as_int(N), bound, norm, holds});
    check(holds, "||D_2N - D_N|| <= truncation bound",
          "N=" + std::to_string(N) + " norm=" + num(norm) + " bound=" + describe(bound));
  }

  s.tables.push_back(std::move(rows));
  s.tables.push_back(std::move(anchors));
  s.tables.push_back(std::move(decay));
  s.tables.push_back(std::move(trunc));
  return s;
}

SchurResult commutator_schur(const RunConfig& cfg) {
  const EntryOracle delta = commutator(cfg.tail_config());
  return schur_test(delta, SchurWeight::unit(), 1, cfg.n_max, envelope_tail(delta));
}

TailConfig cesaro_budget(const RunConfig& cfg) {
  return TailConfig{std::min(cfg.cutoff, kCesaroBudget)};
}

json failure_json(const std::string& op, const SchurWeight& w, const DivergenceWitness& f) {
  json j;
  j["operator"] = op;
  j["weight"] = w.label;
  j["status"] = "divergent";
  j["witness"] = {{"line", f.line}, {"index", f.index}, {"partialSum", f.partial_sum}};
  return j;
}

Section schur_section(const RunConfig& cfg) {
  Section s;
  s.command = Command::schur;
  Checks check(s);
  Table t{"schur", {"operator", "weight", "alpha", "beta", "norm_bound", "status", "holds"}, {}};
  json certs = json::array();

  auto record = [&](const std::string& op, const SchurWeight& w, const SchurResult& r,
                    bool holds, const std::string& what) {
    if (r.certificate) {
      const auto& c = *r.certificate;
      t.rows.push_back({op, w.label, c.alpha, c.beta, c.norm_bound, std::string("certified"), holds});
      certs.push_back(to_json(c));
    } else {
      t.rows.push_back({op, w.label, std::monostate{}, std::monostate{}, std::monostate{},
                        std::string("divergent"), holds});
      certs.push_back(failure_json(op, w, *r.failure));
    }
    check(holds, what, op + " / " + w.label);
  };

  {
    const SchurResult r = commutator_schur(cfg);
    const bool holds = r.ok() && r.certificate->alpha.contains(1.0) &&
                       r.certificate->norm_bound <= 1.0 + kNormSlack;
    record("commutator", SchurWeight::unit(), r, holds, "Schur bound for the commutator");
  }
  {
    const auto w = SchurWeight::power_law(0.5);
    const SchurResult r =
        schur_test(cesaro(), w, 1, kCesaroSweep, cesaro_sqrt_weight_tail(), cesaro_budget(cfg));
    const bool holds = r.ok() && r.certificate->norm_bound <= kCesaroSchurCeiling;
    record("cesaro", w, r, holds, "Schur bound for C with the square-root weight");
  }
  {
    const auto w = SchurWeight::unit();
    AnalyticTail tail;
    tail.rows = [](std::size_t) { return 1.0; };
    tail.cols = [](std::size_t) { return std::numeric_limits<double>::infinity(); };
    const SchurResult r = schur_test(cesaro(), w, 1, 8, tail, cesaro_budget(cfg));
    record("cesaro", w, r, !r.ok() && r.failure.has_value(),
           "divergence of C column sums with unit weight");
  }
  s.tables.push_back(std::move(t));
  s.extra["certificates"] = std::move(certs);
  return s;
}

double section_tolerance(const TailTable& table, std::size_t n) {
  double widest = 0.0;
  for (std::size_t m = 1; m <= n; ++m) widest = std::max(widest, table.commutator_tail(m).width());
  return std::max(kPsdFloor, rounding::mul_up(static_cast<double>(n), widest));
}

Section spectral_section(const RunConfig& cfg, const TailTable& table) {
  Section s;
  s.command = Command::spectral;
  Checks check(s);
  const TailConfig tc = cfg.tail_config();
  const EntryOracle delta = commutator(tc);
  const EntryOracle g = gram(tc);

  Table hypo{"hyponormality",
             {"n", "min_eig", "max_eig", "norm2", "tolerance", "max_width", "passed"},
             {}};
  Table gspec{"gram_spectrum", {"n", "min_eig", "max_eig", "holds"}, {}};
  Table dnorm{"commutator_norms", {"n", "dense_norm", "schur_bound", "holds"}, {}};

  const SchurResult schur = commutator_schur(cfg);
  const double delta_bound =
      schur.ok() ? schur.certificate->norm_bound : std::numeric_limits<double>::infinity();

  for (std::size_t n : cfg.section_sizes) {
    const SpectralReport r = hyponormality_check(n, section_tolerance(table, n), tc);
    hypo.rows.push_back({as_int(n), r.min_eig, r.max_eig, r.norm2, r.tolerance_used, r.max_width,
                         r.passed});
    check(r.passed, "section of C*C - CC* is positive semidefinite",
          "n=" + std::to_string(n) + " min_eig=" + num(r.min_eig));

    const std::vector<double> ev = section_spectrum(g, n);
    const bool g_ok = ev.front() >= -kPsdFloor && ev.back() <= kGramCeiling;
    gspec.rows.push_back({as_int(n), ev.front(), ev.back(), g_ok});
    check(g_ok, "eigenvalues of C*C sections in [0, 4]",
          "n=" + std::to_string(n) + " range=[" + num(ev.front()) + ", " + num(ev.back()) + "]");

    const double dn = dense_norm(truncate(delta, n), cfg.seed);
    const bool d_ok = dn <= delta_bound + kNormSlack;
    dnorm.rows.push_back({as_int(n), dn, delta_bound, d_ok});
    check(d_ok, "commutator section norm below Schur bound",
          "n=" + std::to_string(n) + " norm=" + num(dn));
  }

  const auto ces_cert = schur_test(cesaro(), SchurWeight::power_law(0.5), 1, kCesaroSweep,
                                   cesaro_sqrt_weight_tail(), cesaro_budget(cfg));
  const double ces_bound =
      ces_cert.ok() ? ces_cert.certificate->norm_bound : std::numeric_limits<double>::infinity();
  Table cnorm{"cesaro_norms", {"n", "dense_norm", "schur_bound", "monotone", "holds"}, {}};
  double previous = 0.0;
  for (std::size_t n = 16; n <= 4096; n *= 2) {
    const double dn = dense_norm(truncate(cesaro(), n), cfg.seed);
    const bool monotone = dn >= previous;
    const bool ok = monotone && dn <= ces_bound;
    cnorm.rows.push_back({as_int(n), dn, ces_bound, monotone, ok});
    check(ok, "Cesaro section norms nondecreasing and below Schur bound",
          "n=" + std::to_string(n) + " norm=" + num(dn));
    previous = dn;
  }

  Table probes{"probes",
               {"lambda_re", "lambda_im", "n", "residual", "coeff_norm", "decay_exponent",
                "verdict", "expected", "holds"},
               {}};
  const std::size_t probe_len = std::max<std::size_t>(8, cfg.n_max);
  struct Expect {
    std::complex<double> lambda;
    Summability verdict;
  };
  for (const Expect& e : {Expect{1.0, Summability::inside}, Expect{0.8, Summability::inside},
                          Expect{2.5, Summability::outside}}) {
    const EigenProbe p = adjoint_eigen_probe(e.lambda, probe_len);
    bool ok = p.verdict == e.verdict;
    if (e.lambda == 1.0) ok = ok && p.residual == 0.0;
    probes.rows.push_back({e.lambda.real(), e.lambda.imag(), as_int(probe_len), p.residual,
                           p.coeff_norm, p.decay_exponent, std::string(to_string(p.verdict)),
                           std::string(to_string(e.verdict)), ok});
    check(ok, "adjoint eigen probe verdict",
          "lambda=" + num(e.lambda.real()) + " verdict=" + std::string(to_string(p.verdict)));
  }

  s.tables.push_back(std::move(hypo));
  s.tables.push_back(std::move(gspec));
  s.tables.push_back(std::move(dnorm));
  s.tables.push_back(std::move(cnorm));
  s.tables.push_back(std::move(probes));
  return s;
}

json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else if constexpr (std::is_same_v<T, Interval>) return json::array({v.lo(), v.hi()});
        else if constexpr (std::is_same_v<T, double>) {
          if (std::isfinite(v)) return v;
          return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
        } else return v;
      },
      c);
}

void put_double(std::ostream& os, double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  os.write(buf, res.ptr - buf);
}

void put_text(std::ostream& os, const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    os << s;
    return;
  }
  os << '"';
  for (char ch : s) {
    if (ch == '"') os << '"';
    os << ch;
  }
  os << '"';
}

void put_cell(std::ostream& os, const Cell& c, bool interval_column) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          if (interval_column) os << ',';
        } else if constexpr (std::is_same_v<T, bool>) os << (v ? "true" : "false");
        else if constexpr (std::is_same_v<T, std::int64_t>) os << v;
        else if constexpr (std::is_same_v<T, double>) put_double(os, v);
        else if constexpr (std::is_same_v<T, std::string>) put_text(os, v);
        else {
          put_double(os, v.lo());
          os << ',';
          put_double(os, v.hi());
        }
      },
      c);
}

// A column is an interval column when any row holds an Interval there.
std::vector<bool> interval_columns(const Table& t) {
  std::vector<bool> out(t.columns.size(), false);
  for (const auto& row : t.rows)
    for (std::size_t c = 0; c < row.size() && c < out.size(); ++c)
      if (std::holds_alternative<Interval>(row[c])) out[c] = true;
  return out;
}

// Interval columns are known from their names when a table has no rows.
const std::vector<std::string>& known_interval_names() {
  static const std::vector<std::string> names{"lhs", "rhs", "row_sum", "sup", "bound", "alpha",
                                              "beta"};
  return names;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move report into place at " + path.string());
  }
}

} // namespace

std::string_view to_string(Command c) {
  switch (c) {
  case Command::verify_identities: return "verify-identities";
  case Command::verify_bounds: return "verify-bounds";
  case Command::commutator_report: return "commutator-report";
  case Command::schur: return "schur";
  case Command::spectral: return "spectral";
  case Command::all: return "all";
  }
  return "all";
}

std::optional<Command> parse_command(std::string_view s) {
  for (Command c : {Command::verify_identities, Command::verify_bounds, Command::commutator_report,
                    Command::schur, Command::spectral, Command::all})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (n_max < 2) throw UsageError("--n-max must be >= 2");
  try {
    tail_config().validate();
  } catch (const DomainError& e) {
    throw UsageError(std::string("invalid --cutoff: ") + e.what());
  }
  if (cutoff < n_max + 1) throw UsageError("--cutoff must exceed --n-max");
  if (section_sizes.empty()) throw UsageError("--sections must not be empty");
  for (std::size_t i = 0; i < section_sizes.size(); ++i) {
    if (section_sizes[i] == 0) throw UsageError("section sizes must be positive");
    if (i > 0 && section_sizes[i] <= section_sizes[i - 1])
      throw UsageError("section sizes must be strictly ascending");
  }
  if (section_sizes.back() > cutoff) throw UsageError("section sizes must not exceed --cutoff");
  if (out_path.empty()) throw UsageError("output path must not be empty");
}

bool Report::passed() const {
  return std::all_of(sections.begin(), sections.end(), [](const Section& s) { return s.passed; });
}

std::optional<Failure> Report::first_failure() const {
  for (const auto& s : sections)
    if (!s.passed) return s.first_failure;
  return std::nullopt;
}

Report run(const RunConfig& cfg) {
  cfg.validate();
  Report r;
  r.config = cfg;
  r.isa = std::string(simd::to_string(simd::active().isa));
  const auto table = TailTable::shared(cfg.tail_config());
  const bool all = cfg.command == Command::all;
  if (all || cfg.command == Command::verify_identities) r.sections.push_back(identities(cfg, *table));
  if (all || cfg.command == Command::verify_bounds) r.sections.push_back(bounds(cfg, *table));
  if (all || cfg.command == Command::commutator_report) r.sections.push_back(commutator_section(cfg));
  if (all || cfg.command == Command::schur) r.sections.push_back(schur_section(cfg));
  if (all || cfg.command == Command::spectral) r.sections.push_back(spectral_section(cfg, *table));
  return r;
}

int exit_status(const Report& r) { return r.passed() ? 0 : 1; }

json to_json(const SchurCertificate& c) {
  json j;
  j["operator"] = c.operator_name;
  j["weight"] = c.weight.label;
  j["status"] = "certified";
  j["alpha"] = {c.alpha.lo(), c.alpha.hi()};
  j["beta"] = {c.beta.lo(), c.beta.hi()};
  j["normBound"] = c.norm_bound;
  j["sweep"] = {c.sweep_first, c.sweep_last};
  j["alphaRow"] = c.alpha_row;
  j["betaFromSymmetry"] = c.beta_from_symmetry;
  return j;
}

json to_json(const DecayCertificate& c, std::string_view op_name) {
  json j;
  j["operator"] = std::string(op_name);
  json samples = json::array();
  for (const auto& s : c.samples) samples.push_back({s.N, s.sup.lo(), s.sup.hi()});
  j["samples"] = std::move(samples);
  json env = json::array();
  for (const auto& s : c.samples) env.push_back({s.N, s.envelope});
  j["envelope"] = c.envelope.formula_id;
  j["envelopeValues"] = std::move(env);
  j["window"] = c.window;
  j["vanishes"] = c.vanishes;
  return j;
}

json to_json(const Report& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = "cesaro-certify";
  j["config"] = {{"command", std::string(to_string(r.config.command))},
                 {"nMax", r.config.n_max},
                 {"cutoff", r.config.cutoff},
                 {"sectionSizes", r.config.section_sizes},
                 {"seed", r.config.seed}};
  j["simd"] = r.isa;
  j["passed"] = r.passed();
  if (auto f = r.first_failure())
    j["firstFailure"] = {{"command", f->command}, {"check", f->check}, {"detail", f->detail}};
  else
    j["firstFailure"] = nullptr;
  for (const auto& s : r.sections) {
    json sec;
    sec["passed"] = s.passed;
    for (const auto& t : s.tables) {
      json rows = json::array();
      for (const auto& row : t.rows) {
        json obj;
        for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = cell_json(row[c]);
        rows.push_back(std::move(obj));
      }
      sec[t.name] = std::move(rows);
    }
    for (auto it = s.extra.begin(); it != s.extra.end(); ++it) sec[it.key()] = it.value();
    j[std::string(to_string(s.command))] = std::move(sec);
  }
  return j;
}

void write_csv(const Table& t, std::ostream& os) {
  std::vector<bool> iv = interval_columns(t);
  if (t.rows.empty()) {
    const auto& names = known_interval_names();
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      iv[c] = std::find(names.begin(), names.end(), t.columns[c]) != names.end();
  }
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) os << ',';
    if (iv[c])
      os << t.columns[c] << "_lo," << t.columns[c] << "_hi";
    else
      os << t.columns[c];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (c) os << ',';
      put_cell(os, row[c], iv[c]);
    }
    os << '\n';
  }
}

std::vector<std::pair<std::filesystem::path, const Table*>> csv_targets(
    const Report& r, const std::filesystem::path& path) {
  std::vector<std::pair<std::filesystem::path, const Table*>> out;
  std::size_t total = 0;
  for (const auto& s : r.sections) total += s.tables.size();
  for (const auto& s : r.sections) {
    for (const auto& t : s.tables) {
      if (total == 1) {
        out.emplace_back(path, &t);
      } else {
        std::filesystem::path p = path.parent_path() /
                                  (path.stem().string() + "." + std::string(to_string(s.command)) +
                                   "." + t.name + path.extension().string());
        out.emplace_back(std::move(p), &t);
      }
    }
  }
  return out;
}

void emit_report(const Report& r, Format format, const std::filesystem::path& path) {
  if (format == Format::json) {
    write_atomically(path, to_json(r).dump(2) + "\n");
    return;
  }
  for (const auto& [target, table] : csv_targets(r, path)) {
    std::ostringstream os;
    write_csv(*table, os);
    write_atomically(target, os.str());
  }
}

void check_writable(const std::filesystem::path& path) {
  std::filesystem::path probe = path;
  probe += ".probe";
  std::ofstream out(probe, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("output path " + path.string() + " is not writable");
  out.close();
  std::error_code ec;
  std::filesystem::remove(probe, ec);
}

} // namespace cesaro::report
