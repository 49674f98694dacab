// cesaro-certify: command-line front end for the certification report.
//
//   cesaro-certify <command> [--n-max N] [--cutoff M] [--sections 1,50,...]
//                  [--out PATH] [--format json|csv] [--seed S]
//
// CESARO_OUT overrides the default output path; --out overrides both.
// Exit status: 0 all checks pass, 1 a check or serialisation failed,
// 2 usage error or unwritable output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cesaro/errors.hpp"
#include "cesaro/report.hpp"

namespace {

using namespace cesaro::report;

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in --sections");
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("--sections entry '" + item + "' is not a nonnegative integer");
    }
    if (pos != item.size() || item.front() == '-')
      throw UsageError("--sections entry '" + item + "' is not a nonnegative integer");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified checks for the Cesaro operator and its self-commutator"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string sections;
  std::string format = "json";
  std::string out;
  bool dump_sections = false;

  const std::vector<std::pair<Command, std::string>> commands{
      {Command::verify_identities, "s_m - 1/m = t_m for 1 <= m <= n-max"},
      {Command::verify_bounds, "t_n < 1/(2(n-1)^2) for 2 <= n <= n-max"},
      {Command::commutator_report, "row sums, decay certificate and truncation bounds"},
      {Command::schur, "Schur-test norm certificates"},
      {Command::spectral, "finite-section eigenvalues, norms and eigenvector probes"},
      {Command::all, "every command above"},
  };
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(cmd)), help);
    sub->fallthrough();
    sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
  }

  app.add_option("--n-max", cfg.n_max, "sweep ceiling")->capture_default_str();
  app.add_option("--cutoff", cfg.cutoff, "last explicitly summed series index")
      ->capture_default_str();
  app.add_option("--sections", sections, "comma-separated ascending section sizes")
      ->default_str("1,50,500,1500");
  app.add_option("--out", out, "report path (default cesaro-report.<format>)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for iterative numerics")->capture_default_str();
  app.add_flag("--dump-sections", dump_sections,
               "also write each section of the commutator as <out>.section<n>.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.format = *parse_format(format);
    if (!sections.empty()) cfg.section_sizes = parse_sizes(sections);
    if (!out.empty()) {
      cfg.out_path = out;
    } else if (const char* env = std::getenv("CESARO_OUT"); env && *env) {
      cfg.out_path = env;
    } else {
      cfg.out_path = cfg.format == Format::json ? "cesaro-report.json" : "cesaro-report.csv";
    }
    cfg.validate();
    check_writable(cfg.out_path);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  Report report;
  try {
    report = run(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    emit_report(report, cfg.format, cfg.out_path);
    if (dump_sections) {
      const auto delta = cesaro::commutator(cfg.tail_config());
      for (std::size_t n : cfg.section_sizes) {
        std::filesystem::path p = cfg.out_path;
        p += ".section" + std::to_string(n) + ".csv";
        std::ofstream os(p);
        cesaro::write_csv(cesaro::truncate(delta, n), os);
        if (!os) throw std::runtime_error("failed writing " + p.string());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: cannot write report: " << e.what() << '\n';
    return 1;
  }

  if (auto f = report.first_failure()) {
    std::cerr << "FAIL [" << f->command << "] " << f->check << ": " << f->detail << '\n';
  } else {
    std::cerr << "all checks passed (" << to_string(cfg.command) << ", simd " << report.isa
              << ")\n";
  }
  return exit_status(report);
}
