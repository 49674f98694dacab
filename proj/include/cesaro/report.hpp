#pragma once

// Batch driver behind the cesaro-certify command line: runs the identity,
// bound, row-sum, Schur and spectral checks and serialises the results as
// JSON (schema 1) or CSV tables.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cesaro/analysis.hpp"
#include "cesaro/interval.hpp"
#include "cesaro/schur.hpp"

namespace cesaro::report {

inline constexpr int kSchemaVersion = 1;

enum class Command { verify_identities, verify_bounds, commutator_report, schur, spectral, all };
enum class Format { json, csv };

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view s);
std::optional<Format> parse_format(std::string_view s);

/// Invalid configuration or unusable output path (exit status 2).
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::all;
  std::size_t n_max = 10'000;
  std::size_t cutoff = 1'000'000;
  std::vector<std::size_t> section_sizes{1, 50, 500, 1500};
  std::filesystem::path out_path = "cesaro-report.json";
  Format format = Format::json;
  std::uint64_t seed = kDefaultSeed;

  /// Throws UsageError on n_max < 2, an invalid tail configuration,
  /// cutoff < n_max + 1, or section sizes that are empty, zero or not
  /// strictly ascending.
  void validate() const;
  TailConfig tail_config() const { return TailConfig{cutoff}; }
};

using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string, Interval>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Failure {
  std::string command;
  std::string check;
  std::string detail;
};

struct Section {
  Command command = Command::all;
  std::vector<Table> tables;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  bool passed = true;
  std::optional<Failure> first_failure;
};

struct Report {
  RunConfig config;
  std::string isa;
  std::vector<Section> sections;

  bool passed() const;
  std::optional<Failure> first_failure() const;
};

Report run(const RunConfig& cfg);

/// 0 when every check passed, 1 otherwise.
int exit_status(const Report& r);

nlohmann::ordered_json to_json(const Report& r);
nlohmann::ordered_json to_json(const SchurCertificate& c);
nlohmann::ordered_json to_json(const DecayCertificate& c, std::string_view op_name);

/// CSV dialect: ',' separator, '.' decimal point, header row, intervals as
/// two columns <name>_lo,<name>_hi.
void write_csv(const Table& t, std::ostream& os);

/// Files written for a CSV report: the single table goes to `path`; with
/// several tables each goes to <stem>.<command>.<table><ext> beside it.
std::vector<std::pair<std::filesystem::path, const Table*>> csv_targets(
    const Report& r, const std::filesystem::path& path);

/// Writes the report atomically (temporary file + rename).
void emit_report(const Report& r, Format format, const std::filesystem::path& path);

/// Throws UsageError if a file cannot be created next to `path`.
void check_writable(const std::filesystem::path& path);

} // namespace cesaro::report
