#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "itespec/contrast.hpp"

namespace itespec::cli {

enum class Command { Ite1d, Complex1d, IteNd, Weyl, Scatter };
enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::Ite1d;
  // exactly one of gamma, m, rational
  std::optional<double> gamma;
  std::optional<double> m;
  std::optional<Rational> rational;
  int n = 1;
  double r_max = 0.0;
  std::vector<double> grid;  // empty selects the default grid
  CountMode mode = CountMode::Geometric;
  Format format = Format::Csv;
  std::string out;           // empty writes to the output stream
  std::optional<double> tol;
  int threads = 1;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// --help or --version; carries the text to print.
struct HelpRequested {
  std::string text;
};

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

/// Parses arguments (without the program name). Throws UsageError,
/// HelpRequested, or a CLI11 parse error for unknown flags.
RunConfig parse_args(const std::vector<std::string>& args);

/// Renders the output document for a configuration. Throws UsageError for
/// inconsistent configurations and the library errors otherwise.
std::string render(const RunConfig& cfg);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

/// Runs a parsed configuration, writing to cfg.out or to `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace itespec::cli
