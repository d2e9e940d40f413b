#pragma once

#include "kgh/tables.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitVerificationFailed = 3;

class InvalidConfig : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string mode;
  std::optional<double> v0;
  std::optional<double> s0;
  double alpha = 0.5;
  double q = 1.0;
  double mass = 1.0;
  int dim = 1;
  int l = 0;
  int n = 0;
  std::string format = "csv";
  std::string out;
  double tol = kResidualTolerance;
};

// Flat "key = value" lines; '#' starts a comment. Throws InvalidConfig.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Applies the file's entries to every field not in `given`. Throws InvalidConfig.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& entries,
                  const std::vector<std::string>& given);

// 6 fixed decimals, '.' decimal point.
std::string format_energy(double e);

std::string table_csv(const std::vector<TableCell>& cells, double m0);
std::string table_json(const TableSetup& setup, const std::vector<TableCell>& cells);

// Runs one subcommand; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace kgh::cli
