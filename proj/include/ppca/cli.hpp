#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ppca::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerificationFailed = 2,
  kRuntime = 3,
};

/// Fully resolved command line plus config file.
struct RunConfig {
  std::string command;
  std::vector<std::string> neighborhoods;
  std::optional<double> p;
  std::string p_grid;
  std::optional<int> n;
  std::string n_list;
  std::optional<long> T;
  std::optional<long> R;
  std::optional<long> replicas;
  std::optional<long> t_max;
  std::optional<long> m_max;
  std::string m_list;
  std::optional<std::uint64_t> seed;
  std::string output;
  /// Empty until defaults apply: json for verify, csv otherwise.
  std::string format;
  unsigned threads = 1;
  bool coupled_uniform = false;
  bool paper_scale = false;
  bool phi_exponent_debug = false;
  std::string config_path;
  bool print_config = false;
};

/// Thrown for anything that should exit with kUsage.
struct UsageError {
  std::string message;
};

/// "0.45:0.65:0.005", inclusive.
std::vector<double> parse_grid(const std::string& text);

/// "8,16,32" or "2:20" (inclusive, unit step).
std::vector<long> parse_int_list(const std::string& text);

/// Flat key=value text; '#' starts a comment. Unknown keys throw UsageError.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);

/// Config entries as key=value lines, readable by parse_config_text.
std::string print_config(const RunConfig& cfg);

/// `args` excludes the program name. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppca::cli
