#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fesenko/series.hpp"

namespace fesenko::cli {

inline constexpr std::string_view tool_name = "fwl";
inline constexpr std::string_view tool_version = "0.1.0";

enum class Format { json, csv, text };

/// One Recipe 3 instance requested with --realize i,j,s.
struct RealizeRequest {
  int i, j, s;
};

struct RunConfig {
  std::string subcommand;
  long long p = 3;
  int r = 1;
  /// Depth horizon; 120 for r = 1 and 60 otherwise when not given.
  int nt = 0;
  int n_max = 0;
  std::uint64_t seed = 42;
  int trials = 200;
  Format format = Format::json;
  std::string out;
  std::optional<Convention> convention;
  /// stability: second horizon, 2 * nt when not given.
  int nt_large = 0;
  /// recipes: instances to realize; a default main and caveat pair otherwise.
  std::vector<RealizeRequest> realize;
};

/// Exit codes.
inline constexpr int exit_pass = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Worker threads allowed: FWL_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
unsigned thread_budget();

/// Parses, validates and runs one subcommand. Reports go to `out` (or the
/// --out file); JSON diagnostics for every failure go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fesenko::cli
