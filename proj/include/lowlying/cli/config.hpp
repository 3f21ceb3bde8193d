#pragma once

// Flat key=value run configuration. Lines are `key = value`; `#` starts a comment.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lowlying/analysis.hpp"
#include "lowlying/arith.hpp"
#include "lowlying/density.hpp"
#include "lowlying/harness.hpp"

namespace lowlying::cli {

inline constexpr const char* kCacheDirEnv = "LOWLYING_CACHE_DIR";

struct RunConfig {
  std::vector<double> X{1e4};  // ascending sweep
  Rational nu{7, 10};
  BumpBox box;
  Method method = Method::direct;
  std::string cache_dir;  // empty: no disk cache
  u64 seed = kDefaultSeed;
  std::string output = "lowlying";
  u64 table_cap = kDefaultTableCap;
  unsigned threads = 1;

  bool operator==(const RunConfig&) const = default;
};

/// Throws LineFormatError naming the offending line.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);
std::string render_config(const RunConfig& c);

/// Checks the invariants (ascending positive X, 0 < nu < 1, valid box, cap, threads).
/// Throws PreconditionError.
void validate(const RunConfig& c);

/// Parses "1e3,1e4" style lists.
std::vector<double> parse_x_list(const std::string& text);

/// Config cache_dir unless the environment variable is set.
std::string effective_cache_dir(const RunConfig& c);

}  // namespace lowlying::cli
