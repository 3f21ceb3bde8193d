#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lowlying/cli/config.hpp"

namespace lowlying::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kTruncated = 3 };

/// Writes <output>.csv and <output>.json; nonzero when the dual paths disagree.
int cmd_density(const RunConfig& c, std::ostream& diag);

/// suite is identities, lemmas or all. Lemma ratio tables go to <output>_ratios.csv
/// and <output>_growth.csv.
int cmd_verify(const std::string& suite, const RunConfig& c, std::ostream& diag);

/// action is build, stat or gc.
int cmd_cache(const std::string& action, const RunConfig& c, std::ostream& out, std::ostream& diag);

int cmd_crosscheck(const std::string& zero_file, i64 a, i64 b, double X, std::optional<u64> conductor_override,
                   const RunConfig& c, std::ostream& out, std::ostream& diag);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag);
int run_cli(int argc, char** argv);

}  // namespace lowlying::cli
