#include "lowlying/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "lowlying/cli/report_io.hpp"
#include "lowlying/cli/verify_suite.hpp"
#include "lowlying/crosscheck.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/frobenius.hpp"

namespace lowlying::cli {

namespace fs = std::filesystem;

namespace {

std::shared_ptr<FrobCache> make_cache(const RunConfig& c) {
  const auto dir = effective_cache_dir(c);
  std::optional<fs::path> path;
  if (!dir.empty()) path = dir;
  return std::make_shared<FrobCache>(path, c.table_cap);
}

FamilySpec spec_for(const RunConfig& c, double X, const std::shared_ptr<FrobCache>& cache) {
  auto f = FamilySpec::make(X, c.nu, c.box);
  f.threads = c.threads;
  f.table_cap = c.table_cap;
  f.cache = cache;
  return f;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void print_checks(const std::vector<Check>& checks, std::ostream& diag, bool& ok) {
  for (const auto& k : checks) {
    diag << (k.pass ? "PASS " : "FAIL ") << k.name << ": " << k.detail << '\n';
    ok = ok && k.pass;
  }
}

}  // namespace

int cmd_density(const RunConfig& c, std::ostream& diag) {
  validate(c);
  if (Rational{7, 10} < c.nu)
    diag << "warning: nu = " << c.nu.str() << " is beyond proven support (-7/10, 7/10)\n";
  const auto cache = make_cache(c);
  std::vector<DensityReport> reports;
  int code = kOk;
  for (const double X : c.X) {
    const auto f = spec_for(c, X, cache);
    auto r = density_report(f, c.method);
    if (const auto g = r.dual_gap(); g && *g > 1e-6 * (1.0 + std::fabs(*r.P1_direct))) {
      diag << "error: P1 direct and Poisson paths disagree at X = " << X << " by " << *g << '\n';
      code = kFailure;
    }
    diag << "X = " << X << ": assembled " << r.assembled << ", predicted " << r.predicted << '\n';
    reports.push_back(std::move(r));
  }
  {
    auto out = open_out(c.output + ".csv");
    write_density_csv(out, reports);
  }
  {
    auto out = open_out(c.output + ".json");
    out << density_json(reports);
  }
  return code;
}

int cmd_verify(const std::string& suite, const RunConfig& c, std::ostream& diag) {
  if (suite != "identities" && suite != "lemmas" && suite != "all") {
    diag << "error: unknown suite '" << suite << "'\n";
    return kUsage;
  }
  bool ok = true;
  if (suite != "lemmas") print_checks(identity_suite(c), diag, ok);
  if (suite != "identities") {
    const auto res = lemma_suite(c);
    print_checks(res.strict, diag, ok);
    for (const auto& r : res.ratios)
      diag << "ratio " << r.lemma << ": n=" << r.instances() << " p50=" << r.p50() << " p90=" << r.p90()
           << " max=" << r.max_ratio() << '\n';
    for (const auto& g : res.growth)
      diag << "growth " << g.name << ": slope " << g.slope << " (stated exponent " << g.exponent << ")\n";
    auto ratios = open_out(c.output + "_ratios.csv");
    write_ratio_csv(ratios, res.ratios);
    auto growth = open_out(c.output + "_growth.csv");
    write_growth_csv(growth, res.growth);
  }
  return ok ? kOk : kFailure;
}

int cmd_cache(const std::string& action, const RunConfig& c, std::ostream& out, std::ostream& diag) {
  const auto dir_str = effective_cache_dir(c);
  if (dir_str.empty()) {
    diag << "error: no cache directory (set cache_dir or " << kCacheDirEnv << ")\n";
    return kUsage;
  }
  const fs::path dir = dir_str;
  if (action == "build") {
    fs::create_directories(dir);
    FrobCache cache(dir, c.table_cap);
    std::size_t n = 0;
    for (const u64 p : sieve_primes(c.table_cap))
      if (p > 3 && cache.get(p)) ++n;
    out << "built " << n << " tables in " << dir.string() << '\n';
    return kOk;
  }
  if (action != "stat" && action != "gc") {
    diag << "error: unknown cache action '" << action << "'\n";
    return kUsage;
  }
  std::vector<fs::path> entries;
  if (fs::exists(dir))
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file() && e.path().filename().string().rfind("frob_", 0) == 0) entries.push_back(e.path());
  std::sort(entries.begin(), entries.end());
  std::size_t bad = 0;
  std::uintmax_t bytes = 0;
  for (const auto& path : entries) {
    bytes += fs::file_size(path);
    bool readable = path.extension() == ".bin";
    if (readable) {
      try {
        load_table(path);
      } catch (const std::exception& e) {
        readable = false;
        diag << path.filename().string() << ": " << e.what() << '\n';
      }
    }
    if (!readable) {
      ++bad;
      if (action == "gc") {
        fs::remove(path);
        out << "removed " << path.filename().string() << '\n';
      }
    }
  }
  out << entries.size() << " entries, " << bad << (action == "gc" ? " removed, " : " unreadable, ") << bytes
      << " bytes\n";
  return kOk;
}

int cmd_crosscheck(const std::string& zero_file, i64 a, i64 b, double X, std::optional<u64> conductor_override,
                   const RunConfig& c, std::ostream& out, std::ostream& diag) {
  ZeroList zeros;
  try {
    zeros = load_zero_list(zero_file);
  } catch (const FormatError& e) {
    diag << "error: " << zero_file << ": " << e.what() << '\n';
    return kUsage;
  }
  const auto curve = CurveParams::make(a, b);
  auto f = FamilySpec::make(X, c.nu, c.box);
  f.threads = c.threads;
  try {
    const auto r = explicit_formula_crosscheck(zeros, curve, f, conductor_override);
    out << "lhs " << fmt_real(r.lhs) << "\nrhs " << fmt_real(r.rhs) << "\ngap " << fmt_real(r.gap) << "\nbudget "
        << fmt_real(r.budget) << "\ntail_bound " << fmt_real(r.tail_bound) << "\nzeros_used " << r.zeros_used << '\n';
    return r.pass() ? kOk : kFailure;
  } catch (const TruncatedZeroListError& e) {
    diag << "error: " << e.what() << '\n';
    return kTruncated;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag) {
  CLI::App app{"Low-lying zeros of elliptic curve families: density experiments and checks"};
  app.require_subcommand(1);
  std::string config_path, x_list, nu_text, method;
  std::optional<unsigned> threads;
  std::string prefix;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--x", x_list, "comma-separated X sweep");
  app.add_option("--nu", nu_text, "support half-width, e.g. 7/10");
  app.add_option("--method", method, "direct, poisson or both");
  app.add_option("--threads", threads, "worker threads (0: all)");
  app.add_option("--out", prefix, "output path prefix");

  auto* density = app.add_subcommand("density", "density report per X");
  auto* verify = app.add_subcommand("verify", "identity suite and lemma harnesses");
  std::string suite = "all";
  verify->add_option("suite", suite, "identities, lemmas or all");
  auto* cache = app.add_subcommand("cache", "Frobenius table cache");
  std::string action;
  cache->add_option("action", action, "build, stat or gc")->required();
  auto* cross = app.add_subcommand("crosscheck", "explicit formula against a zero list");
  std::string zero_file;
  i64 a = 0, b = 0;
  double X = 0.0;
  std::optional<u64> conductor_override;
  cross->add_option("zero_file", zero_file)->required();
  cross->add_option("a", a)->required();
  cross->add_option("b", b)->required();
  cross->add_option("X", X)->required();
  cross->add_option("--conductor", conductor_override, "conductor to use instead of the heuristic");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, diag);
    return code == 0 ? kOk : kUsage;
  }

  RunConfig c;
  try {
    if (!config_path.empty()) c = load_config(config_path);
    if (!x_list.empty()) c.X = parse_x_list(x_list);
    if (!nu_text.empty()) c.nu = Rational::parse(nu_text);
    if (!method.empty()) c.method = parse_method(method);
    if (threads) c.threads = *threads;
    if (!prefix.empty()) c.output = prefix;
    validate(c);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*density) return cmd_density(c, diag);
    if (*verify) return cmd_verify(suite, c, diag);
    if (*cache) return cmd_cache(action, c, out, diag);
    return cmd_crosscheck(zero_file, a, b, X, conductor_override, c, out, diag);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace lowlying::cli
