#include "lowlying/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lowlying/errors.hpp"

namespace lowlying::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v))
    throw DomainError("not a real number: '" + s + "'");
  return v;
}

template <class T>
T parse_unsigned(const std::string& s) {
  T v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw DomainError("not a non-negative integer: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(trim(item)));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

std::string fmt(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<double> parse_x_list(const std::string& text) { return parse_list(text); }

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw LineFormatError(line, "expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    try {
      if (key == "X") {
        c.X = parse_list(value);
      } else if (key == "nu") {
        c.nu = Rational::parse(value);
      } else if (key == "box") {
        const auto v = parse_list(value);
        if (v.size() != 4) throw DomainError("box needs 4 values x0,x1,y0,y1");
        c.box = {v[0], v[1], v[2], v[3]};
      } else if (key == "method") {
        c.method = parse_method(value);
      } else if (key == "cache_dir") {
        c.cache_dir = value;
      } else if (key == "seed") {
        c.seed = parse_unsigned<u64>(value);
      } else if (key == "output") {
        c.output = value;
      } else if (key == "table_cap") {
        c.table_cap = parse_unsigned<u64>(value);
      } else if (key == "threads") {
        c.threads = parse_unsigned<unsigned>(value);
      } else {
        throw DomainError("unknown key '" + key + "'");
      }
      validate(c);
    } catch (const LineFormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw LineFormatError(line, e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse_config(in);
}

std::string render_config(const RunConfig& c) {
  std::ostringstream os;
  os << "X = ";
  for (std::size_t i = 0; i < c.X.size(); ++i) os << (i ? "," : "") << fmt(c.X[i]);
  os << "\nnu = " << c.nu.str() << "\nbox = " << fmt(c.box.x0) << ',' << fmt(c.box.x1) << ',' << fmt(c.box.y0) << ','
     << fmt(c.box.y1) << "\nmethod = " << to_string(c.method) << "\ncache_dir = " << c.cache_dir
     << "\nseed = " << c.seed << "\noutput = " << c.output << "\ntable_cap = " << c.table_cap
     << "\nthreads = " << c.threads << '\n';
  return os.str();
}

void validate(const RunConfig& c) {
  if (c.X.empty()) throw PreconditionError("X: need at least one value");
  for (std::size_t i = 0; i < c.X.size(); ++i) {
    if (!(c.X[i] > 0.0)) throw PreconditionError("X: values must be positive");
    if (i > 0 && !(c.X[i] > c.X[i - 1])) throw PreconditionError("X: sweep list must be ascending");
  }
  if (!(Rational{0, 1} < c.nu) || !(c.nu < Rational{1, 1})) throw PreconditionError("nu must lie in (0, 1)");
  const auto& b = c.box;
  if (!(b.x0 < b.x1) || !(b.y0 < b.y1)) throw PreconditionError("box: need x0 < x1 and y0 < y1");
  if (!(b.x0 > 0.0) || !(b.y0 > 0.0)) throw PreconditionError("box: need x0 > 0 and y0 > 0");
  if (c.output.empty()) throw PreconditionError("output prefix must not be empty");
}

std::string effective_cache_dir(const RunConfig& c) {
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  return c.cache_dir;
}

}  // namespace lowlying::cli
