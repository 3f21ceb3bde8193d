#include "lowlying/crosscheck.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>

#include "lowlying/curve_models.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/numeric.hpp"

namespace lowlying {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw LineFormatError(line, "not a number: '" + s + "'");
  return v;
}

}  // namespace

ZeroList parse_zero_list(std::istream& in) {
  static const std::regex header(R"(#\s*curve=(\S+)\s+T=(\S+)\s*)");
  ZeroList z;
  std::string raw;
  int line = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(raw);
    if (!have_header) {
      if (s.empty()) continue;
      std::smatch m;
      if (!std::regex_match(s, m, header)) throw LineFormatError(line, "expected '# curve=<label> T=<height>'");
      z.label = m[1];
      z.T = parse_double(m[2], line);
      if (!(z.T > 0.0)) throw LineFormatError(line, "height T must be positive");
      have_header = true;
      continue;
    }
    if (s.empty() || s[0] == '#') continue;
    const double g = parse_double(s, line);
    if (g < 0.0) throw LineFormatError(line, "negative ordinate");
    if (g > z.T) throw LineFormatError(line, "ordinate above the stated height T");
    if (!z.gammas.empty() && g < z.gammas.back()) throw LineFormatError(line, "ordinates not ascending");
    z.gammas.push_back(g);
  }
  if (!have_header) throw LineFormatError(line + 1, "missing header");
  return z;
}

ZeroList load_zero_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open zero list " + path.string());
  return parse_zero_list(in);
}

double p1_single(const CurveParams& curve, const FamilySpec& f) {
  const double L = f.log_X();
  CompensatedSum s;
  for (const u64 p : support_primes(f, 1.0)) {
    const double lp = std::log(static_cast<double>(p));
    s.add(static_cast<double>(lambda_p(curve.a, curve.b, p)) * f.phi.phihat(lp / L) * 2.0 * lp /
          (static_cast<double>(p) * L));
  }
  return s.value();
}

double p2_single(const CurveParams& curve, const FamilySpec& f) {
  const double L = f.log_X();
  CompensatedSum s;
  for (const u64 p : support_primes(f, 2.0)) {
    const double lp = std::log(static_cast<double>(p));
    const double pd = static_cast<double>(p);
    s.add(static_cast<double>(lambda_p2(curve.a, curve.b, p)) * f.phi.phihat(2.0 * lp / L) * 2.0 * lp /
          (pd * pd * L));
  }
  return s.value();
}

CrosscheckResult explicit_formula_crosscheck(const ZeroList& zeros, const CurveParams& curve, const FamilySpec& f,
                                             std::optional<u64> conductor_override, double c) {
  const double L = f.log_X();
  const double nu = f.phi.nu;
  CrosscheckResult r;
  r.c = c;
  r.required_T = 10.0 * 2.0 * M_PI / (nu * L);
  if (zeros.T < r.required_T) throw TruncatedZeroListError(zeros.T, r.required_T);

  const u64 N = conductor_override ? *conductor_override : conductor(curve.a, curve.b).N;
  r.log_N = std::log(static_cast<double>(N));

  CompensatedSum lhs;
  for (const double g : zeros.gammas) {
    const double v = f.phi.phi(g * L / (2.0 * M_PI));
    lhs.add(g == 0.0 ? v : 2.0 * v);
  }
  r.lhs = lhs.value();
  r.zeros_used = zeros.gammas.size();

  r.P1 = p1_single(curve, f);
  r.P2 = p2_single(curve, f);
  r.rhs = f.phi.phihat(0.0) * r.log_N / L + f.phi.phi(0.0) / 2.0 - r.P1 - r.P2;
  r.gap = std::fabs(r.lhs - r.rhs);

  // Zeros above T: density (1/pi) log(sqrt(N) t / 2 pi) against the envelope's x^-2 decay.
  const double xT = zeros.T * L / (2.0 * M_PI);
  const double decay = f.phi.envelope(xT) * xT * xT;
  const double cT = std::max(std::sqrt(static_cast<double>(N)) * zeros.T / (2.0 * M_PI), M_E);
  r.tail_bound = 2.0 * decay * (4.0 * M_PI * M_PI / (L * L)) * (std::log(cT) + 1.0) / (M_PI * zeros.T);
  r.budget = c * std::pow(L, -0.4) + r.tail_bound;
  return r;
}

}  // namespace lowlying
