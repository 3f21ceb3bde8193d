#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "lowlying/density.hpp"
#include "lowlying/frobenius.hpp"

namespace lowlying {

/// Positive imaginary parts of zeros of L(s, E) up to height T. A listed 0 is a
/// central zero and counts once; every other entry stands for the pair +-gamma.
struct ZeroList {
  std::string label;
  double T = 0.0;
  std::vector<double> gammas;
};

/// Header "# curve=<label> T=<height>", then one ascending value per line.
/// Blank lines and further '#' lines are skipped. LineFormatError on bad input.
ZeroList parse_zero_list(std::istream& in);
ZeroList load_zero_list(const std::filesystem::path& path);

/// Single-curve prime sums with the family's test function and scale log X.
double p1_single(const CurveParams& curve, const FamilySpec& f);
double p2_single(const CurveParams& curve, const FamilySpec& f);

struct CrosscheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double budget = 0.0;      // c (log X)^{-0.4} + tail_bound
  double c = 0.0;
  double tail_bound = 0.0;  // zeros above T
  double required_T = 0.0;
  double log_N = 0.0;
  double P1 = 0.0;
  double P2 = 0.0;
  std::size_t zeros_used = 0;
  bool pass() const { return gap <= budget; }
};

inline constexpr double kCrosscheckBudgetConstant = 2.0;

/// lhs = sum over zeros of phi(gamma log X / 2 pi); rhs = phihat(0) log N / log X
/// + phi(0)/2 - P1(E) - P2(E). The conductor comes from curve_models unless
/// given. TruncatedZeroListError when T < 10 * 2 pi / (nu log X).
CrosscheckResult explicit_formula_crosscheck(const ZeroList& zeros, const CurveParams& curve, const FamilySpec& f,
                                             std::optional<u64> conductor_override = std::nullopt,
                                             double c = kCrosscheckBudgetConstant);

}  // namespace lowlying
