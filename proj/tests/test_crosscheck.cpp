#include <sstream>

#include "doctest.h"
#include "lowlying/crosscheck.hpp"
#include "lowlying/errors.hpp"

using namespace lowlying;

namespace {
ZeroList parse(const std::string& text) {
  std::istringstream in(text);
  return parse_zero_list(in);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const LineFormatError& e) {
    return e.line();
  }
  return 0;
}
}  // namespace

TEST_CASE("zero list parsing") {
  const auto z = parse("# curve=37a T=10\n0\n5.003\n\n6.87\n");
  CHECK(z.label == "37a");
  CHECK(z.T == 10.0);
  CHECK(z.gammas == std::vector<double>{0.0, 5.003, 6.87});
  CHECK(error_line("5.0\n") == 1);
  CHECK(error_line("# curve=x T=10\n1\nabc\n") == 3);
  CHECK(error_line("# curve=x T=10\n2\n1\n") == 3);
  CHECK(error_line("# curve=x T=10\n-1\n") == 2);
  CHECK(error_line("# curve=x T=10\n11\n") == 2);
  CHECK(parse("# curve=x T=10\n").gammas.empty());
  CHECK_THROWS_AS(load_zero_list("/nonexistent/zeros.txt"), IoError);
}

TEST_CASE("37a explicit formula") {
  const auto z = load_zero_list(LOWLYING_TEST_DATA "/zeros_37a.txt");
  CHECK(z.gammas.size() == 24);
  CHECK(z.gammas[1] == doctest::Approx(5.00317001400666));
  const auto curve = CurveParams::make(-16, 16);
  const auto f = FamilySpec::make(1e6);
  const auto r = explicit_formula_crosscheck(z, curve, f, 37);
  CHECK(r.pass());
  CHECK(r.gap <= r.budget);
  CHECK(r.zeros_used == z.gammas.size());
  CHECK(r.required_T < z.T);
}

TEST_CASE("truncated list and empty list") {
  const auto curve = CurveParams::make(-16, 16);
  const auto f = FamilySpec::make(1e6);
  CHECK_THROWS_AS(explicit_formula_crosscheck(parse("# curve=37a T=2\n0\n"), curve, f, 37), TruncatedZeroListError);
  const auto r = explicit_formula_crosscheck(parse("# curve=37a T=30\n"), curve, f, 37);
  CHECK(r.lhs == 0.0);
  CHECK(r.zeros_used == 0);
}
