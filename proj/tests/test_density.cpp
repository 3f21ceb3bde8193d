#include <array>
#include <cmath>

#include "doctest.h"
#include "lowlying/density.hpp"
#include "lowlying/dirichlet.hpp"
#include "lowlying/errors.hpp"

using namespace lowlying;

namespace {
bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b); }
}  // namespace

// Values from tools/oracle_density.py (plain Python, brute-force Legendre sums, sympy factoring).
TEST_CASE("direct path matches the brute-force oracle") {
  struct Row {
    double X, W, P1, P2, C, C_lo;
  };
  const Row rows[] = {
      {1000, 0.0038757168432122764, -0.00023163080056739458, -1.1600152208521539e-05, 1.7334759585369863,
       1.1263973424000528},
      {3000, 0.0097646651404737512, -0.00011563737277759245, -0.00017334919073102683, 1.6704621445006742,
       1.0637252204053103},
  };
  for (const auto& r : rows) {
    const auto f = FamilySpec::make(r.X);
    CHECK(rel_close(w_total(f), r.W, 1e-12));
    CHECK(rel_close(p1_direct(f), r.P1, 1e-10));
    CHECK(rel_close(p2_direct(f), r.P2, 1e-10));
    const auto c = conductor_term(f);
    CHECK(rel_close(c.value, r.C, 1e-12));
    CHECK(rel_close(c.lo, r.C_lo, 1e-12));
    CHECK(c.hi == c.value);
    CHECK(c.skipped == 0);
  }
}

TEST_CASE("poisson path agrees with the direct path") {
  for (const double X : {1000.0, 5000.0}) {
    const auto f = FamilySpec::make(X);
    const double d = p1_direct(f);
    CHECK(std::fabs(p1_poisson(f) - d) <= 1e-6 * (1.0 + std::fabs(d)));
    CHECK(std::fabs(p1_poisson(f) - d) <= 1e-8 * std::fabs(d));
  }
  CHECK_THROWS_AS(p1_poisson(FamilySpec::make(1000), 1e-3), DiagnosticError);
}

TEST_CASE("empty family") { CHECK_THROWS_AS(w_total(FamilySpec::make(1.0)), EmptyFamilyError); }

TEST_CASE("support truncation") {
  const auto f = FamilySpec::make(1e4);
  CHECK(support_primes(f, 2.0) == std::vector<u64>{5, 7, 11, 13, 17, 19, 23});
  for (const u64 p : support_primes(f, 1.0)) CHECK(static_cast<double>(p) < std::pow(1e4, 0.7));
}

TEST_CASE("table cap and threads do not change results") {
  auto f = FamilySpec::make(2000);
  const double base = p1_direct(f);
  auto g = f;
  g.table_cap = 0;
  CHECK(p1_direct(g) == base);
  g.threads = 3;
  CHECK(p1_direct(g) == base);
  auto h = f;
  h.threads = 2;
  CHECK(p1_poisson(h) == p1_poisson(f));
}

TEST_CASE("weight scaling leaves normalized quantities fixed") {
  const auto f = FamilySpec::make(2000);
  const auto g = f.with_weight_scale(3.0);
  CHECK(rel_close(w_total(g), 3.0 * w_total(f), 1e-14));
  CHECK(rel_close(p1_direct(g) / w_total(g), p1_direct(f) / w_total(f), 1e-13));
  CHECK(rel_close(conductor_term(g).value, conductor_term(f).value, 1e-13));
}

TEST_CASE("rank bound") {
  CHECK(rank_bound({7, 10}) == Rational{27, 14});
  CHECK(rank_bound({2, 3}) == Rational{2, 1});
}

TEST_CASE("report assembly") {
  const auto r = density_report(FamilySpec::make(1000), Method::both);
  CHECK(r.predicted == doctest::Approx(1.35));
  REQUIRE(r.dual_gap());
  CHECK(*r.dual_gap() < 1e-12);
  CHECK(r.P1 == *r.P1_direct);
  CHECK(r.assembled == doctest::Approx(r.conductor.value + 0.35 - (r.P1 + r.P2) / r.W));
  CHECK(r.direct_terms > 0);
  CHECK(r.poisson_terms > 0);
  CHECK(parse_method("both") == Method::both);
  CHECK(to_string(Method::poisson) == "poisson");
  CHECK_THROWS_AS(parse_method("fast"), DomainError);
}

TEST_CASE("character expansion identity") {
  const auto f = FamilySpec::make(1000);
  for (const auto& [H, K, P] : {std::array{4.0, 6.0, 50.0}, std::array{3.0, 4.0, 40.0}}) {
    const auto e = verify_char_expansion(H, K, P, f);
    CHECK(std::abs(e.lhs) > 0.0);
    CHECK(e.relative() < 1e-8);
  }
}

TEST_CASE("Q requires d | k^2 and the matching modulus") {
  const auto f = FamilySpec::make(1000);
  const auto chi = DirichletCharacter::principal(unit_group_basis(9));
  CHECK_THROWS_AS(q_dk_chi(2, 3, chi, 2, 3, 40, f), DomainError);
  CHECK_THROWS_AS(q_dk_chi(3, 3, chi, 2, 3, 40, f), DomainError);
  CHECK_NOTHROW(q_dk_chi(1, 3, chi, 2, 3, 40, f));
}
