#include "doctest.h"
#include "lowlying/curve_models.hpp"
#include "lowlying/errors.hpp"

using namespace lowlying;

TEST_CASE("minimal short model") {
  CHECK(minimal_short_model(16, 64) == ShortModel{1, 1, 2});
  CHECK(minimal_short_model(1, 1) == ShortModel{1, 1, 1});
  CHECK(minimal_short_model(81 * 2, 729 * 5) == ShortModel{2, 5, 3});
  CHECK(minimal_short_model(16, 0) == ShortModel{1, 0, 2});
  CHECK_THROWS_AS(minimal_short_model(0, 0), DomainError);
}

TEST_CASE("reduction types") {
  const auto r = reduction_type(1, 1, 31);
  CHECK(r.kind == ReductionKind::multiplicative);
  CHECK(r.exponent == 1);
  CHECK(reduction_type(1, 1, 5).kind == ReductionKind::good);
  // y^2 = x^3 + 5: p = 5 divides a and b, additive.
  const auto add = reduction_type(0, 5, 5);
  CHECK(add.kind == ReductionKind::additive);
  CHECK(add.exponent == 2);
  CHECK_THROWS_AS(reduction_type(625, 15625, 5), PreconditionError);
}

TEST_CASE("reduction type depends only on residues") {
  for (const u64 p : {5ULL, 7ULL, 11ULL})
    for (i64 a = 1; a < 8; ++a)
      for (i64 b = 1; b < 8; ++b) {
        const auto r0 = reduction_type(a, b, p);
        const auto r1 = reduction_type(a + static_cast<i64>(p) * 3, b + static_cast<i64>(p) * 7, p);
        CHECK(r0.kind == r1.kind);
      }
}

TEST_CASE("conductor examples") {
  const auto c = conductor(1, 1);
  CHECK(c.N == 16 * 31);
  CHECK(c.N_lo == 31);
  CHECK_FALSE(c.exact);
  const auto d = conductor(1, 0);
  CHECK(d.N == 64);
  CHECK(d.N_lo == 1);
  CHECK_FALSE(d.exact);
  // 16 | disc for every short model, so exact is never set here.
  CHECK_FALSE(conductor(-16, 16).exact);
  CHECK(conductor(-16, 16).N_lo == 37);
}
