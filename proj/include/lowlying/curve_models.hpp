#pragma once

#include <vector>

#include "lowlying/arith.hpp"

namespace lowlying {

struct ShortModel {
  i64 a;
  i64 b;
  u64 u;  // a_in = u^4 a, b_in = u^6 b
  bool operator==(const ShortModel&) const = default;
};

/// Divides out the largest u with u^4 | a and u^6 | b. Throws DomainError for singular input.
ShortModel minimal_short_model(i64 a, i64 b);

enum class ReductionKind { good, multiplicative, additive };

struct ReductionType {
  ReductionKind kind;
  int exponent;  // 0, 1 or 2
};

/// Reduction at p >= 5 of a model minimal at p, read off from p | disc and p | c4 = -48a.
ReductionType reduction_type(i64 a, i64 b, u64 p);

// Exponents at 2 and 3 are not computed by Tate's algorithm; the heuristic
// caps them at min(v_2, 8) and min(v_3, 5).
inline constexpr int kConductorCap2 = 8;
inline constexpr int kConductorCap3 = 5;

struct ConductorResult {
  u64 N = 1;  // with capped exponents at 2 and 3
  std::vector<PrimeFactor> per_prime;
  bool exact = true;  // false when 2 or 3 divides the minimal discriminant
  u64 N_lo = 1;       // exponents at 2 and 3 set to 0
  double log_N() const;
  double log_lo() const;
};

ConductorResult conductor(i64 a, i64 b);

}  // namespace lowlying
