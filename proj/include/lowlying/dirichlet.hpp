#pragma once

// Dirichlet characters represented as exponent vectors over an explicit
// basis of (Z/qZ)*. Order and conductor are exact integer computations.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lowlying/arith.hpp"

namespace lowlying {

/// Basis of (Z/qZ)* as an internal direct product of cyclic groups (CRT over
/// prime powers; -1 and 5 at 2^e, e >= 3) with every discrete log precomputed.
class UnitGroup {
 public:
  explicit UnitGroup(u64 q);

  u64 modulus() const { return q_; }
  std::span<const u64> generators() const { return generators_; }
  std::span<const std::uint32_t> orders() const { return orders_; }
  u64 order() const { return phi_; }
  /// Least common multiple of the generator orders.
  u64 exponent() const { return exponent_; }
  std::size_t rank() const { return generators_.size(); }

  bool is_unit(i64 n) const { return unit_[reduce(n, q_)] != 0; }
  /// Discrete logs of a unit with respect to the generators.
  std::span<const std::uint32_t> log(i64 n) const {
    return {logs_.data() + reduce(n, q_) * rank(), rank()};
  }
  /// e(k / exponent()).
  std::complex<double> root(u64 k) const { return roots_[k % exponent_]; }

 private:
  u64 q_;
  u64 phi_ = 1;
  u64 exponent_ = 1;
  std::vector<u64> generators_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint32_t> logs_;
  std::vector<unsigned char> unit_;
  std::vector<std::complex<double>> roots_;
};

using UnitGroupPtr = std::shared_ptr<const UnitGroup>;

UnitGroupPtr unit_group_basis(u64 q);

class DirichletCharacter {
 public:
  DirichletCharacter(UnitGroupPtr group, std::vector<std::uint32_t> exponents);
  static DirichletCharacter principal(UnitGroupPtr group);

  u64 modulus() const { return group_->modulus(); }
  const UnitGroupPtr& group() const { return group_; }
  std::span<const std::uint32_t> exponents() const { return exponents_; }

  /// chi(n) = e(phase(n) / exponent) on units, 0 elsewhere.
  std::complex<double> operator()(i64 n) const;
  /// Phase numerator over group().exponent(), or -1 for non-units.
  i64 phase(i64 n) const;
  std::vector<std::complex<double>> values() const;

  DirichletCharacter conj() const;
  DirichletCharacter pow(i64 k) const;
  DirichletCharacter operator*(const DirichletCharacter& other) const;

  bool is_principal() const;
  u64 order() const;
  /// Least f | q such that chi is constant 1 on units n = 1 mod f.
  u64 conductor() const;
  bool is_primitive() const { return conductor() == modulus(); }

  bool operator==(const DirichletCharacter& other) const;

 private:
  UnitGroupPtr group_;
  std::vector<std::uint32_t> exponents_;
  std::vector<u64> phase_weights_;  // exponent / order_i
};

std::vector<DirichletCharacter> enumerate_characters(u64 q);
std::vector<DirichletCharacter> enumerate_characters(const UnitGroupPtr& group);

/// Characters with chi^k principal.
std::vector<DirichletCharacter> characters_killed_by(const UnitGroupPtr& group, u64 k);

/// tau_a(chi) = sum_{b mod q} chi(b) e(ab/q); DomainError unless gcd(a, q) = 1.
std::complex<double> gauss_sum(const DirichletCharacter& chi, i64 a);

/// All tau_a(chi) for a = 0..q-1 (entries with gcd(a, q) > 1 are still the
/// plain exponential sums); one O(q^2) pass with table lookups.
std::vector<std::complex<double>> gauss_sum_spectrum(const DirichletCharacter& chi);

struct QuadraticGaussCheck {
  std::complex<double> value;
  bool pass;
};

/// sum_{b mod l} e((a b^2 + k b)/l) against the bound 2 sqrt(l).
QuadraticGaussCheck quadratic_gauss_bound_check(u64 l, i64 a, i64 k);

/// #{chi mod q : conj(chi)^3 = chi1}, by enumeration over the whole group.
std::size_t count_cube_roots(const DirichletCharacter& chi1);

struct CubicModulus {
  u64 modulus;
  std::size_t primitive_count;
  bool shape_ok;
};

struct CubicStructureReport {
  u64 limit = 0;
  std::vector<CubicModulus> moduli;  // only moduli with a primitive cubic character
  std::vector<u64> violations;
};

/// True iff q = 9^a q* with a in {0,1} and q* squarefree, coprime to 6,
/// all prime factors = 1 mod 3.
bool has_cubic_conductor_shape(u64 q);

CubicStructureReport cubic_structure_report(u64 limit);

/// Primitive cubic characters of modulus exactly q.
std::vector<DirichletCharacter> primitive_cubic_characters(u64 q);

}  // namespace lowlying
