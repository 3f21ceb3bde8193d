#include <cmath>
#include <set>

#include "doctest.h"
#include "lowlying/dirichlet.hpp"
#include "lowlying/errors.hpp"

using namespace lowlying;

TEST_CASE("character group sizes and orthogonality") {
  for (u64 q : {1ULL, 2ULL, 8ULL, 9ULL, 12ULL, 35ULL, 64ULL, 63ULL}) {
    const auto g = unit_group_basis(q);
    const auto chars = enumerate_characters(g);
    CHECK(chars.size() == euler_phi(q));
    for (std::size_t i = 0; i < chars.size(); ++i)
      for (std::size_t j = i; j < chars.size(); ++j) {
        std::complex<double> s = 0.0;
        for (u64 n = 0; n < q; ++n) s += chars[i](static_cast<i64>(n)) * std::conj(chars[j](static_cast<i64>(n)));
        CHECK(std::abs(s - (i == j ? double(euler_phi(q)) : 0.0)) < 1e-9);
      }
  }
}

TEST_CASE("characters are multiplicative and periodic") {
  const auto g = unit_group_basis(45);
  for (const auto& chi : enumerate_characters(g))
    for (i64 m = 1; m < 45; ++m)
      for (i64 n = 1; n < 20; ++n) {
        CHECK(std::abs(chi(m * n) - chi(m) * chi(n)) < 1e-12);
        CHECK(std::abs(chi(m + 45) - chi(m)) < 1e-12);
      }
}

TEST_CASE("order and conductor") {
  const auto g = unit_group_basis(5);
  std::multiset<u64> orders;
  for (const auto& chi : enumerate_characters(g)) orders.insert(chi.order());
  CHECK(orders == std::multiset<u64>{1, 2, 4, 4});
  const auto g12 = unit_group_basis(12);
  std::multiset<u64> conductors;
  for (const auto& chi : enumerate_characters(g12)) conductors.insert(chi.conductor());
  CHECK(conductors == std::multiset<u64>{1, 3, 4, 12});
}

TEST_CASE("gauss sums") {
  const auto g5 = unit_group_basis(5);
  for (const auto& chi : characters_killed_by(g5, 2))
    if (!chi.is_principal()) CHECK(std::abs(gauss_sum(chi, 1) - std::sqrt(5.0)) < 1e-12);
  const auto g7 = unit_group_basis(7);
  for (const auto& chi : characters_killed_by(g7, 2))
    if (!chi.is_principal())
      CHECK(std::abs(gauss_sum(chi, 1) - std::complex<double>(0, std::sqrt(7.0))) < 1e-12);
  const auto principal6 = DirichletCharacter::principal(unit_group_basis(6));
  CHECK(std::abs(gauss_sum(principal6, 1) - 1.0) < 1e-12);
  CHECK_THROWS_AS(gauss_sum(principal6, 2), DomainError);
  for (const auto& chi : enumerate_characters(unit_group_basis(40)))
    if (chi.is_primitive()) CHECK(std::abs(std::abs(gauss_sum(chi, 3)) - std::sqrt(40.0)) < 1e-10);
}

TEST_CASE("gauss spectrum matches single sums") {
  for (const auto& chi : enumerate_characters(unit_group_basis(21))) {
    const auto spec = gauss_sum_spectrum(chi);
    for (i64 a : {1, 2, 4, 5, 20}) CHECK(std::abs(spec[a] - gauss_sum(chi, a)) < 1e-10);
  }
}

TEST_CASE("quadratic gauss bound") {
  CHECK(std::abs(std::abs(quadratic_gauss_bound_check(5, 1, 0).value) - std::sqrt(5.0)) < 1e-12);
  const auto four = quadratic_gauss_bound_check(4, 1, 0);
  CHECK(std::abs(four.value - std::complex<double>(2, 2)) < 1e-12);
  CHECK(four.pass);
  CHECK(std::abs(quadratic_gauss_bound_check(1, 0, 0).value - 1.0) < 1e-12);
}

TEST_CASE("cube roots: counts are 0 or the 3-torsion size") {
  for (u64 q : {7ULL, 9ULL, 63ULL, 91ULL}) {
    const auto g = unit_group_basis(q);
    std::size_t torsion = 1;
    for (const auto o : g->orders()) torsion *= gcd(3, o);
    for (const auto& chi : enumerate_characters(g)) {
      const auto n = count_cube_roots(chi);
      CHECK((n == 0 || n == torsion));
    }
    CHECK(count_cube_roots(DirichletCharacter::principal(g)) == torsion);
  }
  // 7 * 13 * 19 * 9 has four order-3 generators: 81 roots, above any fixed bound.
  const auto big = unit_group_basis(7 * 13 * 19 * 9);
  CHECK(count_cube_roots(DirichletCharacter::principal(big)) == 81);
}

TEST_CASE("cubic conductor shape") {
  CHECK(primitive_cubic_characters(9).size() == 2);
  CHECK(primitive_cubic_characters(27).empty());
  CHECK(primitive_cubic_characters(7).size() == 2);
  CHECK(primitive_cubic_characters(63).size() == 4);
  CHECK(has_cubic_conductor_shape(63));
  CHECK_FALSE(has_cubic_conductor_shape(49));
  const auto r = cubic_structure_report(20);
  std::vector<u64> moduli;
  for (const auto& m : r.moduli) moduli.push_back(m.modulus);
  CHECK(moduli == std::vector<u64>{7, 9, 13, 19});
  CHECK(r.violations.empty());
}
