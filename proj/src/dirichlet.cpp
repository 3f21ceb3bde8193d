#include "lowlying/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lowlying/errors.hpp"
#include "lowlying/numeric.hpp"

namespace lowlying {

namespace {

u64 primitive_root_mod_prime(u64 p) {
  if (p == 2) return 1;
  const Factorization f = factorize(p - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (const auto& [r, e] : f.factors) {
      if (pow_mod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

// x = g (mod m), x = 1 (mod q/m).
u64 crt_lift(u64 g, u64 m, u64 q) {
  const u64 other = q / m;
  if (other == 1) return g % q;
  const u64 t = mul_mod(reduce(static_cast<i64>(g) - 1, m), mod_inverse(static_cast<i64>(other % m), m), m);
  return (1 + other * t) % q;
}

// Walks every exponent vector of a group with the given orders (mixed radix),
// calling visit(exponents) once per vector.
template <class Visit>
void for_each_exponent_vector(std::span<const std::uint32_t> orders, Visit&& visit) {
  std::vector<std::uint32_t> e(orders.size(), 0);
  for (;;) {
    visit(std::span<const std::uint32_t>(e));
    std::size_t i = 0;
    while (i < e.size()) {
      if (++e[i] < orders[i]) break;
      e[i] = 0;
      ++i;
    }
    if (i == e.size()) return;
  }
}

}  // namespace

UnitGroup::UnitGroup(u64 q) : q_(q) {
  if (q == 0) throw DomainError("UnitGroup: modulus must be positive");
  const Factorization f = factorize(q);
  for (const auto& [p, e] : f.factors) {
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 2) {
        generators_.push_back(crt_lift(3, pe, q));
        orders_.push_back(2);
      } else if (e >= 3) {
        generators_.push_back(crt_lift(pe - 1, pe, q));
        orders_.push_back(2);
        generators_.push_back(crt_lift(5, pe, q));
        orders_.push_back(static_cast<std::uint32_t>(pe / 4));
      }
      continue;
    }
    u64 g = primitive_root_mod_prime(p);
    if (e >= 2 && pow_mod(g, p - 1, p * p) == 1) g += p;
    generators_.push_back(crt_lift(g, pe, q));
    orders_.push_back(static_cast<std::uint32_t>(pe / p * (p - 1)));
  }

  for (auto o : orders_) {
    phi_ *= o;
    exponent_ = lcm(exponent_, o);
  }

  const std::size_t r = generators_.size();
  unit_.assign(q, 0);
  logs_.assign(q * r, 0);
  u64 x = 1 % q;
  std::size_t visited = 0;
  std::vector<std::uint32_t> e(r, 0);
  for (;;) {
    if (unit_[x]) throw DiagnosticError("UnitGroup: generators are not independent");
    unit_[x] = 1;
    std::copy(e.begin(), e.end(), logs_.begin() + static_cast<std::ptrdiff_t>(x * r));
    ++visited;
    std::size_t i = 0;
    while (i < r) {
      x = mul_mod(x, generators_[i], q);
      if (++e[i] < orders_[i]) break;
      e[i] = 0;  // g_i^{ord_i} = 1, so x has wrapped back
      ++i;
    }
    if (i == r) break;
  }
  if (visited != phi_) throw DiagnosticError("UnitGroup: basis does not cover the unit group");

  roots_.resize(exponent_);
  for (u64 k = 0; k < exponent_; ++k) roots_[k] = unit_root(static_cast<i64>(k), exponent_);
}

UnitGroupPtr unit_group_basis(u64 q) { return std::make_shared<const UnitGroup>(q); }

DirichletCharacter::DirichletCharacter(UnitGroupPtr group, std::vector<std::uint32_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  const auto orders = group_->orders();
  if (exponents_.size() != orders.size())
    throw PreconditionError("DirichletCharacter: exponent vector has wrong length");
  phase_weights_.resize(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    exponents_[i] %= orders[i];
    phase_weights_[i] = group_->exponent() / orders[i];
  }
}

DirichletCharacter DirichletCharacter::principal(UnitGroupPtr group) {
  std::vector<std::uint32_t> zeros(group->rank(), 0);
  return {std::move(group), std::move(zeros)};
}

i64 DirichletCharacter::phase(i64 n) const {
  if (!group_->is_unit(n)) return -1;
  const auto logs = group_->log(n);
  const u64 L = group_->exponent();
  u64 acc = 0;
  for (std::size_t i = 0; i < logs.size(); ++i)
    acc = (acc + static_cast<u64>(static_cast<u128>(exponents_[i]) * logs[i] * phase_weights_[i] % L)) % L;
  return static_cast<i64>(acc);
}

std::complex<double> DirichletCharacter::operator()(i64 n) const {
  const i64 ph = phase(n);
  return ph < 0 ? std::complex<double>{0.0, 0.0} : group_->root(static_cast<u64>(ph));
}

std::vector<std::complex<double>> DirichletCharacter::values() const {
  std::vector<std::complex<double>> v(modulus());
  for (u64 n = 0; n < modulus(); ++n) v[n] = (*this)(static_cast<i64>(n));
  return v;
}

DirichletCharacter DirichletCharacter::conj() const { return pow(-1); }

DirichletCharacter DirichletCharacter::pow(i64 k) const {
  std::vector<std::uint32_t> e(exponents_.size());
  const auto orders = group_->orders();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const i64 o = orders[i];
    e[i] = static_cast<std::uint32_t>(reduce(static_cast<i64>(static_cast<i128>(exponents_[i]) * k % o), o));
  }
  return {group_, std::move(e)};
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
  if (other.group_->modulus() != modulus())
    throw DomainError("DirichletCharacter: product of characters with different moduli");
  std::vector<std::uint32_t> e(exponents_.size());
  const auto orders = group_->orders();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = (exponents_[i] + other.exponents_[i]) % orders[i];
  return {group_, std::move(e)};
}

bool DirichletCharacter::is_principal() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](auto e) { return e == 0; });
}

u64 DirichletCharacter::order() const {
  u64 result = 1;
  const auto orders = group_->orders();
  for (std::size_t i = 0; i < exponents_.size(); ++i)
    result = lcm(result, orders[i] / std::gcd<u64>(exponents_[i], orders[i]));
  return result;
}

u64 DirichletCharacter::conductor() const {
  const u64 q = modulus();
  if (is_principal()) return 1;
  for (u64 f : factorize(q).divisors()) {
    bool induced = true;
    for (u64 n = 1; n < q; n += f) {
      if (group_->is_unit(static_cast<i64>(n)) && phase(static_cast<i64>(n)) != 0) {
        induced = false;
        break;
      }
    }
    if (induced) return f;
  }
  return q;
}

bool DirichletCharacter::operator==(const DirichletCharacter& other) const {
  return modulus() == other.modulus() && exponents_ == other.exponents_;
}

std::vector<DirichletCharacter> enumerate_characters(const UnitGroupPtr& group) {
  std::vector<DirichletCharacter> chars;
  chars.reserve(group->order());
  for_each_exponent_vector(group->orders(), [&](std::span<const std::uint32_t> e) {
    chars.emplace_back(group, std::vector<std::uint32_t>(e.begin(), e.end()));
  });
  return chars;
}

std::vector<DirichletCharacter> enumerate_characters(u64 q) { return enumerate_characters(unit_group_basis(q)); }

std::vector<DirichletCharacter> characters_killed_by(const UnitGroupPtr& group, u64 k) {
  const auto orders = group->orders();
  std::vector<std::uint32_t> steps(orders.size()), counts(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    counts[i] = static_cast<std::uint32_t>(std::gcd<u64>(k, orders[i]));
    steps[i] = orders[i] / counts[i];
  }
  std::vector<DirichletCharacter> chars;
  for_each_exponent_vector(counts, [&](std::span<const std::uint32_t> idx) {
    std::vector<std::uint32_t> e(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) e[i] = idx[i] * steps[i];
    chars.emplace_back(group, std::move(e));
  });
  return chars;
}

std::complex<double> gauss_sum(const DirichletCharacter& chi, i64 a) {
  const u64 q = chi.modulus();
  const u64 ar = reduce(a, q);
  if (gcd(ar, q) != 1) throw DomainError("gauss_sum: a must be coprime to the modulus");
  ComplexCompensatedSum sum;
  for (u64 b = 0; b < q; ++b) {
    const i64 ph = chi.phase(static_cast<i64>(b));
    if (ph < 0) continue;
    sum += chi.group()->root(static_cast<u64>(ph)) * unit_root(static_cast<i64>(mul_mod(ar, b, q)), q);
  }
  return sum.value();
}

std::vector<std::complex<double>> gauss_sum_spectrum(const DirichletCharacter& chi) {
  const u64 q = chi.modulus();
  const auto values = chi.values();
  std::vector<std::complex<double>> e(q);
  for (u64 j = 0; j < q; ++j) e[j] = unit_root(static_cast<i64>(j), q);
  std::vector<std::complex<double>> out(q);
  for (u64 a = 0; a < q; ++a) {
    std::complex<double> acc{0.0, 0.0};
    u64 idx = 0;
    for (u64 b = 0; b < q; ++b) {
      acc += values[b] * e[idx];
      idx += a;
      if (idx >= q) idx -= q;
    }
    out[a] = acc;
  }
  return out;
}

QuadraticGaussCheck quadratic_gauss_bound_check(u64 l, i64 a, i64 k) {
  if (l == 0) throw DomainError("quadratic_gauss_bound_check: l must be positive");
  const u64 ar = reduce(a, l), kr = reduce(k, l);
  ComplexCompensatedSum sum;
  for (u64 b = 0; b < l; ++b) {
    const u64 phase = (mul_mod(ar, mul_mod(b, b, l), l) + mul_mod(kr, b, l)) % l;
    sum += unit_root(static_cast<i64>(phase), l);
  }
  const auto value = sum.value();
  return {value, std::abs(value) <= 2.0 * std::sqrt(static_cast<double>(l)) + 1e-9};
}

std::size_t count_cube_roots(const DirichletCharacter& chi1) {
  const auto& group = chi1.group();
  const auto orders = group->orders();
  const auto target = chi1.exponents();
  std::size_t count = 0;
  for_each_exponent_vector(orders, [&](std::span<const std::uint32_t> e) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      const u64 o = orders[i];
      if ((3 * (o - e[i])) % o != target[i] % o) return;
    }
    ++count;
  });
  return count;
}

bool has_cubic_conductor_shape(u64 q) {
  if (q == 0) return false;
  u64 rest = q;
  if (rest % 9 == 0) rest /= 9;
  if (rest % 2 == 0 || rest % 3 == 0) return false;
  for (const auto& [p, e] : factorize(rest).factors)
    if (e != 1 || p % 3 != 1) return false;
  return true;
}

std::vector<DirichletCharacter> primitive_cubic_characters(u64 q) {
  const auto group = unit_group_basis(q);
  std::vector<DirichletCharacter> result;
  for (auto& chi : characters_killed_by(group, 3)) {
    if (chi.is_principal()) continue;
    if (chi.conductor() == q) result.push_back(std::move(chi));
  }
  return result;
}

CubicStructureReport cubic_structure_report(u64 limit) {
  CubicStructureReport report;
  report.limit = limit;
  for (u64 q = 1; q <= limit; ++q) {
    // phi(q) must be divisible by 3 for any cubic character to exist.
    if (euler_phi(q) % 3 != 0) continue;
    const auto prim = primitive_cubic_characters(q);
    if (prim.empty()) continue;
    const bool ok = has_cubic_conductor_shape(q);
    report.moduli.push_back({q, prim.size(), ok});
    if (!ok) report.violations.push_back(q);
  }
  return report;
}

}  // namespace lowlying
