#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lowlying/arith.hpp"

namespace lowlying {

/// The curve y^2 = x^3 + a x + b with its discriminant -16(4a^3 + 27b^2).
struct CurveParams {
  i64 a = 0;
  i64 b = 0;
  i64 disc = 0;

  /// Throws DomainError for singular curves or a discriminant outside 64 bits.
  static CurveParams make(i64 a, i64 b);
  bool operator==(const CurveParams&) const = default;
};

/// -16(4a^3 + 27b^2) without overflow.
i128 discriminant(i64 a, i64 b);

/// lambda_{a,b}(p) = -sum_{x mod p} ((x^3 + a x + b)/p), for every prime p > 3
/// including primes dividing the discriminant.
i64 lambda_p(i64 a, i64 b, u64 p);
i64 lambda_p(i64 a, i64 b, const LegendreTable& legendre);

/// lambda_p(a, b, p)^2 - p.
i64 lambda_p2(i64 a, i64 b, u64 p);

inline constexpr u64 kDefaultTableCap = 1000;

/// All lambda_{alpha,beta}(p) for residues alpha, beta mod p, row-major in alpha.
class FrobTable {
 public:
  FrobTable() = default;
  FrobTable(u64 p, std::vector<std::int16_t> values);

  u64 prime() const { return p_; }
  int operator()(u64 alpha, u64 beta) const { return values_[alpha * p_ + beta]; }
  int at(i64 a, i64 b) const { return (*this)(reduce(a, p_), reduce(b, p_)); }
  const std::vector<std::int16_t>& values() const { return values_; }

  bool operator==(const FrobTable&) const = default;

 private:
  u64 p_ = 0;
  std::vector<std::int16_t> values_;
};

/// Builds the full residue grid. Three rows (alpha = 0, 1 and a fixed
/// non-residue) are summed directly in O(p^2); every other row follows from
/// lambda_{d^2 alpha, d^3 beta} = (d/p) lambda_{alpha, beta}.
/// Throws DomainError for p <= 3 and PreconditionError when p > cap.
FrobTable lambda_table(u64 p, u64 cap = kDefaultTableCap);

struct TwistedSum {
  std::complex<double> bruteforce;
  std::complex<double> closedform;
};

/// sum_{alpha,beta mod p} lambda_{alpha,beta}(p) e((h alpha + k beta)/p) by
/// brute force, next to -(k/p) psi_4(p) p^{3/2} e(-h^3 kbar^2 / p) (0 when p | k).
TwistedSum twisted_complete_sum(u64 p, i64 h, i64 k);
TwistedSum twisted_complete_sum(const FrobTable& table, i64 h, i64 k);

/// sum_{alpha,beta} lambda_{alpha,beta}(p)^2 by brute force over the table.
i64 lambda_sq_total(u64 p);
i64 lambda_sq_total(const FrobTable& table);

/// Cache file: "FRBT", u32 version = 1, u64 p, u8 entry width = 2,
/// p^2 little-endian i16 entries, CRC-64/XZ of all preceding bytes.
void save_table(const FrobTable& table, const std::filesystem::path& path);
FrobTable load_table(const std::filesystem::path& path);

/// Directory of saved tables plus an in-memory layer; safe for concurrent use.
class FrobCache {
 public:
  explicit FrobCache(std::optional<std::filesystem::path> dir, u64 cap = kDefaultTableCap);

  u64 cap() const { return cap_; }
  const std::optional<std::filesystem::path>& dir() const { return dir_; }

  /// Table for p, loaded from disk or built (and written back when a directory is set).
  /// Returns nullptr when p exceeds the cap.
  std::shared_ptr<const FrobTable> get(u64 p);

  static std::filesystem::path file_name(u64 p);

 private:
  std::optional<std::filesystem::path> dir_;
  u64 cap_;
  std::mutex mutex_;
  std::unordered_map<u64, std::shared_ptr<const FrobTable>> memory_;
};

}  // namespace lowlying
