#include "lowlying/numeric.hpp"

#include <array>

namespace lowlying {

double ordered_sum(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

std::complex<double> ordered_sum(std::span<const std::complex<double>> values) {
  ComplexCompensatedSum s;
  for (const auto& v : values) s.add(v);
  return s.value();
}

std::complex<double> unit_root(std::int64_t num, std::uint64_t den) {
  const auto d = static_cast<__int128>(den);
  __int128 r = static_cast<__int128>(num) % d;
  if (r < 0) r += d;
  // Quadrant q and remainder rem: num/den = (q + rem/den) / 4.
  const __int128 scaled = 4 * r;
  const int quadrant = static_cast<int>(scaled / d);
  const __int128 rem = scaled % d;
  const double angle = (M_PI / 2.0) * static_cast<double>(rem) / static_cast<double>(den);
  const double c = rem == 0 ? 1.0 : std::cos(angle);
  const double s = rem == 0 ? 0.0 : std::sin(angle);
  switch (quadrant) {
    case 0:
      return {c, s};
    case 1:
      return {-s, c};
    case 2:
      return {-c, -s};
    default:
      return {s, -c};
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

constexpr std::uint64_t kPoly = 0xC96C5795D7870F42ULL;

constexpr std::array<std::uint64_t, 256> make_crc_table() {
  std::array<std::uint64_t, 256> table{};
  for (std::uint64_t i = 0; i < 256; ++i) {
    std::uint64_t crc = i;
    for (int k = 0; k < 8; ++k) crc = (crc & 1) ? (crc >> 1) ^ kPoly : crc >> 1;
    table[i] = crc;
  }
  return table;
}

constexpr auto kCrcTable = make_crc_table();

}  // namespace

std::uint64_t crc64(std::span<const unsigned char> bytes, std::uint64_t state) {
  std::uint64_t crc = ~state;
  for (unsigned char b : bytes) crc = kCrcTable[(crc ^ b) & 0xFF] ^ (crc >> 8);
  return ~crc;
}

}  // namespace lowlying
