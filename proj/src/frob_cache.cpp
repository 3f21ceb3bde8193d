#include <array>
#include <cstring>
#include <fstream>
#include <iterator>

#include "lowlying/errors.hpp"
#include "lowlying/frobenius.hpp"
#include "lowlying/numeric.hpp"

namespace lowlying {

namespace {

constexpr std::array<unsigned char, 4> kMagic{'F', 'R', 'B', 'T'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint8_t kWidth = 2;
constexpr std::size_t kHeader = 4 + 4 + 8 + 1;

template <class T>
void put_le(std::vector<unsigned char>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<unsigned char>((static_cast<u64>(v) >> (8 * i)) & 0xFF));
}

template <class T>
T get_le(const unsigned char* in) {
  u64 v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<u64>(in[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

void save_table(const FrobTable& table, const std::filesystem::path& path) {
  std::vector<unsigned char> bytes;
  bytes.reserve(kHeader + 2 * table.values().size() + 8);
  bytes.insert(bytes.end(), kMagic.begin(), kMagic.end());
  put_le<std::uint32_t>(bytes, kVersion);
  put_le<u64>(bytes, table.prime());
  put_le<std::uint8_t>(bytes, kWidth);
  for (const auto v : table.values()) put_le<std::uint16_t>(bytes, static_cast<std::uint16_t>(v));
  put_le<u64>(bytes, crc64(bytes));

  // Write to a sibling and rename so readers never see a partial file.
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("save_table: cannot open " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("save_table: write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("save_table: rename to " + path.string() + " failed: " + ec.message());
}

FrobTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_table: cannot open " + path.string());
  const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in), {}};

  if (bytes.size() < kMagic.size() || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0)
    throw FormatError("load_table: bad magic in " + path.string());
  if (bytes.size() < kHeader) throw ChecksumError("load_table: truncated header in " + path.string());
  const auto version = get_le<std::uint32_t>(bytes.data() + 4);
  if (version != kVersion)
    throw FormatError("load_table: unsupported version " + std::to_string(version));
  const auto p = get_le<u64>(bytes.data() + 8);
  const auto width = get_le<std::uint8_t>(bytes.data() + 16);
  if (width != kWidth) throw FormatError("load_table: unsupported entry width");
  if (p <= 3 || p >= (u64{1} << 28)) throw FormatError("load_table: implausible prime in header");

  const u64 expected = kHeader + 2 * p * p + 8;
  if (bytes.size() != expected)
    throw ChecksumError("load_table: " + path.string() + " has " + std::to_string(bytes.size()) +
                        " bytes, expected " + std::to_string(expected));
  const auto stored = get_le<u64>(bytes.data() + expected - 8);
  if (crc64(std::span(bytes.data(), expected - 8)) != stored)
    throw ChecksumError("load_table: checksum mismatch in " + path.string());

  std::vector<std::int16_t> values(p * p);
  const unsigned char* body = bytes.data() + kHeader;
  for (u64 i = 0; i < p * p; ++i) values[i] = static_cast<std::int16_t>(get_le<std::uint16_t>(body + 2 * i));
  return FrobTable(p, std::move(values));
}

FrobCache::FrobCache(std::optional<std::filesystem::path> dir, u64 cap) : dir_(std::move(dir)), cap_(cap) {
  if (dir_) std::filesystem::create_directories(*dir_);
}

std::filesystem::path FrobCache::file_name(u64 p) { return "frob_" + std::to_string(p) + ".bin"; }

std::shared_ptr<const FrobTable> FrobCache::get(u64 p) {
  if (p > cap_) return nullptr;
  {
    std::lock_guard lock(mutex_);
    if (auto it = memory_.find(p); it != memory_.end()) return it->second;
  }
  std::shared_ptr<const FrobTable> table;
  if (dir_) {
    const auto path = *dir_ / file_name(p);
    if (std::filesystem::exists(path)) {
      try {
        auto loaded = load_table(path);
        if (loaded.prime() == p) table = std::make_shared<const FrobTable>(std::move(loaded));
      } catch (const std::runtime_error&) {
        // corrupt entries are rebuilt and overwritten below
      }
    }
    if (!table) {
      table = std::make_shared<const FrobTable>(lambda_table(p, cap_));
      save_table(*table, path);
    }
  } else {
    table = std::make_shared<const FrobTable>(lambda_table(p, cap_));
  }
  std::lock_guard lock(mutex_);
  return memory_.emplace(p, table).first->second;
}

}  // namespace lowlying
