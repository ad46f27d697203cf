#pragma once

#include <cstdint>
#include <string_view>

namespace hdfp {

// 64-bit FNV-1a over a canonical little-endian byte encoding.
class Fnv1a64 {
 public:
  static constexpr std::uint64_t kOffsetBasis = 14695981039346656037ull;
  static constexpr std::uint64_t kPrime = 1099511628211ull;

  constexpr Fnv1a64& byte(std::uint8_t b) {
    state_ = (state_ ^ b) * kPrime;
    return *this;
  }

  constexpr Fnv1a64& u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) byte(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }

  constexpr Fnv1a64& i32(std::int32_t v) { return u32(static_cast<std::uint32_t>(v)); }

  constexpr Fnv1a64& u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) byte(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }

  constexpr Fnv1a64& text(std::string_view s) {
    for (char c : s) byte(static_cast<std::uint8_t>(c));
    return *this;
  }

  constexpr std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = kOffsetBasis;
};

// splitmix64 finalizer; spreads low-entropy hashes over all 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace hdfp
