#pragma once

#include <cstdint>
#include <random>

namespace aemu {

// splitmix64: cheap, well-mixed 64-bit stream used only to derive seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent generator for substream `stream_id` of `master`.
// Deterministic and order-independent, so parallel workers can draw their
// own stream without coordinating.
inline std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t stream_id) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (stream_id * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
  std::uint64_t lo = splitmix64(s);
  std::uint64_t hi = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(lo >> 32),
                    static_cast<std::uint32_t>(hi), static_cast<std::uint32_t>(hi >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace aemu
