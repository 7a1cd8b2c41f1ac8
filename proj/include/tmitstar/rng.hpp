#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tmitstar {

inline auto splitmix64(std::uint64_t& state) -> std::uint64_t {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z               = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z               = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

inline auto fnv1a(std::string_view s) -> std::uint64_t {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001b3ULL;
  }

  return h;
}

// Derives independent, reproducible generators from a single master seed. Each
// named stream is a pure function of (master, name), so adding a consumer
// never perturbs the draws seen by existing ones.
struct RngStreams {
  std::uint64_t master = 0;

  [[nodiscard]] auto derive(std::string_view name) const -> std::uint64_t {
    std::uint64_t state = master ^ fnv1a(name);
    return splitmix64(state);
  }

  [[nodiscard]] auto stream(std::string_view name) const -> std::mt19937_64 {
    return std::mt19937_64{derive(name)};
  }
};

}  // namespace tmitstar
