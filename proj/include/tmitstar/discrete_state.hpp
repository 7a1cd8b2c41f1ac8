#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tmitstar {

// Truth assignment over a fixed table of ground symbols.
struct DiscreteState {
  std::vector<std::uint8_t> bits;

  DiscreteState() = default;
  explicit DiscreteState(std::size_t n) : bits(n, 0) {}

  [[nodiscard]] auto size() const -> std::size_t { return bits.size(); }
  [[nodiscard]] auto test(int i) const -> bool { return bits[static_cast<std::size_t>(i)] != 0; }
  void set(int i, bool v) { bits[static_cast<std::size_t>(i)] = v ? 1 : 0; }

  [[nodiscard]] auto operator==(const DiscreteState& o) const -> bool = default;

  [[nodiscard]] auto to_string() const -> std::string {
    std::string s;
    s.reserve(bits.size());
    for (const auto b : bits) {
      s.push_back(b != 0 ? '1' : '0');
    }

    return s;
  }
};

struct DiscreteStateHash {
  auto operator()(const DiscreteState& s) const -> std::size_t {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto b : s.bits) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }

    return h;
  }
};

}  // namespace tmitstar
