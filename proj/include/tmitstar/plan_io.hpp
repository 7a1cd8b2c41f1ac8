#pragma once

#include "tmitstar/domain.hpp"
#include "tmitstar/search.hpp"

#include <stdexcept>
#include <string>

namespace tmitstar {

class PlanFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Plans serialize against their problem: actions and discrete symbols travel
// by name, geometry by exact coordinates, so a round trip reproduces the
// path bit for bit.
[[nodiscard]] auto serialize_plan(const Problem& problem, const SolutionPath& path) -> std::string;
[[nodiscard]] auto parse_plan(const Problem& problem, const std::string& text) -> SolutionPath;

auto save_plan(const Problem& problem, const SolutionPath& path, const std::string& file) -> void;
[[nodiscard]] auto load_plan(const Problem& problem, const std::string& file) -> SolutionPath;

}  // namespace tmitstar
