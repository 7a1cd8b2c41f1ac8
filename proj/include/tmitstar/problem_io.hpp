#pragma once

#include "tmitstar/domain.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace tmitstar {

class ProblemFormatError : public std::runtime_error {
public:
  explicit ProblemFormatError(const std::string& what) : std::runtime_error(what) {}
};

// Parses a problem description from JSON text, deriving the ground symbol
// tables and the grounded pick/place action set. Throws ProblemFormatError on
// malformed JSON, unknown object or region references, goal atoms over
// unknown symbols, or inconsistent geometry.
[[nodiscard]] auto parse_problem(const std::string& json_text) -> Problem;

[[nodiscard]] auto load_problem(const std::filesystem::path& path) -> Problem;

// Inverse of parse_problem: parse(serialize(p)) reconstructs p exactly.
[[nodiscard]] auto serialize_problem(const Problem& problem) -> std::string;

auto save_problem(const Problem& problem, const std::filesystem::path& path) -> void;

}  // namespace tmitstar
