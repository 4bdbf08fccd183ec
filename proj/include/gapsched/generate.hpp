#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gapsched/core.hpp"

namespace gapsched {

enum class Family { uniform_windows, tight_sprinkle, agreeable, release_only, clustered };

std::string to_string(Family family);
std::optional<Family> parse_family(const std::string& name);

struct GenerateOptions {
  Family family = Family::uniform_windows;
  std::size_t n = 0;
  Slot horizon = 0;    // slots drawn from [0, horizon)
  std::uint64_t seed = 0;
  bool feasible = false;  // plant a schedule first (deadline families)
  bool weighted = false;  // weights in 1..9 instead of 1
};

// Deterministic for fixed options.
Instance generate(const GenerateOptions& options);

}  // namespace gapsched
