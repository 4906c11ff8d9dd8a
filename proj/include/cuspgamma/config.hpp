// Run-wide knobs shared by the CLI, the verification suites and the bindings.
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cuspgamma/util.hpp"

namespace cuspgamma {

struct RunConfig {
  std::optional<std::filesystem::path> cache_dir;
  bool no_cache = false;
  double tol_rel = 1e-6;
  u64 max_field = u64{1} << 20;
  u64 max_enum = 10'000'000;
  u64 psi_shift = 1;  // packed-coefficient value of the level-1 shift b
  u64 seed = 0;
  unsigned jobs = 0;  // 0 = available parallelism
  std::string output = "json";

  std::optional<std::filesystem::path> tower_cache_dir() const {
    if (no_cache) return std::nullopt;
    return cache_dir;
  }
};

}  // namespace cuspgamma
