#pragma once

#include <random>
#include <vector>

#include "hclp/instance.hpp"

namespace hclp::testing {

struct SmallCase {
  Instance instance;
  std::size_t t;
};

/// Seeded instances with n, m in [3, 6], g in [1, 6] (capped by the pair
/// count), values in {0..5} and t in {2, 3}.
inline std::vector<SmallCase> small_cases(std::size_t count,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SmallCase> out;
  for (std::size_t k = 0; k < count; ++k) {
    GenConfig cfg;
    cfg.n = 3 + uniform_below(rng, 4);
    cfg.m = 3 + uniform_below(rng, 4);
    cfg.g = std::min<std::size_t>(1 + uniform_below(rng, 6), pair_count(cfg.m));
    cfg.domain_max = 5;
    cfg.seed = rng();
    const std::size_t t = 2 + uniform_below(rng, 2);
    out.push_back({generate(cfg), t});
  }
  return out;
}

}  // namespace hclp::testing
