#pragma once

#include <string>

#include "hclp/instance.hpp"

namespace hclp::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(HCLP_FIXTURES) + "/" + name;
}

inline Instance load_fixture(const std::string& name) {
  return read_instance_file(fixture_path(name));
}

// Dessert example: evaluations c, s, f; alternatives AP, CC, IC.
namespace dessert {
inline constexpr std::size_t c = 0, s = 1, f = 2;
inline constexpr Alternative AP = 0, CC = 1, IC = 2;
}  // namespace dessert

// Five evaluations c1..c5 over alternatives alpha, beta, gamma, delta.
namespace five {
inline constexpr std::size_t c1 = 0, c2 = 1, c3 = 2, c4 = 3, c5 = 4;
inline constexpr Alternative alpha = 0, beta = 1, gamma = 2, delta = 3;
}  // namespace five

}  // namespace hclp::testing
