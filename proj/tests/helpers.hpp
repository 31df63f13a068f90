#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "simplicit/error.hpp"
#include "simplicit/rational.hpp"

namespace simplicit::testing {

// Error code raised by f, or nullopt when f returns normally.
inline std::optional<ErrorCode> thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline Rat Q(std::string_view s) { return rat_from_string(s); }

inline std::vector<Rat> qvec(const std::vector<std::string>& parts) {
  std::vector<Rat> out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(rat_from_string(p));
  return out;
}

}  // namespace simplicit::testing
