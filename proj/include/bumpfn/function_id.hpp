#pragma once

#include <optional>
#include <string_view>

namespace bumpfn {

// F(t) = exp(-1/t) for t > 0 and 0 for t <= 0; defined on all reals.
// G(t) = exp(-1/t), H(t) = exp(1/t); both defined for t != 0.
// G(-t) = H(t).
enum class FunctionId { F, G, H };

constexpr std::string_view to_string(FunctionId fn) {
  switch (fn) {
    case FunctionId::F: return "f";
    case FunctionId::G: return "g";
    case FunctionId::H: return "h";
  }
  return "?";
}

constexpr std::optional<FunctionId> parse_function_id(std::string_view name) {
  if (name == "f" || name == "F") return FunctionId::F;
  if (name == "g" || name == "G") return FunctionId::G;
  if (name == "h" || name == "H") return FunctionId::H;
  return std::nullopt;
}

}  // namespace bumpfn
