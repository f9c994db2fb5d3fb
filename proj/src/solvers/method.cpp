#include "shiftk/solvers/method.hpp"

#include <string>

#include "shiftk/core/text_format.hpp"
#include "shiftk/core/types.hpp"

namespace shiftk {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::cg_r:
      return "cg_r";
    case Method::cg_c:
      return "cg_c";
    case Method::cocg:
      return "cocg";
    case Method::bicg:
      return "bicg";
  }
  return "bicg";
}

Method method_from_string(std::string_view name) {
  const auto s = text::to_lower(text::trim(name));
  if (s == "cg_r") return Method::cg_r;
  if (s == "cg_c") return Method::cg_c;
  if (s == "cocg") return Method::cocg;
  if (s == "bicg") return Method::bicg;
  throw InputError("unknown solver method '" + std::string(name) + "'");
}

}  // namespace shiftk
