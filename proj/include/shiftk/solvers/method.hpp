#pragma once

#include <string_view>

namespace shiftk {

/// The four shifted solvers. cg_r: real symmetric H with real shifts making the
/// seed matrix positive definite; cg_c: Hermitian positive definite seed with
/// complex arithmetic; cocg: complex symmetric; bicg: general.
enum class Method { cg_r, cg_c, cocg, bicg };

std::string_view to_string(Method m) noexcept;
/// Throws InputError on an unknown name.
Method method_from_string(std::string_view name);

/// BiCG carries a shadow residual sequence and needs H^dagger products.
constexpr bool needs_shadow(Method m) noexcept { return m == Method::bicg; }

}  // namespace shiftk
