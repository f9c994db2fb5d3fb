#include <atomic>
#include <cstdlib>
#include <string>

#include "shiftk/core/kernels.hpp"

namespace shiftk::kernels {

#ifdef SHIFTK_HAVE_AVX2
const Table* avx2_kernels_compiled() noexcept;
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(SHIFTK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* initial_choice() noexcept {
  if (const char* env = std::getenv("SHIFTK_ISA"); env != nullptr && std::string(env) == "scalar")
    return &scalar_table();
  if (const Table* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const Table*>& current() noexcept {
  static std::atomic<const Table*> table{initial_choice()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const Table* avx2_table() noexcept {
#ifdef SHIFTK_HAVE_AVX2
  static const bool supported = cpu_has_avx2();
  return supported ? avx2_kernels_compiled() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  const Table* t = isa == Isa::scalar ? &scalar_table() : avx2_table();
  if (t == nullptr) throw InputError("kernel variant '" + std::string(to_string(isa)) + "' is not available");
  current().store(t, std::memory_order_release);
}

}  // namespace shiftk::kernels
