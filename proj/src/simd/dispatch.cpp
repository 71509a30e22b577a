#include <atomic>
#include <cstdlib>
#include <string_view>

#include "cylwig/error.hpp"
#include "cylwig/simd/kernels.hpp"

namespace cylwig::simd {

#ifndef CYLWIG_HAVE_AVX2
namespace detail {
const KernelTable* avx2_table_unchecked() { return nullptr; }
}  // namespace detail
#endif

namespace {

bool cpu_has_avx2_fma() {
#if defined(CYLWIG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const KernelTable* best = avx2_table();
  const char* env = std::getenv("CYLWIG_SIMD");
  std::string_view want = env != nullptr ? env : "auto";
  if (want == "scalar") return &scalar_table();
  if (want == "avx2") {
    if (best == nullptr) throw InvalidArgument("CYLWIG_SIMD=avx2 but AVX2+FMA is unavailable");
    return best;
  }
  if (want != "auto" && !want.empty())
    throw InvalidArgument("CYLWIG_SIMD must be scalar, avx2 or auto");
  return best != nullptr ? best : &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> s{initial_table()};
  return s;
}

}  // namespace

const KernelTable* avx2_table() {
  static const bool ok = cpu_has_avx2_fma();
  return ok ? detail::avx2_table_unchecked() : nullptr;
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select(Isa isa) {
  const KernelTable* t = isa == Isa::scalar ? &scalar_table() : avx2_table();
  if (t == nullptr) return false;
  slot().store(t, std::memory_order_release);
  return true;
}

const char* isa_name(Isa isa) { return isa == Isa::scalar ? "scalar" : "avx2"; }

}  // namespace cylwig::simd
