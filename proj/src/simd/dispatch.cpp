#include <atomic>
#include <cstdlib>
#include <string_view>

#include "weibias/simd/moments.hpp"

namespace weibias::simd {
namespace {

bool cpu_has_avx2() {
#if defined(WEIBIAS_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__)) && \
    (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  const bool avx2 = cpu_has_avx2();
  if (const char* env = std::getenv("WEIBIAS_ISA")) {
    const std::string_view requested{env};
    if (requested == "scalar") return Isa::scalar;
    if (requested == "avx2" && avx2) return Isa::avx2;
  }
  return avx2 ? Isa::avx2 : Isa::scalar;
}

// -1: automatic; otherwise the forced Isa value.
std::atomic<int> forced{-1};

Isa automatic() {
  static const Isa isa = detect();
  return isa;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() {
  const int f = forced.load(std::memory_order_relaxed);
  return f < 0 ? automatic() : static_cast<Isa>(f);
}

void force_isa(std::optional<Isa> isa) {
  if (!isa) {
    forced.store(-1, std::memory_order_relaxed);
    return;
  }
  const Isa chosen = isa_available(*isa) ? *isa : Isa::scalar;
  forced.store(static_cast<int>(chosen), std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

WeightedMoments weighted_moments(std::span<const double> t, double k) {
  switch (active_isa()) {
    case Isa::avx2:
      return weighted_moments_avx2(t, k);
    case Isa::scalar:
      break;
  }
  return weighted_moments_scalar(t, k);
}

}  // namespace weibias::simd
