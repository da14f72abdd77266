#pragma once

// Weighted log-moment sums behind every Weibull score evaluation.
//
// For shifted log-observations t_i <= 0 and a shape k the kernels return
//
//     S0 = sum exp(k t_i),  S1 = sum exp(k t_i) t_i,  S2 = sum exp(k t_i) t_i^2.
//
// A scalar reference kernel is always available. Vector variants are chosen
// at runtime from what the CPU reports; WEIBIAS_ISA=scalar|avx2 in the
// environment, or force_isa(), pins the choice.

#include <optional>
#include <span>
#include <string_view>

namespace weibias::simd {

struct WeightedMoments {
  double sum_w = 0.0;
  double sum_wt = 0.0;
  double sum_wtt = 0.0;
};

enum class Isa { scalar, avx2 };

WeightedMoments weighted_moments_scalar(std::span<const double> t, double k);

// Only callable when isa_available(Isa::avx2); otherwise falls back to scalar.
WeightedMoments weighted_moments_avx2(std::span<const double> t, double k);

// Dispatches to the active variant.
WeightedMoments weighted_moments(std::span<const double> t, double k);

bool isa_available(Isa isa);
Isa active_isa();
// std::nullopt restores automatic selection. Requesting an unavailable ISA
// selects scalar.
void force_isa(std::optional<Isa> isa);
std::string_view isa_name(Isa isa);

}  // namespace weibias::simd
