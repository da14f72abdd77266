#include <cmath>

#include "weibias/simd/moments.hpp"

namespace weibias::simd {

WeightedMoments weighted_moments_scalar(std::span<const double> t, double k) {
  WeightedMoments m;
  for (double ti : t) {
    const double w = std::exp(k * ti);
    const double wt = w * ti;
    m.sum_w += w;
    m.sum_wt += wt;
    m.sum_wtt += wt * ti;
  }
  return m;
}

}  // namespace weibias::simd
