#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "weibias/estimators.hpp"
#include "weibias/random.hpp"
#include "weibias/simd/moments.hpp"

using namespace weibias;
using namespace weibias::simd;

namespace {

// Straightforward long-double sums, the reference for both kernels.
WeightedMoments reference(const std::vector<double>& t, double k) {
  long double s0 = 0, s1 = 0, s2 = 0;
  for (double x : t) {
    const long double w = std::exp(static_cast<long double>(k) * x);
    s0 += w;
    s1 += w * x;
    s2 += w * x * x;
  }
  return {static_cast<double>(s0), static_cast<double>(s1), static_cast<double>(s2)};
}

std::vector<double> shifted_logs(RandomStream& rs, std::size_t n, double spread) {
  std::vector<double> t(n);
  for (auto& x : t) x = -spread * rs.uniform_open();
  if (n > 0) t[0] = 0.0;
  return t;
}

void check_rel(double got, double want, double rel) {
  CHECK(std::abs(got - want) <= rel * std::abs(want) + 1e-300);
}

struct IsaGuard {
  ~IsaGuard() { force_isa(std::nullopt); }
};

}  // namespace

TEST_CASE("scalar kernel matches the long double reference") {
  RandomStream rs(11);
  for (std::size_t n : {0, 1, 2, 3, 7, 31, 100}) {
    const auto t = shifted_logs(rs, n, 5.0);
    for (double k : {0.1, 1.0, 3.7, 40.0}) {
      const auto got = weighted_moments_scalar(t, k);
      const auto want = reference(t, k);
      check_rel(got.sum_w, want.sum_w, 1e-14);
      check_rel(got.sum_wt, want.sum_wt, 1e-13);
      check_rel(got.sum_wtt, want.sum_wtt, 1e-13);
    }
  }
}

TEST_CASE("vector kernel is equivalent to the scalar kernel") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence checked against the scalar fallback");
  }
  RandomStream rs(12);
  for (std::size_t n = 0; n <= 100; ++n) {
    for (double spread : {0.5, 8.0, 900.0}) {
      const auto t = shifted_logs(rs, n, spread);
      for (double k : {1e-3, 0.4, 1.0, 2.5, 12.0, 300.0}) {
        CAPTURE(n);
        CAPTURE(spread);
        CAPTURE(k);
        const auto a = weighted_moments_scalar(t, k);
        const auto b = weighted_moments_avx2(t, k);
        check_rel(b.sum_w, a.sum_w, 1e-13);
        check_rel(b.sum_wt, a.sum_wt, 1e-13);
        check_rel(b.sum_wtt, a.sum_wtt, 1e-13);
      }
    }
  }
}

TEST_CASE("underflowing weights vanish in both kernels") {
  const std::vector<double> t = {0.0, -1000.0, -2000.0, -1.0, -800.0};
  const auto a = weighted_moments_scalar(t, 1.0);
  const auto b = weighted_moments_avx2(t, 1.0);
  CHECK(std::isfinite(b.sum_wtt));
  check_rel(b.sum_w, a.sum_w, 1e-13);
  check_rel(b.sum_wt, a.sum_wt, 1e-13);
  check_rel(b.sum_wtt, a.sum_wtt, 1e-13);
}

TEST_CASE("dispatch honours forced selection") {
  IsaGuard guard;
  force_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  force_isa(Isa::avx2);
  CHECK(active_isa() == (isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar));
  CHECK(isa_available(Isa::scalar));
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_name(Isa::avx2) == "avx2");
}

TEST_CASE("fits agree under both kernels") {
  IsaGuard guard;
  RandomStream rs(13);
  for (int rep = 0; rep < 20; ++rep) {
    const auto s = sample(WeibullParams(0.5 + rep * 0.4, 2.0), 5 + 3 * rep, rs);
    force_isa(Isa::scalar);
    const auto a = fit_ml(s);
    force_isa(Isa::avx2);
    const auto b = fit_ml(s);
    CHECK(b.params.shape() == doctest::Approx(a.params.shape()).epsilon(1e-11));
    CHECK(b.params.scale() == doctest::Approx(a.params.scale()).epsilon(1e-11));
  }
}
