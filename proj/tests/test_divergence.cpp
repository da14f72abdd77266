#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles/kl_oracle.hpp"
#include "weibias/divergence.hpp"
#include "weibias/errors.hpp"
#include "weibias/random.hpp"
#include "weibias/special_functions.hpp"

using namespace weibias;

namespace {

oracle::Model model(const WeibullParams& w) { return {w.shape(), w.scale()}; }

struct Tuple {
  WeibullParams g;
  WeibullParams c;
  double censor;
};

Tuple random_tuple(RandomStream& rs) {
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * rs.uniform_open(); };
  const WeibullParams g(draw(0.5, 5.0), draw(0.5, 2.0));
  const WeibullParams c(g.shape() * draw(0.6, 1.6), g.scale() * draw(0.7, 1.4));
  return {g, c, quantile(g, draw(0.1, 0.95))};
}

}  // namespace

TEST_CASE("identical models have zero divergence") {
  for (auto w : {WeibullParams(0.5, 2.0), WeibullParams(1.0, 1.0), WeibullParams(9.0, 0.3)}) {
    CHECK(std::abs(kl_complete(w, w)) <= 1e-12);
    for (double c : {0.1, 1.0, 10.0}) CHECK(std::abs(kl_censored(w, w, c)) <= 1e-10);
  }
}

TEST_CASE("exponential special case") {
  CHECK(kl_complete(WeibullParams(1.0, 2.0), WeibullParams(1.0, 1.0)) ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("complete divergence matches quadrature") {
  const WeibullParams g(2.0, 1.0), c(1.5, 1.2);
  CHECK(std::abs(kl_complete(g, c) - oracle::kl_complete_quadrature(model(g), model(c))) <= 1e-7);
}

TEST_CASE("censored divergence matches quadrature") {
  const WeibullParams g(1.0, 1.0), c(2.0, 1.5);
  CHECK(std::abs(kl_censored(g, c, 1.0) - oracle::kl_censored_quadrature(model(g), model(c), 1.0)) <=
        1e-7);
}

TEST_CASE("random tuples match quadrature") {
  RandomStream rs(301);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_tuple(rs);
    CAPTURE(i);
    CHECK(std::abs(kl_complete(t.g, t.c) - oracle::kl_complete_quadrature(model(t.g), model(t.c))) <= 1e-7);
    CHECK(std::abs(kl_censored(t.g, t.c, t.censor) -
                   oracle::kl_censored_quadrature(model(t.g), model(t.c), t.censor)) <= 1e-7);
  }
}

TEST_CASE("other readings of the truncated-moment argument disagree with quadrature") {
  // Replacing (c/l0)^k0 in the truncated moment by another combination of
  // the two models moves the value away from the oracle. c differs from both
  // scales so that no two readings coincide.
  const WeibullParams g(1.3, 1.2), c(2.0, 1.5);
  const double cens = 0.8;
  const double s = c.shape() / g.shape() + 1.0;
  const double weight = std::pow(g.scale() / c.scale(), c.shape());
  const double z_used = std::pow(cens / g.scale(), g.shape());
  const double truth = oracle::kl_censored_quadrature(model(g), model(c), cens);
  for (double z_alt : {std::pow(cens / c.scale(), c.shape()), std::pow(cens / g.scale(), c.shape()),
                       std::pow(cens / c.scale(), g.shape())}) {
    const double alt = kl_censored(g, c, cens) - weight * (lower_inc_gamma(s, z_used) - lower_inc_gamma(s, z_alt));
    CHECK(std::abs(alt - truth) > 1e-3);
  }
}

TEST_CASE("divergences are non-negative and vanish only at equality") {
  RandomStream rs(302);
  for (int i = 0; i < 1000; ++i) {
    auto draw = [&](double lo, double hi) { return lo + (hi - lo) * rs.uniform_open(); };
    const WeibullParams g(draw(0.2, 12.0), draw(0.1, 10.0));
    const WeibullParams c(draw(0.2, 12.0), draw(0.1, 10.0));
    const double cens = g.scale() * draw(0.05, 4.0);
    double complete = 0.0;
    try {
      complete = kl_complete(g, c);
    } catch (const OverflowError&) {
      continue;  // the moment term is beyond double range; nothing to compare
    }
    CHECK(complete > 1e-12);
    CHECK(kl_censored(g, c, cens) >= 0.0);
  }
}

TEST_CASE("divergences are scale invariant") {
  RandomStream rs(303);
  for (int i = 0; i < 50; ++i) {
    const auto t = random_tuple(rs);
    for (double s : {0.01, 3.0, 250.0}) {
      const WeibullParams g(t.g.shape(), s * t.g.scale()), c(t.c.shape(), s * t.c.scale());
      CHECK(std::abs(kl_complete(g, c) - kl_complete(t.g, t.c)) <= 1e-10);
      CHECK(std::abs(kl_censored(g, c, s * t.censor) - kl_censored(t.g, t.c, t.censor)) <= 1e-10);
    }
  }
}

TEST_CASE("censored divergence tends to the complete one as c grows") {
  for (auto [g, c] : {std::pair{WeibullParams(1.0, 1.0), WeibullParams(1.3, 0.9)},
                      {WeibullParams(2.5, 3.0), WeibullParams(2.0, 3.5)},
                      {WeibullParams(0.8, 0.5), WeibullParams(0.7, 0.6)}}) {
    CHECK(std::abs(kl_censored(g, c, 1e6 * g.scale()) - kl_complete(g, c)) <= 1e-6);
  }
}

TEST_CASE("dispatch and errors") {
  const WeibullParams g(1.2, 1.0), c(1.0, 1.1);
  CHECK(kl_divergence({g, c, std::nullopt}) == kl_complete(g, c));
  CHECK(kl_divergence({g, c, 0.8}) == kl_censored(g, c, 0.8));
  CHECK_THROWS_AS(kl_censored(g, c, 0.0), DomainError);
  CHECK_THROWS_AS(kl_censored(g, c, INFINITY), DomainError);
  CHECK_THROWS_AS(kl_complete(WeibullParams(1.0, 1e6), WeibullParams(200.0, 1.0)), OverflowError);
}
