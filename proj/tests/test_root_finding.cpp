#include <doctest.h>

#include <cmath>
#include <utility>

#include "weibias/root_finding.hpp"

using namespace weibias;

TEST_CASE("newton-bisection finds a simple root") {
  auto f = [](double x) { return std::pair{2.0 - x * x * x, -3.0 * x * x}; };
  const auto r = newton_bisect(f, Bracket{0.0, 3.0});
  CHECK(r.converged);
  CHECK(r.x == doctest::Approx(std::cbrt(2.0)).epsilon(1e-10));
  CHECK(r.iterations < 30);
}

TEST_CASE("bisection takes over when the derivative lies") {
  // Derivative is wrong by a factor of -1; Newton would walk away.
  auto f = [](double x) { return std::pair{1.0 - x, 1.0}; };
  const auto r = newton_bisect(f, Bracket{-5.0, 4.0});
  CHECK(r.converged);
  CHECK(r.x == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a bracket without a sign change is reported") {
  auto f = [](double x) { return std::pair{x * x + 1.0, 2.0 * x}; };
  const auto r = newton_bisect(f, Bracket{-1.0, 1.0});
  CHECK_FALSE(r.converged);
}

TEST_CASE("endpoints that are roots return immediately") {
  auto f = [](double x) { return std::pair{x, 1.0}; };
  CHECK(newton_bisect(f, Bracket{0.0, 1.0}).x == 0.0);
  CHECK(newton_bisect(f, Bracket{-1.0, 0.0}).x == 0.0);
}

TEST_CASE("iteration cap is respected") {
  auto f = [](double x) { return std::pair{std::atan(x - 0.3), 0.0}; };
  RootOptions options;
  options.max_iterations = 5;
  options.residual_tol = 0.0;
  options.x_tol = 0.0;
  const auto r = newton_bisect(f, Bracket{-10.0, 10.0}, options);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 5);
}

TEST_CASE("bracket expansion for decreasing functions") {
  auto f = [](double x) { return std::pair{7.5 - x, -1.0}; };
  const auto up = expand_decreasing_bracket(f, 0.0, 1.0, -100.0, 100.0);
  REQUIRE(up.has_value());
  CHECK(f(up->lo).first > 0.0);
  CHECK(f(up->hi).first <= 0.0);

  const auto down = expand_decreasing_bracket(f, 50.0, 1.0, -100.0, 100.0);
  REQUIRE(down.has_value());
  CHECK(f(down->lo).first >= 0.0);
  CHECK(f(down->hi).first < 0.0);

  CHECK_FALSE(expand_decreasing_bracket(f, 0.0, 1.0, -100.0, 5.0).has_value());
  CHECK_FALSE(expand_decreasing_bracket(f, 20.0, 1.0, 10.0, 100.0).has_value());
}
