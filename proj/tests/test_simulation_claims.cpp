#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "weibias/estimators.hpp"
#include "weibias/simulation.hpp"

using namespace weibias;

namespace {

const MethodSummary& summary(const CellReport& cell, Method m) {
  for (const auto& s : cell.methods)
    if (s.method == m) return s;
  throw std::logic_error("method missing from cell");
}

}  // namespace

// Complete data: mean(k_ML) / k* - 1 = 1.3795 / n within 3 Monte Carlo
// standard errors, at the desk-scale replicate count.
TEST_CASE("relative ML shape bias follows the first-order law") {
  SimulationConfig c;
  c.replicates = 10000;
  c.methods = {Method::ml};
  c.workers = 0;
  const RandomStream root(c.master_seed);
  const double law = bias_constants::shape_complete();
  for (std::size_t n : {10, 20, 50}) {
    for (double k : {1.0, 5.0}) {
      const auto s = run_cell(c, n, 1.0, k, root).methods[0];
      const double relative = s.bias / k;
      const double se = s.bias_se / k;
      CAPTURE(n);
      CAPTURE(k);
      CAPTURE(relative);
      CAPTURE(law / n);
      CAPTURE(se);
      CHECK(std::abs(relative - law / n) <= 3.0 * se);
    }
  }
}

TEST_CASE("MMLE is less biased than ML on every reference grid cell") {
  for (auto config : {reference_complete_grid(), reference_censored_grid()}) {
    config.replicates = 2000;
    config.methods = {Method::ml, Method::mmle};
    config.workers = 0;
    for (const auto& cell : run(config).cells) {
      CAPTURE(cell.n);
      CAPTURE(cell.p);
      CAPTURE(cell.k_star);
      CHECK(std::abs(summary(cell, Method::mmle).bias) < std::abs(summary(cell, Method::ml).bias));
    }
  }
}
