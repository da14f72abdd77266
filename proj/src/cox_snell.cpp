#include "weibias/cox_snell.hpp"

#include <cmath>

#include "weibias/errors.hpp"
#include "weibias/special_functions.hpp"

namespace weibias {

Matrix2 inverse(const Matrix2& m) {
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double scale = std::abs(m[0][0] * m[1][1]) + std::abs(m[0][1] * m[1][0]);
  if (!(std::abs(det) > 1e-14 * scale) || !std::isfinite(det)) {
    throw SingularityError("inverse: matrix is singular");
  }
  return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

FisherSystem weibull_fisher_complete(const WeibullParams& params, std::size_t n) {
  using constants::euler_gamma;
  using constants::pi;
  using constants::zeta3;
  const double k = params.shape();
  const double l = params.scale();
  const double nn = static_cast<double>(n);
  const double g = euler_gamma;
  const double g1 = g - 1.0;

  FisherSystem s;
  s.n = n;
  s.regime = CensoringRegime::complete;
  s.p = 1.0;
  s.k_matrix = {{{nn * (6.0 * g1 * g1 + pi * pi) / (6.0 * k * k), nn * g1 / l},
                 {nn * g1 / l, nn * k * k / (l * l)}}};

  const double a11 =
      nn * (-12.0 * zeta3 - 3.0 * g * (2.0 * g * (g - 7.0) + pi * pi + 16.0) + 7.0 * pi * pi + 12.0) /
      (12.0 * k * k * k);
  const double a12 = -nn * (6.0 * g * (g - 4.0) + pi * pi + 12.0) / (12.0 * k * l);
  const double a22 = -nn * (g * k + k + g - 1.0) / (2.0 * l * l);
  const double a13 = a12;
  const double a14 = nn * (-g * k + 3.0 * k + g - 1.0) / (2.0 * l * l);
  const double a24 = -nn * (k - 1.0) * k * k / (2.0 * l * l * l);
  s.a_matrix = {{{a11, a12, a13, a14}, {a12, a22, a14, a24}}};
  return s;
}

FisherSystem weibull_fisher_censored(const WeibullParams& params, std::size_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("weibull_fisher_censored: p must lie in (0, 1)");
  const double k = params.shape();
  const double l = params.scale();
  const double nn = static_cast<double>(n);
  const auto gam = inc_gamma_derivs(-std::log1p(-p));
  const double g1 = gam[1];
  const double g2 = gam[2];
  const double g3 = gam[3];

  FisherSystem s;
  s.n = n;
  s.regime = CensoringRegime::censored;
  s.p = p;
  s.k_matrix = {{{nn * (p + 2.0 * g1 + g2) / (k * k), -nn * (p + g1) / l},
                 {-nn * (p + g1) / l, nn * k * k * p / (l * l)}}};

  const double a11 = nn * (2.0 * p + 8.0 * g1 + 7.0 * g2 + g3) / (2.0 * k * k * k);
  const double a12 = -nn * (2.0 * p + 4.0 * g1 + g2) / (2.0 * k * l);
  const double a22 = nn * (g1 * (k + 1.0) - (k - 1.0) * p) / (2.0 * l * l);
  const double a13 = a12;
  const double a14 = nn * ((3.0 * k - 1.0) * p + g1 * (k - 1.0)) / (2.0 * l * l);
  const double a24 = -nn * (k - 1.0) * k * k * p / (2.0 * l * l * l);
  s.a_matrix = {{{a11, a12, a13, a14}, {a12, a22, a14, a24}}};
  return s;
}

Vector2 cox_snell_bias(const Matrix2& k_matrix, const Matrix2x4& a_matrix) {
  const Matrix2 kinv = inverse(k_matrix);
  // Column-major vec: (k^11, k^21, k^12, k^22).
  const std::array<double, 4> vec = {kinv[0][0], kinv[1][0], kinv[0][1], kinv[1][1]};
  Vector2 av{};
  for (int i = 0; i < 2; ++i) {
    for (int c = 0; c < 4; ++c) av[i] += a_matrix[i][c] * vec[c];
  }
  return {kinv[0][0] * av[0] + kinv[0][1] * av[1], kinv[1][0] * av[0] + kinv[1][1] * av[1]};
}

Vector2 cox_snell_bias(const FisherSystem& system) {
  return cox_snell_bias(system.k_matrix, system.a_matrix);
}

}  // namespace weibias
