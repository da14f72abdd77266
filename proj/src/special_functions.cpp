#include "weibias/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "weibias/errors.hpp"

namespace weibias {
namespace {

using Vec4 = std::array<double, 4>;

// 15-point Kronrod rule with the embedded 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  Vec4 value;
  double error;
};

// Integrand (log t)^j exp(-t) for j = 0..3.
Vec4 log_power_integrand(double t) {
  const double e = std::exp(-t);
  const double l = std::log(t);
  return {e, l * e, l * l * e, l * l * l * e};
}

Panel kronrod_panel(double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Vec4 kronrod{};
  Vec4 gauss{};
  const Vec4 fc = log_power_integrand(centre);
  for (int j = 0; j < 4; ++j) {
    kronrod[j] = fc[j] * kWgk[7];
    gauss[j] = fc[j] * kWg[3];
  }
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const Vec4 f1 = log_power_integrand(centre - dx);
    const Vec4 f2 = log_power_integrand(centre + dx);
    for (int j = 0; j < 4; ++j) {
      kronrod[j] += kWgk[i] * (f1[j] + f2[j]);
      // Odd Kronrod abscissae coincide with the Gauss nodes.
      if (i % 2 == 1) gauss[j] += kWg[i / 2] * (f1[j] + f2[j]);
    }
  }
  Panel panel{a, b, {}, 0.0};
  for (int j = 0; j < 4; ++j) {
    panel.value[j] = kronrod[j] * half;
    panel.error = std::max(panel.error, std::abs((kronrod[j] - gauss[j]) * half));
  }
  return panel;
}

// Globally adaptive Gauss-Kronrod over [a, b] for the four log-power moments.
Vec4 integrate_log_powers(double a, double b) {
  constexpr double abs_tol = 1e-15;
  constexpr double rel_tol = 1e-14;
  constexpr int max_panels = 2000;

  std::vector<Panel> panels{kronrod_panel(a, b)};
  for (;;) {
    Vec4 total{};
    double error = 0.0;
    for (const auto& p : panels) {
      for (int j = 0; j < 4; ++j) total[j] += p.value[j];
      error += p.error;
    }
    double scale = 0.0;
    for (double v : total) scale = std::max(scale, std::abs(v));
    if (error <= std::max(abs_tol, rel_tol * scale) ||
        static_cast<int>(panels.size()) >= max_panels) {
      return total;
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& l, const Panel& r) { return l.error < r.error; });
    const double mid = 0.5 * (worst->a + worst->b);
    const Panel left = kronrod_panel(worst->a, mid);
    const Panel right = kronrod_panel(mid, worst->b);
    *worst = left;
    panels.push_back(right);
  }
}

// integral_0^a (log t)^j exp(-t) dt for 0 < a <= 1, from the exponential
// series and the closed form
//   integral_0^a t^m (log t)^j dt = a^(m+1) sum_i C(j,i) (-1)^i i! L^(j-i) / (m+1)^(i+1),
// with L = log a.
Vec4 log_power_series(double a, int max_terms) {
  const double log_a = std::log(a);
  Vec4 sum{};
  double coefficient = a;  // (-1)^m a^(m+1) / m!
  for (int m = 0; m < max_terms; ++m) {
    const double s = m + 1.0;
    const double inv_s = 1.0 / s;
    // moments[j] = sum_i C(j,i) (-1)^i i! L^(j-i) / s^(i+1)
    const double l = log_a;
    const double u1 = inv_s;
    const double u2 = inv_s * inv_s;
    const double u3 = u2 * inv_s;
    const double u4 = u3 * inv_s;
    const Vec4 moments = {
        u1,
        l * u1 - u2,
        l * l * u1 - 2.0 * l * u2 + 2.0 * u3,
        l * l * l * u1 - 3.0 * l * l * u2 + 6.0 * l * u3 - 6.0 * u4,
    };
    double largest = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double term = coefficient * moments[j];
      sum[j] += term;
      largest = std::max(largest, std::abs(term) / std::max(std::abs(sum[j]), 1e-300));
    }
    if (m > 2 && largest < 1e-18) break;
    coefficient *= -a / s;
  }
  return sum;
}

void require_order(int j) {
  if (j < 0 || j > 3) {
    throw DomainError("inc_gamma_deriv: order must be in 0..3, got " + std::to_string(j));
  }
}

void require_positive_finite(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument must be positive and finite");
  }
}

}  // namespace

std::array<double, 4> inc_gamma_derivs(double x) {
  require_positive_finite(x, "inc_gamma_deriv");
  // Below 1e-8 the first two series terms are exact to working precision.
  const int terms = x < 1e-8 ? 2 : 64;
  Vec4 result = log_power_series(std::min(x, 1.0), terms);
  if (x > 1.0) {
    const Vec4 tail = integrate_log_powers(1.0, x);
    for (int j = 0; j < 4; ++j) result[j] += tail[j];
  }
  result[0] = -std::expm1(-x);
  return result;
}

double inc_gamma_deriv(int j, double x) {
  require_order(j);
  require_positive_finite(x, "inc_gamma_deriv");
  if (j == 0) return -std::expm1(-x);
  return inc_gamma_derivs(x)[j];
}

namespace {

// E1(x) for x > 0.
double exponential_integral_e1(double x) {
  constexpr double eps = 1e-17;
  constexpr int max_iter = 1000;
  if (x > 745.0) return 0.0;
  if (x <= 1.0) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= max_iter; ++k) {
      term *= -x / k;
      const double delta = -term / k;
      sum += delta;
      if (std::abs(delta) < std::abs(sum) * eps) break;
    }
    return -constants::euler_gamma - std::log(x) + sum;
  }
  // Modified Lentz evaluation of the continued fraction
  // E1(x) = exp(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))).
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= max_iter; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 4.0 * std::numeric_limits<double>::epsilon()) break;
  }
  return h * std::exp(-x);
}

}  // namespace

double exp_integral_ei(double z) {
  if (!(z < 0.0) || !std::isfinite(z)) {
    throw DomainError("exp_integral_ei: only negative finite arguments are supported");
  }
  return -exponential_integral_e1(-z);
}

double log_gamma(double x) {
  if (!(x > 0.0) || std::isnan(x)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

namespace {

constexpr int kGammaMaxIter = 100000;
constexpr double kGammaEps = 1e-16;

void require_gamma_domain(double s, double x, const char* who) {
  if (!(s > 0.0) || !std::isfinite(s) || !(x >= 0.0) || std::isnan(x)) {
    throw DomainError(std::string(who) + ": requires s > 0 and x >= 0");
  }
}

// Series sum for gamma(s, x) * exp(x) * x^-s; used for x < s + 1.
double lower_series(double s, double x) {
  double ap = s;
  double del = 1.0 / s;
  double sum = del;
  for (int n = 0; n < kGammaMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kGammaEps) break;
  }
  return sum;
}

// Continued fraction for Gamma(s, x) * exp(x) * x^-s; used for x >= s + 1.
double upper_fraction(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kGammaMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 4.0 * std::numeric_limits<double>::epsilon()) break;
  }
  return h;
}

}  // namespace

double regularized_lower_gamma(double s, double x) {
  require_gamma_domain(s, x, "regularized_lower_gamma");
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return lower_series(s, x) * std::exp(-x + s * std::log(x) - std::lgamma(s));
  return 1.0 - std::exp(-x + s * std::log(x) - std::lgamma(s)) * upper_fraction(s, x);
}

double regularized_upper_gamma(double s, double x) {
  require_gamma_domain(s, x, "regularized_upper_gamma");
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) {
    return 1.0 - lower_series(s, x) * std::exp(-x + s * std::log(x) - std::lgamma(s));
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * upper_fraction(s, x);
}

double lower_inc_gamma(double s, double x) {
  require_gamma_domain(s, x, "lower_inc_gamma");
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return lower_series(s, x) * std::exp(-x + s * std::log(x));
  return std::tgamma(s) - upper_inc_gamma(s, x);
}

double upper_inc_gamma(double s, double x) {
  require_gamma_domain(s, x, "upper_inc_gamma");
  if (x == 0.0) return std::tgamma(s);
  if (x < s + 1.0) return std::tgamma(s) - lower_inc_gamma(s, x);
  const double log_prefactor = -x + s * std::log(x);
  if (log_prefactor < -745.0) return 0.0;
  return std::exp(log_prefactor) * upper_fraction(s, x);
}

}  // namespace weibias
