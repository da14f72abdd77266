#pragma once

// First-order bias of two-parameter ML estimates in the Cordeiro-Klein
// matrix form
//
//     Bias(theta_hat) = K^-1 A vec(K^-1),
//
// where K is the expected information and A = [A(1) | A(2)] collects
// a(l)_ij = d kappa_ij / d theta_l - kappa_ijl / 2. Column j of block l of A
// sits at column 2 (l - 1) + j; vec stacks K^-1 column by column.

#include <array>
#include <cstddef>

#include "weibias/weibull.hpp"

namespace weibias {

using Matrix2 = std::array<std::array<double, 2>, 2>;
using Matrix2x4 = std::array<std::array<double, 4>, 2>;
using Vector2 = std::array<double, 2>;

enum class CensoringRegime { complete, censored };

struct FisherSystem {
  Matrix2 k_matrix{};
  Matrix2x4 a_matrix{};
  std::size_t n = 0;
  CensoringRegime regime = CensoringRegime::complete;
  double p = 1.0;  // uncensored proportion; 1 for complete data
};

/// Throws SingularityError when K is numerically singular.
Matrix2 inverse(const Matrix2& m);

/// Parameter order (k, lambda).
FisherSystem weibull_fisher_complete(const WeibullParams& params, std::size_t n);
FisherSystem weibull_fisher_censored(const WeibullParams& params, std::size_t n, double p);

Vector2 cox_snell_bias(const Matrix2& k_matrix, const Matrix2x4& a_matrix);
Vector2 cox_snell_bias(const FisherSystem& system);

}  // namespace weibias
