#pragma once

/**
 * @file yukawa.hpp
 * @brief Yukawa coupling of a hypergeometric family and its instanton numbers.
 *
 * With z(q) the compositional inverse of the canonical coordinate q(z),
 *   K(q) = (prod N_j) / (1 - lambda z(q)) * F(z(q))^{-2} * (q z'(q)/z(q))^d,
 * where lambda = z-coefficient growth constant of the family and d is the
 * order of the differential equation minus one. Writing
 * K = K(0) + sum_d k_d q^d/(1 - q^d), the instanton numbers are k_d/d^3
 * when d = 3.
 */

#include "mirror/coefficients.hpp"
#include "mirror/series.hpp"

#include <cstddef>
#include <vector>

namespace mirror {

/// lambda and the exponent d of the Yukawa formula.
/// plain:   lambda = prod N_j^{N_j}, d = sum N_j - k - 1.
/// zudilin: lambda = prod C_{N_j},   d = sum phi(N_j) - 1.
struct YukawaShape {
  Integer numerator;
  Integer lambda;
  unsigned exponent = 0;
};
YukawaShape yukawa_shape(const NVector& Nvec, Family family);

/// The canonical coordinate z exp(G/F) the coupling is built from; for the
/// plain family G = sum_j N_j (H_{N_j m} - H_m) B(m).
TruncSeries canonical_coordinate(const NVector& Nvec, Family family,
                                 std::size_t order);

/// K(q) through q^{order-1}: differentiating z(q) costs one order, which is
/// also the order of the returned series.
TruncSeries yukawa_K(const NVector& Nvec, std::size_t order,
                     Family family = Family::plain);

/// k_1 .. k_D from K through order D; entry d - 1 holds k_d.
std::vector<Rational> lambert_decompose(const TruncSeries& K);

/// sum k_d q^d/(1 - q^d) through order D (constant term 0).
TruncSeries lambert_synthesize(const std::vector<Rational>& k);

struct YukawaResult {
  NVector Nvec;
  Family family = Family::plain;
  TruncSeries K;
  std::vector<Rational> k;  // k_1 .. k_D
  std::vector<Rational> n;  // k_d / d^3
  /// Every k_d and n_d an integer.
  bool k_integral = true;
  bool n_integral = true;
  /// First d with non-integral n_d, if any.
  std::size_t first_anomaly = 0;
};

/// Instanton numbers n_1 .. n_D; needs D >= 1 and the threefold condition
/// d = 3 (ParameterError otherwise). Anomalies are reported in the result,
/// except for the quintic, where a non-integral n_d throws std::logic_error.
YukawaResult instanton_numbers(const NVector& Nvec, std::size_t D,
                               Family family = Family::plain);

/// The fourteen vectors whose bold maps come from Calabi-Yau threefolds.
const std::vector<NVector>& calabi_yau_vectors();

}  // namespace mirror
