#include "mirror/yukawa.hpp"

#include "mirror/mirror_maps.hpp"

#include <stdexcept>

namespace mirror {

YukawaShape yukawa_shape(const NVector& Nvec, Family family) {
  if (Nvec.empty()) {
    throw ParameterError("empty N vector");
  }
  YukawaShape shape;
  shape.numerator = 1;
  shape.lambda = 1;
  long d = -1;
  for (unsigned N : Nvec) {
    if (N == 0) {
      throw ParameterError("entries of N must be positive");
    }
    shape.numerator *= N;
    if (family == Family::plain) {
      Integer power;
      mpz_ui_pow_ui(power.get_mpz_t(), N, N);
      shape.lambda *= power;
      d += static_cast<long>(N) - 1;
    } else {
      shape.lambda *= zudilin_data(N).C;
      d += static_cast<long>(euler_phi(N));
    }
  }
  if (d < 0) {
    throw ParameterError("N = " + nvec_to_string(Nvec) + " gives a negative exponent");
  }
  shape.exponent = static_cast<unsigned>(d);
  return shape;
}

TruncSeries canonical_coordinate(const NVector& Nvec, Family family,
                                 std::size_t order) {
  if (family == Family::zudilin) {
    return build_bold_q(Nvec, order).q;
  }
  auto F = build_F(Nvec, Family::plain, order);
  auto base = build_GL(Nvec, 1, Family::plain, order);
  TruncSeries G(order);
  for (unsigned N : Nvec) {
    G = G + Rational(N) * (build_GL(Nvec, N, Family::plain, order) - base);
  }
  return multiply_by_z(exp_of_quotient(G, F, 1, order)).truncated(order);
}

TruncSeries yukawa_K(const NVector& Nvec, std::size_t order, Family family) {
  if (order < 2) {
    throw ParameterError("yukawa_K needs order >= 2");
  }
  const auto shape = yukawa_shape(Nvec, family);
  const auto q = canonical_coordinate(Nvec, family, order);
  const auto z = reversion(q);        // order M
  const auto F = build_F(Nvec, family, order);
  const auto F_of_z = compose(F, z);  // order M
  // q z'(q)/z(q) = z'(q) / (z(q)/q), both of order M - 1.
  const auto log_derivative = derivative(z) / divide_by_z(z);
  const std::size_t out = order - 1;

  auto one_minus = TruncSeries::constant(1, out) -
                   Rational(shape.lambda) * z.truncated(out);
  auto K = Rational(shape.numerator) *
           inverse(one_minus * F_of_z.truncated(out) * F_of_z.truncated(out));
  const auto ld = log_derivative.truncated(out);
  for (unsigned i = 0; i < shape.exponent; ++i) {
    K = K * ld;
  }
  return K;
}

std::vector<Rational> lambert_decompose(const TruncSeries& K) {
  const std::size_t D = K.order();
  std::vector<Rational> k(D);
  for (std::size_t d = 1; d <= D; ++d) {
    k[d - 1] = K[d];
  }
  // k_d = c_d - sum_{e | d, e < d} k_e, in increasing d.
  for (std::size_t e = 1; e <= D; ++e) {
    for (std::size_t d = 2 * e; d <= D; d += e) {
      k[d - 1] -= k[e - 1];
    }
  }
  return k;
}

TruncSeries lambert_synthesize(const std::vector<Rational>& k) {
  const std::size_t D = k.size();
  TruncSeries out(D);
  for (std::size_t e = 1; e <= D; ++e) {
    for (std::size_t d = e; d <= D; d += e) {
      out[d] += k[e - 1];
    }
  }
  return out;
}

YukawaResult instanton_numbers(const NVector& Nvec, std::size_t D, Family family) {
  if (D == 0) {
    throw ParameterError("instanton_numbers needs D >= 1");
  }
  const auto shape = yukawa_shape(Nvec, family);
  if (shape.exponent != 3) {
    throw ParameterError("N = " + nvec_to_string(Nvec) +
                         " is not a threefold (exponent " +
                         std::to_string(shape.exponent) + ")");
  }
  YukawaResult result;
  result.Nvec = Nvec;
  result.family = family;
  result.K = yukawa_K(Nvec, D + 1, family);
  result.k = lambert_decompose(result.K);
  for (std::size_t d = 1; d <= D; ++d) {
    const auto& kd = result.k[d - 1];
    Rational nd = kd / Rational(static_cast<unsigned long>(d * d * d));
    result.n.push_back(nd);
    if (kd.get_den() != 1) {
      result.k_integral = false;
    }
    if (nd.get_den() != 1 && result.n_integral) {
      result.n_integral = false;
      result.first_anomaly = d;
    }
  }
  if (!result.n_integral && Nvec == NVector{5}) {
    throw std::logic_error("quintic instanton number n_" +
                           std::to_string(result.first_anomaly) +
                           " is not an integer");
  }
  return result;
}

const std::vector<NVector>& calabi_yau_vectors() {
  static const std::vector<NVector> vectors = {
      {12},   {5},    {8},       {10},      {3, 3},    {4, 2, 2}, {2, 2, 2, 2},
      {4, 4}, {6, 6}, {4, 3},    {6, 2, 2}, {3, 2, 2}, {3, 6},    {6, 4}};
  return vectors;
}

}  // namespace mirror
