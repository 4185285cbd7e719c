#include "doctest.h"

#include "mirror/mirror_maps.hpp"
#include "mirror/yukawa.hpp"

#include <random>

using namespace mirror;

namespace {

// Naive truncated product, independent of the library's operators.
std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(std::min(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      out[i] += a[j] * b[i - j];
    }
  }
  return out;
}

std::vector<Rational> recip(const std::vector<Rational>& a) {
  std::vector<Rational> out(a.size());
  out[0] = 1 / a[0];
  for (std::size_t i = 1; i < a.size(); ++i) {
    Rational acc;
    for (std::size_t j = 1; j <= i; ++j) {
      acc += a[j] * out[i - j];
    }
    out[i] = -acc / a[0];
  }
  return out;
}

std::vector<Rational> substitute(const std::vector<Rational>& outer,
                                 const std::vector<Rational>& inner) {
  std::vector<Rational> out(inner.size()), power(inner.size());
  power[0] = 1;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] += outer[i] * power[j];
    }
    power = mul(power, inner);
  }
  return out;
}

// K(q) = Y(z(q)) with Y(z) = c / ((1 - lambda z) F^2 (theta log q)^d) formed
// in the z variable, and z(q) found by fixed-point iteration of
// z = q - sum_{j >= 2} q_j z^j.
std::vector<Rational> oracle_K(const NVector& Nvec, Family family, std::size_t M) {
  auto shape = yukawa_shape(Nvec, family);
  auto q = canonical_coordinate(Nvec, family, M).coeffs();
  auto F = build_F(Nvec, family, M).coeffs();
  // theta log q = 1 + z (q/z)' / (q/z).
  std::vector<Rational> u(q.begin() + 1, q.end());
  std::vector<Rational> zdu(u.size());
  for (std::size_t i = 1; i < u.size(); ++i) {
    zdu[i] = u[i] * static_cast<unsigned long>(i);
  }
  auto tl = mul(zdu, recip(u));
  tl[0] += 1;
  std::vector<Rational> den(u.size(), Rational(0));
  den[0] = 1;
  den[1] = -Rational(shape.lambda);
  den = mul(den, mul(F, F));
  for (unsigned i = 0; i < shape.exponent; ++i) {
    den = mul(den, tl);
  }
  auto Y = recip(den);
  for (auto& c : Y) {
    c *= Rational(shape.numerator);
  }
  std::vector<Rational> z(M + 1), tail(q);
  tail[0] = tail[1] = 0;
  for (std::size_t it = 0; it <= M; ++it) {
    auto next = substitute(tail, z);
    for (auto& c : next) {
      c = -c;
    }
    next[1] += 1;
    z = next;
  }
  std::vector<Rational> zs(z.begin(), z.begin() + static_cast<long>(M));
  return substitute(Y, zs);
}

}  // namespace

TEST_CASE("quintic coupling") {
  auto K = yukawa_K({5}, 12);
  CHECK(K.order() == 11);
  CHECK(K[0] == 5);
  for (const auto& c : K.coeffs()) {
    REQUIRE(c.get_den() == 1);
  }
  auto r = instanton_numbers({5}, 5);
  CHECK(r.k_integral);
  CHECK(r.n_integral);
  CHECK(r.n[0] == 2875);
  CHECK(r.n[1] == 609250);
}

TEST_CASE("coupling agrees with the z-side oracle") {
  for (const NVector& v : {NVector{5}, NVector{3, 3}, NVector{4, 2}, NVector{2, 2, 2, 2},
                           NVector{6}, NVector{2}}) {
    auto K = yukawa_K(v, 10);
    auto oracle = oracle_K(v, Family::plain, 10);
    for (std::size_t i = 0; i <= K.order(); ++i) {
      REQUIRE(K[i] == oracle[i]);
    }
  }
  for (const NVector& v : {NVector{8}, NVector{6, 4}, NVector{12}}) {
    auto K = yukawa_K(v, 8, Family::zudilin);
    auto oracle = oracle_K(v, Family::zudilin, 8);
    for (std::size_t i = 0; i <= K.order(); ++i) {
      REQUIRE(K[i] == oracle[i]);
    }
  }
}

TEST_CASE("truncation stability") {
  for (const NVector& v : {NVector{5}, NVector{3, 3}}) {
    auto a = yukawa_K(v, 20), b = yukawa_K(v, 30);
    for (std::size_t i = 0; i <= a.order(); ++i) {
      REQUIRE(a[i] == b[i]);
    }
  }
  auto small = instanton_numbers({5}, 7), large = instanton_numbers({5}, 11);
  for (std::size_t d = 0; d < 5; ++d) {
    CHECK(small.n[d] == large.n[d]);
    CHECK(small.n[d].get_den() == 1);
  }
}

TEST_CASE("K(0) is the product of the entries") {
  for (const auto& v : calabi_yau_vectors()) {
    Rational prod = 1;
    for (unsigned N : v) {
      prod *= N;
    }
    REQUIRE(yukawa_K(v, 3, Family::zudilin)[0] == prod);
    REQUIRE(yukawa_K(v, 3, Family::plain)[0] == prod);
  }
}

TEST_CASE("threefold instanton numbers") {
  auto r = instanton_numbers({3, 3}, 4);
  CHECK(r.n_integral);
  CHECK(r.n[0] == 1053);
  for (const NVector& v : {NVector{4, 2}, NVector{3, 2, 2}, NVector{2, 2, 2, 2}}) {
    CHECK(instanton_numbers(v, 5).n_integral);
  }
  CHECK_THROWS_AS(instanton_numbers({6}, 3), ParameterError);
  CHECK_THROWS_AS(instanton_numbers({2}, 3), ParameterError);
  CHECK_THROWS_AS(instanton_numbers({5}, 0), ParameterError);
  CHECK_THROWS_AS(yukawa_K({5}, 1), ParameterError);
}

TEST_CASE("reversion inside the pipeline") {
  auto q = canonical_coordinate({5}, Family::plain, 15);
  auto z = reversion(q);
  CHECK(compose(q, z) == TruncSeries::variable(15));
  CHECK(q == build_qN(5, 1, 15).q);
}

TEST_CASE("Lambert decomposition") {
  TruncSeries K(6);
  K[0] = 5;
  for (std::size_t i = 1; i <= 6; ++i) {
    K[i] = 1;
  }
  auto k = lambert_decompose(K);
  CHECK(k == std::vector<Rational>{1, 0, 0, 0, 0, 0});
  TruncSeries K2(2);
  K2[0] = 5;
  K2[1] = 1;
  K2[2] = 2;
  CHECK(lambert_decompose(K2) == std::vector<Rational>{1, 1});
  auto quintic = yukawa_K({5}, 12);
  auto rebuilt = lambert_synthesize(lambert_decompose(quintic));
  for (std::size_t i = 1; i <= quintic.order(); ++i) {
    REQUIRE(rebuilt[i] == quintic[i]);
  }
}

TEST_CASE("Lambert inversion inverts synthesis") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> k(30);
    for (auto& c : k) {
      c = dist(rng);
    }
    REQUIRE(lambert_decompose(lambert_synthesize(k)) == k);
  }
}
