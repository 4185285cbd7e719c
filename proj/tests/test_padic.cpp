#include "doctest.h"

#include "mirror/padic.hpp"

#include <cmath>

using namespace mirror;

namespace {

// Oracle: count factors by repeated division.
long count_factor(Integer n, unsigned long p) {
  long e = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

Rational naive_harmonic(unsigned long n) {
  Rational s = 0;
  for (unsigned long j = 1; j <= n; ++j) {
    s += Rational(1, j);
  }
  s.canonicalize();
  return s;
}

}  // namespace

TEST_CASE("rationals are canonical") {
  auto q = make_rational(6, -4);
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK(make_rational(0, 7).get_den() == 1);
  CHECK_THROWS_AS(make_rational(1, 0), ParameterError);
  CHECK(parse_rational("10/-4") == make_rational(-5, 2));
  CHECK(parse_rational("17") == 17);
  CHECK_THROWS_AS(parse_rational("1/x"), ParameterError);
}

TEST_CASE("valuation ordering treats infinity as largest") {
  auto inf = Valuation::infinity();
  CHECK(Valuation(1000000) < inf);
  CHECK(inf == inf);
  CHECK((inf + Valuation(3)).is_infinite());
  CHECK_THROWS(inf.value());
  CHECK(Valuation(-2).to_string() == "-2");
}

TEST_CASE("vp_int examples") {
  CHECK(vp_int(12, 2) == Valuation(2));
  CHECK(vp_int(879, 3) == Valuation(1));
  CHECK(vp_int(1, 7) == Valuation(0));
  CHECK(vp_int(0, 5).is_infinite());
  CHECK_THROWS_AS(vp_int(10, 4), ParameterError);
}

TEST_CASE("vp_rat examples") {
  CHECK(vp_rat(make_rational(25, 12), 5) == Valuation(2));
  CHECK(vp_rat(make_rational(3, 2), 2) == Valuation(-1));
  CHECK(vp_rat(1, 11) == Valuation(0));
  CHECK(vp_rat(0, 3).is_infinite());
}

TEST_CASE("membership in c Z_p accepts zero") {
  CHECK(in_padic_ideal(0, make_rational(1, 9), 3));
  CHECK(in_padic_ideal(make_rational(9, 2), 3, 3));
  CHECK_FALSE(in_padic_ideal(make_rational(1, 3), 1, 3));
}

TEST_CASE("legendre formula") {
  CHECK(legendre_vp_factorial(100, 5) == 24);
  CHECK(legendre_vp_factorial(0, 7) == 0);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    Integer f = 1;
    for (unsigned long n = 0; n <= 200; ++n) {
      if (n > 0) {
        f *= n;
      }
      REQUIRE(legendre_vp_factorial(n, p) == count_factor(f, p));
    }
  }
}

TEST_CASE("legendre formula matches per-factor counting up to 10^4") {
  for (auto p : primes_up_to(100)) {
    long running = 0;
    for (unsigned long n = 1; n <= 10000; ++n) {
      unsigned long m = n;
      while (m % p == 0) {
        m /= p;
        ++running;
      }
      if (n % 997 == 0 || n == 10000) {
        REQUIRE(legendre_vp_factorial(n, p) == running);
      }
    }
  }
}

TEST_CASE("primes and factorization") {
  CHECK(primes_up_to(30) ==
        std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(is_prime(16843));
  CHECK_FALSE(is_prime(1));
  CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
  auto f = factorize(Integer(-720));
  REQUIRE(f.size() == 3);
  CHECK(f[0].first == 2);
  CHECK(f[0].second == 4);
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(4) == make_rational(25, 12));
  CHECK(harmonic(5) == make_rational(137, 60));
  CHECK(harmonic(0) == 0);
  CHECK(harmonic(300) == naive_harmonic(300));
  CHECK(reciprocal_sum(5, 4) == 0);
  CHECK(reciprocal_sum(3, 9) == naive_harmonic(9) - naive_harmonic(2));
}

TEST_CASE("harmonic beyond the cache bound") {
  auto saved = harmonic_cache_bound();
  set_harmonic_cache_bound(50);
  Rational beyond = harmonic(120);
  set_harmonic_cache_bound(saved);
  CHECK(beyond == naive_harmonic(120));
}

TEST_CASE("shifted and power harmonic sums") {
  for (unsigned m = 0; m < 20; ++m) {
    CHECK(harmonic_shifted(1, m) == harmonic(m));
  }
  CHECK(harmonic_shifted(make_rational(3, 7), 0) == 0);
  CHECK(harmonic_shifted(make_rational(1, 2), 2) == make_rational(8, 3));
  CHECK_THROWS_AS(harmonic_shifted(0, 3), ParameterError);
  CHECK_THROWS_AS(harmonic_shifted(-1, 3), ParameterError);
  CHECK(harmonic_power(9, 1) == harmonic(9));
  CHECK(harmonic_power(2, 2) == make_rational(5, 4));
  auto h = harmonic_power(6, 2);
  CHECK(h == make_rational(5369, 3600));
  CHECK(vp_rat(h, 7) == Valuation(1));
}

TEST_CASE("2-adic valuation of H_L is -floor(log2 L)") {
  for (unsigned long L = 1; L <= 10000; ++L) {
    long expected = 0;
    while ((2ul << expected) <= L) {
      ++expected;
    }
    REQUIRE(vp_rat(harmonic(L), 2) == Valuation(-expected));
  }
}

TEST_CASE("positive 3- and 5-adic valuations of H_L on an exact prefix") {
  // The full range to 10^5 is covered by the scanner tests.
  std::vector<unsigned long> hits3, hits5;
  for (unsigned long L = 1; L <= 3000; ++L) {
    auto h = harmonic(L);
    if (vp_rat(h, 3) > Valuation(0)) {
      hits3.push_back(L);
    }
    if (vp_rat(h, 5) > Valuation(0)) {
      hits5.push_back(L);
    }
  }
  CHECK(hits3 == std::vector<unsigned long>{2, 7, 22});
  CHECK(hits5 == std::vector<unsigned long>{4, 20, 24});
}

TEST_CASE("Wolstenholme-type congruence for H_{p-1}") {
  for (auto p : primes_up_to(100)) {
    if (p < 5) {
      continue;
    }
    Rational lhs = harmonic(p - 1);
    Rational rhs = -make_rational(p, 2) * harmonic_power(p - 1, 2);
    Integer p3 = Integer(p) * p * p;
    CHECK(in_padic_ideal(lhs - rhs, Rational(p3), p));
  }
}

TEST_CASE("p-adic gamma") {
  CHECK(gamma_p(1, 3) == -1);
  CHECK(gamma_p(5, 5) == -24);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    for (unsigned long n = 1; n <= 20; ++n) {
      Rational lhs = make_rational(factorial(n * p), factorial(n));
      Integer pn;
      mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
      Integer rhs = pn * gamma_p(1 + n * p, p);
      if ((n * p + 1) % 2 == 1) {
        rhs = -rhs;
      }
      REQUIRE(lhs == Rational(rhs));
    }
  }
}

TEST_CASE("p-adic gamma is locally constant for odd p") {
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    for (unsigned long s = 1; s <= 2; ++s) {
      unsigned long ps = s == 1 ? p : p * p;
      for (unsigned long k = 1; k <= 12; ++k) {
        for (unsigned long n = 1; n <= 4; ++n) {
          Integer diff = gamma_p(k + n * ps, p) - gamma_p(k, p);
          REQUIRE(vp_int(diff, p) >= Valuation(static_cast<long>(s)));
        }
      }
    }
  }
}

TEST_CASE("p-adic gamma at p = 2 breaks local constancy only for s = 2") {
  // Gamma_2(6) = 15 and Gamma_2(2) = 1 differ by 14, which is not 0 mod 4.
  CHECK(gamma_p(6, 2) == 15);
  CHECK(gamma_p(2, 2) == 1);
  for (unsigned long s : {1ul, 3ul, 4ul}) {
    unsigned long ps = 1ul << s;
    for (unsigned long k = 1; k <= 12; ++k) {
      for (unsigned long n = 1; n <= 4; ++n) {
        Integer diff = gamma_p(k + n * ps, 2) - gamma_p(k, 2);
        REQUIRE(vp_int(diff, 2) >= Valuation(static_cast<long>(s)));
      }
    }
  }
}

TEST_CASE("theta: denominator of H_L") {
  CHECK(theta(2) == 2);
  CHECK(theta(5) == 60);
  for (unsigned long L = 1; L <= 500; ++L) {
    REQUIRE(theta(L) == theta_by_valuations(L));
    REQUIRE(theta(L) == harmonic(L).get_den());
  }
}
