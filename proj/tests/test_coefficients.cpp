#include "doctest.h"

#include "mirror/coefficients.hpp"

#include <numeric>
#include <random>

using namespace mirror;

namespace {

Integer binomial(unsigned long n, unsigned long k) {
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return c;
}

// Oracle: multinomial (Nm)!/m!^N as a product of binomials.
Integer multinomial(unsigned N, unsigned long m) {
  Integer out = 1;
  for (unsigned j = 1; j <= N; ++j) {
    out *= binomial(j * m, m);
  }
  return out;
}

const std::vector<NVector> kCalabiYau = {
    {5},    {10},   {2, 2, 2, 2}, {3, 3},   {2, 4}, {3, 2, 2}, {4, 4},
    {6, 6}, {2, 6}, {6, 4},       {6, 3},   {6, 2}, {4, 3},    {4, 2}};

}  // namespace

TEST_CASE("plain coefficients") {
  for (unsigned N = 1; N <= 6; ++N) {
    CHECK(bN(N, 0) == 1);
    CHECK(bN(N, 1) == factorial(N));
  }
  CHECK(bN(2, 3) == 20);
  for (unsigned N = 1; N <= 7; ++N) {
    auto table = bN_table(N, 25);
    for (unsigned long m = 0; m <= 25; ++m) {
      REQUIRE(table[m] == multinomial(N, m));
      REQUIRE(bN(N, m) == table[m]);
      for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
        REQUIRE(vp_bN(N, m, p) == vp_int(table[m], p).value());
      }
    }
  }
  CHECK(bVec({5}, 1) == 120);
  CHECK(bVec({2, 2}, 2) == 36);
}

TEST_CASE("plain products are divisible by M") {
  for (const auto& v : std::vector<NVector>{{5}, {2, 2}, {3, 4}, {6, 2, 2}, {7}}) {
    Integer M = capital_M(v);
    for (unsigned long m = 1; m <= 50; ++m) {
      REQUIRE(mpz_divisible_p(bVec(v, m).get_mpz_t(), M.get_mpz_t()));
    }
  }
}

TEST_CASE("zudilin data") {
  auto d6 = zudilin_data(6);
  CHECK(d6.alpha == std::vector<unsigned>{6, 1});
  CHECK(d6.beta == std::vector<unsigned>{3, 2, 1, 1});
  CHECK(d6.residues == std::vector<unsigned>{1, 5});
  CHECK(d6.phi == 2);

  auto d30 = zudilin_data(30);
  CHECK(d30.alpha == std::vector<unsigned>{30, 5, 3, 2});
  std::vector<unsigned> b30 = {15, 10, 6};
  b30.insert(b30.end(), 9, 1u);
  CHECK(d30.beta == b30);

  auto d4 = zudilin_data(4);
  CHECK(d4.alpha == std::vector<unsigned>{4});
  CHECK(d4.beta == std::vector<unsigned>{2, 1, 1});
  CHECK(d4.C == 64);

  auto d1 = zudilin_data(1);
  CHECK(d1.phi == 1);
  CHECK(d1.residues == std::vector<unsigned>{1});
  CHECK(d1.C == 1);
  CHECK(d1.alpha == std::vector<unsigned>{1});
  CHECK(d1.beta == std::vector<unsigned>{1});
  CHECK_THROWS_AS(zudilin_data(0), ParameterError);
}

TEST_CASE("zudilin data invariants") {
  for (unsigned N = 1; N <= 210; ++N) {
    auto d = compute_zudilin_data(N);
    REQUIRE(std::accumulate(d.alpha.begin(), d.alpha.end(), 0u) ==
            std::accumulate(d.beta.begin(), d.beta.end(), 0u));
    for (auto a : d.alpha) {
      REQUIRE(N % a == 0);
    }
    for (auto b : d.beta) {
      REQUIRE(N % b == 0);
    }
    // Independent phi and C from the residue list.
    REQUIRE(d.residues.size() == d.phi);
    Integer c;
    mpz_ui_pow_ui(c.get_mpz_t(), N, d.phi);
    for (unsigned p = 2; p <= N; ++p) {
      if (N % p == 0 && is_prime(p)) {
        Integer pw;
        REQUIRE(d.phi % (p - 1) == 0);
        mpz_ui_pow_ui(pw.get_mpz_t(), p, d.phi / (p - 1));
        c *= pw;
      }
    }
    REQUIRE(d.C == c);
  }
}

TEST_CASE("bold coefficients in both representations") {
  CHECK(bbN(4, 1, BoldMode::factorial) == 12);
  CHECK(bbN(4, 1, BoldMode::pochhammer) == 12);
  CHECK(bbVec({6}, 1) == 60);
  for (unsigned long m = 0; m <= 30; ++m) {
    REQUIRE(bbN(5, m, BoldMode::factorial) == Rational(bN(5, m)));
    REQUIRE(bbN(5, m, BoldMode::pochhammer) == Rational(bN(5, m)));
  }
  auto v = bbVec({7, 5}, 2);
  CHECK(v == bbN_int(7, 2) * bbN_int(5, 2));
  CHECK(v > 0);
  for (unsigned long m = 0; m <= 20; ++m) {
    REQUIRE(bbN(1, m, BoldMode::factorial) == 1);
  }
}

TEST_CASE("bold coefficient modes agree for N <= 30, m <= 40") {
  for (unsigned N = 1; N <= 30; ++N) {
    auto table = bbN_table(N, 40);
    for (unsigned long m = 0; m <= 40; ++m) {
      auto f = bbN(N, m, BoldMode::factorial);
      REQUIRE(is_integral(f));
      REQUIRE(f == bbN(N, m, BoldMode::pochhammer));
      REQUIRE(f == Rational(table[m]));
    }
  }
}

TEST_CASE("bold products divisible by their first coefficient") {
  for (const auto& v : kCalabiYau) {
    Integer first = bbVec(v, 1);
    CoefficientSequence seq(Family::zudilin, v);
    for (long m = 1; m <= 60; ++m) {
      REQUIRE(mpz_divisible_p(seq.at(m).get_mpz_t(), first.get_mpz_t()));
    }
  }
}

TEST_CASE("bold H in both representations") {
  for (unsigned long m = 0; m <= 10; ++m) {
    CHECK(hN(1, m, HMode::residues) == 0);
    CHECK(hN(1, m, HMode::alphabeta) == 0);
  }
  for (unsigned N = 1; N <= 30; ++N) {
    CHECK(hN(N, 0, HMode::residues) == 0);
    for (unsigned long m = 0; m <= 40; ++m) {
      REQUIRE(hN(N, m, HMode::residues) == hN(N, m, HMode::alphabeta));
    }
  }
}

TEST_CASE("shifted-harmonic sum identity") {
  for (unsigned N = 1; N <= 20; ++N) {
    for (unsigned long m = 0; m <= 40; ++m) {
      Rational lhs = 0;
      for (unsigned j = 1; j < N; ++j) {
        lhs += harmonic_shifted(make_rational(j, N), m);
      }
      lhs -= harmonic(m) * (N - 1);
      Rational rhs = (harmonic(N * m) - harmonic(m)) * N;
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("normalized ratio leaves values unchanged") {
  for (unsigned N = 1; N <= 60; ++N) {
    const auto& d = zudilin_data(N);
    FactorialRatio raw{d.alpha, d.beta};
    auto reduced = normalized_ratio(d);
    for (unsigned long m = 0; m <= 12; ++m) {
      REQUIRE(factorial_ratio(raw, m) == factorial_ratio(reduced, m));
      REQUIRE(vp_factorial_ratio(raw, m, 3) == vp_factorial_ratio(reduced, m, 3));
    }
    for (long num = 0; num < 3 * static_cast<long>(N); ++num) {
      auto x = make_rational(num, 2 * N + 1);
      REQUIRE(delta(raw, x) == delta(reduced, x));
    }
  }
  auto r6 = normalized_ratio(zudilin_data(6));
  CHECK(r6.alpha == std::vector<unsigned>{6});
  CHECK(r6.beta == std::vector<unsigned>{3, 2, 1});
}

TEST_CASE("delta step function") {
  CHECK(delta(2, make_rational(1, 2)) == 1);
  for (unsigned N = 1; N <= 30; ++N) {
    for (long n = -3; n <= 3; ++n) {
      REQUIRE(delta(N, n) == 0);
    }
    for (unsigned r = 1; r <= N; ++r) {
      if (std::gcd(r, N) == 1 && N > 1) {
        REQUIRE(delta(N, make_rational(r, N)) >= 1);
      }
    }
  }
}

TEST_CASE("delta is nonnegative, periodic and weakly increasing") {
  for (unsigned N = 1; N <= 60; ++N) {
    const long grid = 240;
    long previous = 0;
    for (long i = 0; i < grid; ++i) {
      auto x = make_rational(i, grid);
      long value = delta(N, x);
      REQUIRE(value >= 0);
      REQUIRE(value >= previous);
      REQUIRE(delta(N, x + 1) == value);
      REQUIRE(delta(N, x - 2) == value);
      previous = value;
    }
  }
}

TEST_CASE("multiplicative block property of B_N") {
  std::mt19937_64 rng(2024);
  const std::vector<unsigned long> primes = {2, 3, 5, 7, 11, 13};
  for (int trial = 0; trial < 300; ++trial) {
    unsigned N = 1 + rng() % 8;
    unsigned long p = primes[rng() % primes.size()];
    unsigned long s = 1 + rng() % 2;
    unsigned long ps = s == 1 ? p : p * p;
    unsigned long u = rng() % ps;
    unsigned long n = rng() % 6;
    Rational ratio = make_rational(bN(N, u + n * ps), bN(N, u) * bN(N, n));
    REQUIRE(vp_rat(ratio, p) >= Valuation(0));
  }
}

TEST_CASE("bold block property") {
  std::mt19937_64 rng(77);
  const std::vector<unsigned long> primes = {2, 3, 5, 7, 11, 13};
  for (int trial = 0; trial < 300; ++trial) {
    const auto& v = kCalabiYau[rng() % kCalabiYau.size()];
    unsigned long p = primes[rng() % primes.size()];
    unsigned long r = 1 + rng() % 2;
    unsigned long pr = r == 1 ? p : p * p;
    unsigned long w = rng() % pr;
    unsigned long m = rng() % 5;
    Rational ratio = make_rational(bbVec(v, w + m * pr), bbVec(v, m));
    REQUIRE(vp_rat(ratio, p) >= Valuation(0));
  }
}

TEST_CASE("coefficient sequences") {
  CoefficientSequence plain(Family::plain, {2, 3});
  CHECK(plain.at(-1) == 0);
  CHECK(plain.at(-7) == 0);
  for (long m = 0; m <= 40; ++m) {
    REQUIRE(plain.at(m) == bVec({2, 3}, m));
  }
  CHECK(plain.vp(10, 3) == vp_int(bVec({2, 3}, 10), 3).value());
  CoefficientSequence bold(Family::zudilin, {6, 4});
  for (long m = 0; m <= 40; ++m) {
    REQUIRE(bold.at(m) == bbVec({6, 4}, m));
  }
  CHECK(bold.vp(7, 5) == vp_int(bbVec({6, 4}, 7), 5).value());
  CHECK_THROWS_AS(CoefficientSequence(Family::plain, {}), ParameterError);
  CHECK_THROWS_AS(CoefficientSequence(Family::plain, {0}), ParameterError);
}

TEST_CASE("M, divisor vectors and N-vector text") {
  CHECK(capital_M({5}) == 120);
  CHECK(capital_M({2, 2, 2, 2}) == 16);
  CHECK(capital_M({12, 6, 4, 3, 2}) ==
        factorial(12) * factorial(6) * factorial(4) * factorial(3) * factorial(2));
  CHECK(divisor_vector(9) == NVector{9, 3});
  CHECK(divisor_vector(12) == NVector{12, 6, 4, 3, 2});
  CHECK(divisor_vector(35) == NVector{35, 7, 5});
  CHECK(parse_nvec("(6,4)") == NVector{6, 4});
  CHECK(parse_nvec("5") == NVector{5});
  CHECK(nvec_to_string({2, 2}) == "(2,2)");
  CHECK_THROWS_AS(parse_nvec("2,x"), ParameterError);
  CHECK_THROWS_AS(parse_nvec(""), ParameterError);
}
