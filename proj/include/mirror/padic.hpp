#pragma once

/**
 * @file padic.hpp
 * @brief Exact rationals, p-adic valuations and harmonic-number primitives.
 *
 * Integers and rationals are GMP values. `Rational` is always kept in
 * canonical form (reduced, positive denominator, zero is 0/1); every
 * constructor in this library canonicalizes before returning.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirror {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when an argument violates an operation's precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds num/den in canonical form. Throws ParameterError on den == 0.
Rational make_rational(const Integer& num, const Integer& den = 1);

/// Parses "a/b" or "a" (decimal) into a canonical rational.
Rational parse_rational(const std::string& text);

bool is_integral(const Rational& q);

/**
 * p-adic valuation: a signed integer, or +infinity for the valuation of 0.
 *
 * Ordering treats +infinity as larger than every finite value, so the
 * membership test "x in c Z_p" reads `vp(x) >= vp(c)` even when x == 0.
 */
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(long value) : value_(value), infinite_(false) {}

  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws std::logic_error on +infinity.
  long value() const;

  friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Valuation& a,
                                                    const Valuation& b) {
    if (a.infinite_ || b.infinite_) {
      return a.infinite_ <=> b.infinite_;
    }
    return a.value_ <=> b.value_;
  }

  friend Valuation operator+(const Valuation& a, const Valuation& b);
  friend Valuation operator-(const Valuation& a, const Valuation& b);

  std::string to_string() const;

 private:
  long value_ = 0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

// --- primes ---------------------------------------------------------------

bool is_prime(std::uint64_t n);

/// Sieve of Eratosthenes: all primes <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Distinct prime factors of n >= 1, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Full factorization of |n| as (prime, exponent) pairs by trial division.
std::vector<std::pair<Integer, unsigned long>> factorize(const Integer& n);

// --- valuations -----------------------------------------------------------

/// Largest e with p^e | n. Returns +infinity for n == 0. p must be prime.
Valuation vp_int(const Integer& n, std::uint64_t p);

/// vp(num) - vp(den); +infinity for q == 0.
Valuation vp_rat(const Rational& q, std::uint64_t p);

/// vp(n!) by Legendre's formula; never forms n!.
long legendre_vp_factorial(std::uint64_t n, std::uint64_t p);

/// x in c Z_p, i.e. vp(x) >= vp(c). c must be nonzero.
bool in_padic_ideal(const Rational& x, const Rational& c, std::uint64_t p);

// --- harmonic numbers -----------------------------------------------------

/// H_n = sum_{j=1}^n 1/j; H_0 = 0. Uses the shared prefix cache for small n.
Rational harmonic(std::uint64_t n);

/// H(x, m) = sum_{n=0}^{m-1} 1/(x+n) for rational x > 0.
Rational harmonic_shifted(const Rational& x, std::uint64_t m);

/// H_n^{(alpha)} = sum_{j=1}^n 1/j^alpha.
Rational harmonic_power(std::uint64_t n, unsigned alpha);

/// Exact sum_{j=lo}^{hi} 1/j by binary splitting (empty when lo > hi).
Rational reciprocal_sum(std::uint64_t lo, std::uint64_t hi);

/// Upper index of the harmonic prefix cache (default 10^4).
void set_harmonic_cache_bound(std::uint64_t bound);
std::uint64_t harmonic_cache_bound();

// --- factorials, Gamma_p, Theta --------------------------------------------

Integer factorial(std::uint64_t n);

/// Gamma_p(n) = (-1)^n * prod_{k<n, p∤k} k for n >= 1.
Integer gamma_p(std::uint64_t n, std::uint64_t p);

/// Denominator of H_L, computed as L!/gcd(L!, L! H_L).
Integer theta(std::uint64_t L);

/// Same value via prod_{p<=L} p^{-min(0, vp(H_L))}.
Integer theta_by_valuations(std::uint64_t L);

}  // namespace mirror
