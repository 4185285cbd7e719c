#include "mirror/padic.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace mirror {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw ParameterError("rational with zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(text));
    }
    return make_rational(Integer(text.substr(0, slash)),
                         Integer(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw ParameterError("not a rational number: '" + text + "'");
  }
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

long Valuation::value() const {
  if (infinite_) {
    throw std::logic_error("value() of infinite valuation");
  }
  return value_;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.infinite_ || b.infinite_) {
    return Valuation::infinity();
  }
  return Valuation(a.value_ + b.value_);
}

Valuation operator-(const Valuation& a, const Valuation& b) {
  if (b.infinite_) {
    throw std::logic_error("subtracting an infinite valuation");
  }
  if (a.infinite_) {
    return a;
  }
  return Valuation(a.value_ - b.value_);
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  return os << v.to_string();
}

// --- primes ---------------------------------------------------------------

bool is_prime(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  if (n < 4) {
    return true;
  }
  if (n % 2 == 0 || n % 3 == 0) {
    return false;
  }
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) {
      return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) {
    return out;
  }
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) {
      continue;
    }
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) {
      composite[j] = true;
    }
  }
  return out;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) {
        n /= d;
      }
    }
  }
  if (n > 1) {
    out.push_back(n);
  }
  return out;
}

std::vector<std::pair<Integer, unsigned long>> factorize(const Integer& n) {
  std::vector<std::pair<Integer, unsigned long>> out;
  Integer m = abs(n);
  if (m == 0) {
    return out;
  }
  // Small factors by trial division; whatever remains is reported whole.
  for (unsigned long d = 2; d < 100000 && Integer(d) * d <= m; ++d) {
    unsigned long e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      m /= d;
      ++e;
    }
    if (e > 0) {
      out.emplace_back(Integer(d), e);
    }
  }
  if (m > 1) {
    out.emplace_back(m, 1);
  }
  return out;
}

// --- valuations -----------------------------------------------------------

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) {
    throw ParameterError("p = " + std::to_string(p) + " is not prime");
  }
}

}  // namespace

Valuation vp_int(const Integer& n, std::uint64_t p) {
  require_prime(p);
  if (n == 0) {
    return Valuation::infinity();
  }
  Integer rest;
  Integer prime(static_cast<unsigned long>(p));
  auto e = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t());
  return Valuation(static_cast<long>(e));
}

Valuation vp_rat(const Rational& q, std::uint64_t p) {
  if (q == 0) {
    require_prime(p);
    return Valuation::infinity();
  }
  return vp_int(q.get_num(), p) - vp_int(q.get_den(), p);
}

long legendre_vp_factorial(std::uint64_t n, std::uint64_t p) {
  require_prime(p);
  long total = 0;
  while (n > 0) {
    n /= p;
    total += static_cast<long>(n);
  }
  return total;
}

bool in_padic_ideal(const Rational& x, const Rational& c, std::uint64_t p) {
  if (c == 0) {
    throw ParameterError("ideal generator must be nonzero");
  }
  return vp_rat(x, p) >= vp_rat(c, p);
}

// --- harmonic numbers -----------------------------------------------------

namespace {

struct HarmonicCache {
  std::mutex mutex;
  std::uint64_t bound = 10000;
  std::vector<Rational> prefix{Rational(0)};  // prefix[n] = H_n
};

HarmonicCache& harmonic_cache() {
  static HarmonicCache cache;
  return cache;
}

// P/Q = sum_{j=lo}^{hi} 1/j, unreduced.
void split_sum(std::uint64_t lo, std::uint64_t hi, Integer& P, Integer& Q) {
  if (hi - lo < 8) {
    P = 0;
    Q = 1;
    for (std::uint64_t j = lo; j <= hi; ++j) {
      // P/Q + 1/j = (P j + Q) / (Q j)
      P = P * static_cast<unsigned long>(j) + Q;
      Q *= static_cast<unsigned long>(j);
    }
    return;
  }
  std::uint64_t mid = lo + (hi - lo) / 2;
  Integer P1, Q1, P2, Q2;
  split_sum(lo, mid, P1, Q1);
  split_sum(mid + 1, hi, P2, Q2);
  P = P1 * Q2 + P2 * Q1;
  Q = Q1 * Q2;
}

}  // namespace

Rational reciprocal_sum(std::uint64_t lo, std::uint64_t hi) {
  if (lo == 0) {
    throw ParameterError("reciprocal_sum starts at 1");
  }
  if (lo > hi) {
    return Rational(0);
  }
  Integer P, Q;
  split_sum(lo, hi, P, Q);
  return make_rational(P, Q);
}

Rational harmonic(std::uint64_t n) {
  auto& cache = harmonic_cache();
  std::lock_guard lock(cache.mutex);
  if (n < cache.prefix.size()) {
    return cache.prefix[n];
  }
  if (n <= cache.bound) {
    while (cache.prefix.size() <= n) {
      auto j = cache.prefix.size();
      cache.prefix.push_back(cache.prefix.back() +
                             Rational(1, static_cast<unsigned long>(j)));
    }
    return cache.prefix[n];
  }
  auto top = cache.prefix.size() - 1;
  return cache.prefix[top] + reciprocal_sum(top + 1, n);
}

void set_harmonic_cache_bound(std::uint64_t bound) {
  auto& cache = harmonic_cache();
  std::lock_guard lock(cache.mutex);
  cache.bound = bound;
  if (cache.prefix.size() > bound + 1) {
    cache.prefix.resize(bound + 1);
  }
}

std::uint64_t harmonic_cache_bound() {
  auto& cache = harmonic_cache();
  std::lock_guard lock(cache.mutex);
  return cache.bound;
}

Rational harmonic_shifted(const Rational& x, std::uint64_t m) {
  if (x <= 0) {
    throw ParameterError("harmonic_shifted needs x > 0");
  }
  // x = a/b:  sum 1/(a/b + n) = sum b/(a + n b).
  const Integer& a = x.get_num();
  const Integer& b = x.get_den();
  Integer P = 0, Q = 1;
  for (std::uint64_t n = 0; n < m; ++n) {
    Integer d = a + b * static_cast<unsigned long>(n);
    P = P * d + b * Q;
    Q *= d;
  }
  return make_rational(P, Q);
}

Rational harmonic_power(std::uint64_t n, unsigned alpha) {
  if (alpha == 0) {
    throw ParameterError("harmonic_power needs alpha >= 1");
  }
  Integer P = 0, Q = 1;
  for (std::uint64_t j = 1; j <= n; ++j) {
    Integer d;
    mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(j), alpha);
    P = P * d + Q;
    Q *= d;
  }
  return make_rational(P, Q);
}

// --- factorials, Gamma_p, Theta --------------------------------------------

Integer factorial(std::uint64_t n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

Integer gamma_p(std::uint64_t n, std::uint64_t p) {
  require_prime(p);
  if (n == 0) {
    throw ParameterError("gamma_p is defined for n >= 1");
  }
  Integer prod = 1;
  for (std::uint64_t k = 1; k < n; ++k) {
    if (k % p != 0) {
      prod *= static_cast<unsigned long>(k);
    }
  }
  return (n % 2 == 1) ? Integer(-prod) : prod;
}

Integer theta(std::uint64_t L) {
  if (L == 0) {
    throw ParameterError("theta needs L >= 1");
  }
  Integer f = factorial(L);
  Rational scaled = harmonic(L) * f;  // L! H_L is an integer
  Integer g = gcd(f, scaled.get_num());
  return f / g;
}

Integer theta_by_valuations(std::uint64_t L) {
  if (L == 0) {
    throw ParameterError("theta needs L >= 1");
  }
  Rational h = harmonic(L);
  Integer out = 1;
  for (auto p : primes_up_to(L)) {
    long v = vp_rat(h, p).value();
    if (v < 0) {
      Integer pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                    static_cast<unsigned long>(-v));
      out *= pw;
    }
  }
  return out;
}

}  // namespace mirror
