#include "mirror/coefficients.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace mirror {

unsigned euler_phi(unsigned N) {
  if (N == 0) {
    throw ParameterError("euler_phi needs N >= 1");
  }
  unsigned out = N;
  for (auto p : prime_factors(N)) {
    out = out / static_cast<unsigned>(p) * static_cast<unsigned>(p - 1);
  }
  return out;
}

ZudilinData compute_zudilin_data(unsigned N) {
  if (N == 0) {
    throw ParameterError("zudilin_data needs N >= 1");
  }
  ZudilinData d;
  d.N = N;
  d.phi = euler_phi(N);
  for (unsigned r = 1; r <= N; ++r) {
    if (std::gcd(r, N) == 1) {
      d.residues.push_back(r);
    }
  }

  auto primes = prime_factors(N);
  d.C = 1;
  mpz_ui_pow_ui(d.C.get_mpz_t(), N, d.phi);
  for (auto p : primes) {
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                  d.phi / static_cast<unsigned>(p - 1));
    d.C *= pw;
  }

  // Subsets by size, lexicographic within a size.
  const auto l = primes.size();
  for (std::size_t size = 0; size <= l; ++size) {
    std::vector<bool> pick(l, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      unsigned q = N;
      for (std::size_t i = 0; i < l; ++i) {
        if (pick[i]) {
          q /= static_cast<unsigned>(primes[i]);
        }
      }
      (size % 2 == 0 ? d.alpha : d.beta).push_back(q);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  long sum_alpha = std::accumulate(d.alpha.begin(), d.alpha.end(), 0L);
  long sum_beta = std::accumulate(d.beta.begin(), d.beta.end(), 0L);
  long padding = sum_alpha - sum_beta;
  if (padding < 0) {
    throw std::logic_error("negative 1-padding for N = " + std::to_string(N));
  }
  d.beta.insert(d.beta.end(), static_cast<std::size_t>(padding), 1u);
  return d;
}

const ZudilinData& zudilin_data(unsigned N) {
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<ZudilinData>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[N];
  if (!slot) {
    slot = std::make_unique<ZudilinData>(compute_zudilin_data(N));
  }
  return *slot;
}

FactorialRatio normalized_ratio(const ZudilinData& data) {
  auto a = data.alpha;
  auto b = data.beta;
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  FactorialRatio out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out.alpha), std::greater<>());
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::back_inserter(out.beta), std::greater<>());
  return out;
}

Rational factorial_ratio(const FactorialRatio& ratio, std::uint64_t m) {
  Integer num = 1, den = 1;
  for (auto a : ratio.alpha) {
    num *= factorial(static_cast<std::uint64_t>(a) * m);
  }
  for (auto b : ratio.beta) {
    den *= factorial(static_cast<std::uint64_t>(b) * m);
  }
  return make_rational(num, den);
}

long vp_factorial_ratio(const FactorialRatio& ratio, std::uint64_t m,
                        std::uint64_t p) {
  long v = 0;
  for (auto a : ratio.alpha) {
    v += legendre_vp_factorial(static_cast<std::uint64_t>(a) * m, p);
  }
  for (auto b : ratio.beta) {
    v -= legendre_vp_factorial(static_cast<std::uint64_t>(b) * m, p);
  }
  return v;
}

namespace {

FactorialRatio raw_ratio(const ZudilinData& d) { return {d.alpha, d.beta}; }

FactorialRatio plain_ratio(unsigned N) {
  return {{N}, std::vector<unsigned>(N, 1u)};
}

// prod_{i=1}^{k} (k m + i), the factor (k(m+1))!/(k m)!.
Integer rising_block(unsigned k, std::uint64_t m) {
  Integer out = 1;
  const unsigned long base = static_cast<unsigned long>(k * m);
  for (unsigned i = 1; i <= k; ++i) {
    out *= base + i;
  }
  return out;
}

// Values ratio(0..max_m) via ratio(m+1)/ratio(m) = prod rising blocks.
std::vector<Integer> ratio_table(const FactorialRatio& ratio,
                                 std::uint64_t max_m) {
  std::vector<Integer> out(max_m + 1);
  out[0] = 1;
  Integer num, den;
  for (std::uint64_t m = 0; m < max_m; ++m) {
    num = out[m];
    den = 1;
    for (auto a : ratio.alpha) {
      num *= rising_block(a, m);
    }
    for (auto b : ratio.beta) {
      den *= rising_block(b, m);
    }
    mpz_divexact(out[m + 1].get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return out;
}

}  // namespace

// --- plain ----------------------------------------------------------------

Integer bN(unsigned N, std::uint64_t m) {
  if (N == 0) {
    throw ParameterError("bN needs N >= 1");
  }
  Integer f = factorial(static_cast<std::uint64_t>(N) * m);
  Integer d;
  mpz_pow_ui(d.get_mpz_t(), factorial(m).get_mpz_t(), N);
  Integer out;
  mpz_divexact(out.get_mpz_t(), f.get_mpz_t(), d.get_mpz_t());
  return out;
}

long vp_bN(unsigned N, std::uint64_t m, std::uint64_t p) {
  return vp_factorial_ratio(plain_ratio(N), m, p);
}

Integer bVec(const NVector& Nvec, std::uint64_t m) {
  Integer out = 1;
  for (auto N : Nvec) {
    out *= bN(N, m);
  }
  return out;
}

long vp_bVec(const NVector& Nvec, std::uint64_t m, std::uint64_t p) {
  long v = 0;
  for (auto N : Nvec) {
    v += vp_bN(N, m, p);
  }
  return v;
}

std::vector<Integer> bN_table(unsigned N, std::uint64_t max_m) {
  if (N == 0) {
    throw ParameterError("bN needs N >= 1");
  }
  return ratio_table(plain_ratio(N), max_m);
}

// --- Zudilin ----------------------------------------------------------------

Rational bbN(unsigned N, std::uint64_t m, BoldMode mode) {
  const auto& d = zudilin_data(N);
  if (mode == BoldMode::factorial) {
    return factorial_ratio(raw_ratio(d), m);
  }
  Integer cm;
  mpz_pow_ui(cm.get_mpz_t(), d.C.get_mpz_t(), static_cast<unsigned long>(m));
  // prod_j (r_j/N)_m / m! = prod_j prod_{n<m} (r_j + nN) / (N^m m!)
  Integer num = cm, den = 1;
  Integer mf = factorial(m);
  Integer nm;
  mpz_ui_pow_ui(nm.get_mpz_t(), N, static_cast<unsigned long>(m));
  for (auto r : d.residues) {
    for (std::uint64_t n = 0; n < m; ++n) {
      num *= static_cast<unsigned long>(r + n * N);
    }
    den *= nm * mf;
  }
  return make_rational(num, den);
}

Integer bbN_int(unsigned N, std::uint64_t m) {
  Rational v = bbN(N, m, BoldMode::factorial);
  if (!is_integral(v)) {
    throw std::logic_error("bold B_N(m) not integral");
  }
  return v.get_num();
}

long vp_bbN(unsigned N, std::uint64_t m, std::uint64_t p) {
  return vp_factorial_ratio(raw_ratio(zudilin_data(N)), m, p);
}

Integer bbVec(const NVector& Nvec, std::uint64_t m) {
  Integer out = 1;
  for (auto N : Nvec) {
    out *= bbN_int(N, m);
  }
  return out;
}

long vp_bbVec(const NVector& Nvec, std::uint64_t m, std::uint64_t p) {
  long v = 0;
  for (auto N : Nvec) {
    v += vp_bbN(N, m, p);
  }
  return v;
}

std::vector<Integer> bbN_table(unsigned N, std::uint64_t max_m) {
  return ratio_table(raw_ratio(zudilin_data(N)), max_m);
}

Rational hN(unsigned N, std::uint64_t m, HMode mode) {
  const auto& d = zudilin_data(N);
  Rational out = 0;
  if (mode == HMode::residues) {
    for (auto r : d.residues) {
      out += harmonic_shifted(make_rational(r, N), m);
    }
    out -= harmonic(m) * d.phi;
    return out;
  }
  for (auto a : d.alpha) {
    out += harmonic(static_cast<std::uint64_t>(a) * m) * a;
  }
  for (auto b : d.beta) {
    out -= harmonic(static_cast<std::uint64_t>(b) * m) * b;
  }
  return out;
}

long delta(const FactorialRatio& ratio, const Rational& x) {
  auto floor_of = [](const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
  };
  Integer total = 0;
  for (auto a : ratio.alpha) {
    total += floor_of(x * a);
  }
  for (auto b : ratio.beta) {
    total -= floor_of(x * b);
  }
  return total.get_si();
}

long delta(unsigned N, const Rational& x) {
  return delta(raw_ratio(zudilin_data(N)), x);
}

// --- sequences --------------------------------------------------------------

CoefficientSequence::CoefficientSequence(Family family, NVector Nvec)
    : family_(family), nvec_(std::move(Nvec)), factors_(nvec_.size()) {
  if (nvec_.empty()) {
    throw ParameterError("empty N vector");
  }
  for (auto N : nvec_) {
    if (N == 0) {
      throw ParameterError("N entries must be >= 1");
    }
  }
}

void CoefficientSequence::grow_to(std::uint64_t n) {
  if (n < values_.size()) {
    return;
  }
  // Doubling keeps the incremental tables cheap to extend.
  std::uint64_t target = std::max<std::uint64_t>(n, 2 * values_.size() + 16);
  for (std::size_t i = 0; i < nvec_.size(); ++i) {
    factors_[i] = family_ == Family::plain ? bN_table(nvec_[i], target)
                                           : bbN_table(nvec_[i], target);
  }
  values_.assign(target + 1, Integer(1));
  for (std::uint64_t m = 0; m <= target; ++m) {
    for (const auto& f : factors_) {
      values_[m] *= f[m];
    }
  }
}

Integer CoefficientSequence::at(long n) {
  if (n < 0) {
    return 0;
  }
  grow_to(static_cast<std::uint64_t>(n));
  return values_[static_cast<std::size_t>(n)];
}

long CoefficientSequence::vp(long n, std::uint64_t p) {
  if (n < 0) {
    throw ParameterError("valuation of a zero coefficient");
  }
  auto m = static_cast<std::uint64_t>(n);
  return family_ == Family::plain ? vp_bVec(nvec_, m, p) : vp_bbVec(nvec_, m, p);
}

Integer capital_M(const NVector& Nvec) {
  Integer out = 1;
  for (auto N : Nvec) {
    out *= factorial(N);
  }
  return out;
}

NVector divisor_vector(unsigned N) {
  NVector out;
  for (unsigned d = N; d >= 2; --d) {
    if (N % d == 0) {
      out.push_back(d);
    }
  }
  return out;
}

std::string nvec_to_string(const NVector& Nvec) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < Nvec.size(); ++i) {
    os << (i ? "," : "") << Nvec[i];
  }
  os << ')';
  return os.str();
}

NVector parse_nvec(const std::string& text) {
  NVector out;
  std::string cleaned;
  for (char c : text) {
    if (c != '(' && c != ')' && c != ' ') {
      cleaned += c;
    }
  }
  std::istringstream is(cleaned);
  std::string part;
  while (std::getline(is, part, ',')) {
    if (part.empty()) {
      continue;
    }
    long v = 0;
    try {
      v = std::stol(part);
    } catch (const std::exception&) {
      throw ParameterError("bad N vector entry '" + part + "'");
    }
    if (v < 1) {
      throw ParameterError("N vector entries must be >= 1");
    }
    out.push_back(static_cast<unsigned>(v));
  }
  if (out.empty()) {
    throw ParameterError("empty N vector");
  }
  return out;
}

}  // namespace mirror
