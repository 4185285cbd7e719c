#include "mirror/dwork.hpp"

#include "mirror/certifier.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

namespace mirror {

namespace {

// Coefficient tables shared across the instances of one suite run.
class SequenceCache {
 public:
  CoefficientSequence& get(Family family, const NVector& Nvec) {
    auto key = std::make_pair(family, Nvec);
    auto it = tables_.find(key);
    if (it == tables_.end()) {
      it = tables_.emplace(key, std::make_unique<CoefficientSequence>(family, Nvec)).first;
    }
    return *it->second;
  }

 private:
  std::map<std::pair<Family, NVector>, std::unique_ptr<CoefficientSequence>> tables_;
};

Integer ipow(std::uint64_t p, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), e);
  return out;
}

std::uint64_t upow(std::uint64_t p, unsigned e) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    out *= p;
  }
  return out;
}

// H_hi - H_lo without materializing both when they are large.
Rational harmonic_diff(std::uint64_t hi, std::uint64_t lo) {
  if (hi == lo) {
    return 0;
  }
  if (std::max(hi, lo) <= harmonic_cache_bound()) {
    return harmonic(hi) - harmonic(lo);
  }
  return hi > lo ? reciprocal_sum(lo + 1, hi) : Rational(-reciprocal_sum(hi + 1, lo));
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) {
    throw ParameterError("p must be prime");
  }
}

void require_nvec(const NVector& Nvec) {
  if (Nvec.empty()) {
    throw ParameterError("N vector must be non-empty");
  }
  for (auto n : Nvec) {
    if (n == 0) {
      throw ParameterError("N entries must be positive");
    }
  }
}

void require_L(const NVector& Nvec, unsigned L) {
  unsigned top = *std::max_element(Nvec.begin(), Nvec.end());
  if (L < 1 || L > top) {
    throw ParameterError("hypothesis 1 <= L <= max(N) fails");
  }
}

long lval(std::uint64_t n) { return static_cast<long>(n); }

Rational c_sum_impl(CoefficientSequence& B, unsigned L, std::uint64_t p,
                    std::uint64_t a, std::uint64_t K) {
  Rational total = 0;
  for (std::uint64_t j = 0; j <= K; ++j) {
    Integer w = B.at(lval(a + j * p)) * B.at(lval(K - j));
    Rational h = harmonic(L * (K - j)) - Rational(p) * harmonic(L * (a + j * p));
    total += w * h;
  }
  return total;
}

// B(a+jp)B(K-j) - B(j)B(a+(K-j)p); negative arguments read as 0.
Integer dwork_term(CoefficientSequence& B, std::uint64_t p, std::uint64_t a,
                   std::uint64_t K, std::uint64_t j) {
  const long Kj = lval(K) - lval(j);
  return B.at(lval(a + j * p)) * B.at(Kj) - B.at(lval(j)) * B.at(lval(a) + Kj * lval(p));
}

Rational s_sum_impl(CoefficientSequence& B, std::uint64_t p, std::uint64_t a,
                    std::uint64_t K, unsigned s, std::uint64_t m) {
  const std::uint64_t ps = upow(p, s);
  Integer total = 0;
  // Terms with j > K vanish identically, so the range is clipped at K.
  const std::uint64_t hi = std::min((m + 1) * ps - 1, K);
  for (std::uint64_t j = m * ps; j <= hi; ++j) {
    total += dwork_term(B, p, a, K, j);
  }
  return total;
}

void check_a(std::uint64_t a, std::uint64_t p) {
  if (a >= p) {
    throw ParameterError("hypothesis 0 <= a < p fails");
  }
}

}  // namespace

Rational c_sum(const NVector& Nvec, unsigned L, std::uint64_t p,
               std::uint64_t a, std::uint64_t K, Family family) {
  require_prime(p);
  require_nvec(Nvec);
  check_a(a, p);
  CoefficientSequence B(family, Nvec);
  return c_sum_impl(B, L, p, a, K);
}

Rational s_sum(const NVector& Nvec, std::uint64_t p, std::uint64_t a,
               std::uint64_t K, unsigned s, std::uint64_t m, Family family) {
  require_prime(p);
  require_nvec(Nvec);
  check_a(a, p);
  CoefficientSequence B(family, Nvec);
  return s_sum_impl(B, p, a, K, s, m);
}

Rearrangement rearrangement_sides(const NVector& Nvec, unsigned L,
                                  std::uint64_t p, std::uint64_t a,
                                  std::uint64_t K, Family family) {
  require_prime(p);
  require_nvec(Nvec);
  check_a(a, p);
  CoefficientSequence B(family, Nvec);
  Rearrangement out;
  for (std::uint64_t j = 0; j <= K; ++j) {
    out.lhs += harmonic(L * j) * dwork_term(B, p, a, K, j);
  }
  while (upow(p, out.r) <= K) {
    ++out.r;
  }
  for (unsigned s = 0; s <= out.r; ++s) {
    const std::uint64_t ps = upow(p, s);
    const std::uint64_t m_count = upow(p, out.r + 1 - s);
    for (std::uint64_t m = 0; m < m_count; ++m) {
      if (m * ps > K) {
        break;  // S vanishes: every j in its block exceeds K
      }
      Rational weight = harmonic_diff(L * m * ps, L * (m / p) * ps * p);
      if (weight != 0) {
        out.rhs += weight * s_sum_impl(B, p, a, K, s, m);
      }
    }
  }
  return out;
}

CertReport dwork_conditions_check(Family family, const NVector& Nvec,
                                  std::uint64_t p, const DworkBounds& bounds) {
  require_prime(p);
  require_nvec(Nvec);
  CoefficientSequence A(family, Nvec);
  std::size_t checked = 0;
  if (A.vp(0, p) != 0) {
    return CertReport::failed(0, 0, "condition (i): A(0) is not a p-adic unit");
  }
  for (unsigned s = 0; s <= bounds.max_s; ++s) {
    const std::uint64_t ps = upow(p, s);
    for (std::uint64_t u = 0; u < ps; ++u) {
      for (std::uint64_t v = 0; v < p; ++v) {
        const std::uint64_t base = v + u * p;
        const Integer a_base = A.at(lval(base));
        const Integer a_u = A.at(lval(u));
        for (std::uint64_t n = 0; n <= bounds.max_n; ++n) {
          Rational diff = make_rational(A.at(lval(base + n * ps * p)), a_base) -
                          make_rational(A.at(lval(u + n * ps)), a_u);
          Valuation target(static_cast<long>(s + 1) + A.vp(lval(n), p) - A.vp(lval(base), p));
          Valuation got = vp_rat(diff, p);
          ++checked;
          if (got < target) {
            std::ostringstream os;
            os << "condition (iii) fails at s=" << s << " u=" << u << " v=" << v
               << " n=" << n << ": valuation " << got << " < " << target;
            return CertReport::failed(bounds.max_n, n, os.str(), got);
          }
        }
      }
    }
  }
  return CertReport::passed(bounds.max_n, std::to_string(checked) + " tuples satisfy (i)-(iii)");
}

CertReport dieudonne_dwork_check(const TruncSeries& s, std::uint64_t p,
                                 std::size_t order) {
  require_prime(p);
  if (s[0] != 1) {
    throw ParameterError("Dieudonne-Dwork test needs S(0) = 1");
  }
  order = std::min(order, s.order());
  TruncSeries base = s.truncated(order);
  TruncSeries power = TruncSeries::constant(1, order);
  TruncSeries sq = base;
  for (std::uint64_t e = p; e > 0; e >>= 1) {
    if (e & 1) {
      power = power * sq;
    }
    if (e > 1) {
      sq = sq * sq;
    }
  }
  TruncSeries ratio = substitute_pth_power(base, p) / power;
  for (std::size_t i = 1; i <= order; ++i) {
    Valuation v = vp_rat(ratio[i], p);
    if (v < Valuation(1)) {
      std::ostringstream os;
      os << "coefficient " << i << " of S(z^p)/S(z)^p has valuation " << v;
      return CertReport::failed(order, i, os.str(), v);
    }
  }
  return CertReport::passed(order, "S(z^p)/S(z)^p in 1 + pzZ_p[[z]] through index " +
                                       std::to_string(order));
}

CertReport quotient_congruence_check(const TruncSeries& f, const TruncSeries& g,
                        const Rational& tau, std::uint64_t p,
                        std::size_t order) {
  require_prime(p);
  if (f[0] != 1 || g[0] != 0) {
    throw ParameterError("quotient congruence needs f(0) = 1 and g(0) = 0");
  }
  if (tau <= 0) {
    throw ParameterError("tau must be positive");
  }
  order = std::min({order, f.order(), g.order()});
  TruncSeries fo = f.truncated(order), go = g.truncated(order);
  TruncSeries h = fo * substitute_pth_power(go, p) -
                  Rational(p) * (substitute_pth_power(fo, p) * go);
  Valuation target = vp_rat(Rational(p) * tau, p);
  for (std::size_t i = 1; i <= order; ++i) {
    Valuation v = vp_rat(h[i], p);
    if (v < target) {
      std::ostringstream os;
      os << "coefficient " << i << " has valuation " << v << " < " << target;
      return CertReport::failed(order, i, os.str(), v);
    }
  }
  return CertReport::passed(order, "f g(z^p) - p f(z^p) g in p tau zZ_p[[z]] through index " +
                                       std::to_string(order));
}

// --- lemma instances ------------------------------------------------------

const std::vector<LemmaId>& all_lemmas() {
  static const std::vector<LemmaId> ids = {
      LemmaId::J,     LemmaId::L6,     LemmaId::L10,    LemmaId::L11,
      LemmaId::L12,   LemmaId::L12a,   LemmaId::strat3, LemmaId::strat4,
      LemmaId::Ccong, LemmaId::W1,     LemmaId::W2,     LemmaId::W3,
      LemmaId::congH, LemmaId::congH2, LemmaId::B1,     LemmaId::B2,
      LemmaId::C1,    LemmaId::ultime, LemmaId::diviBB, LemmaId::gammap};
  return ids;
}

std::string to_string(LemmaId id) {
  switch (id) {
    case LemmaId::J: return "J";
    case LemmaId::L6: return "L6";
    case LemmaId::L10: return "L10";
    case LemmaId::L11: return "L11";
    case LemmaId::L12: return "L12";
    case LemmaId::L12a: return "L12a";
    case LemmaId::strat3: return "strat3";
    case LemmaId::strat4: return "strat4";
    case LemmaId::Ccong: return "Ccong";
    case LemmaId::W1: return "W1";
    case LemmaId::W2: return "W2";
    case LemmaId::W3: return "W3";
    case LemmaId::congH: return "congH";
    case LemmaId::congH2: return "congH2";
    case LemmaId::B1: return "B1";
    case LemmaId::B2: return "B2";
    case LemmaId::C1: return "C1";
    case LemmaId::ultime: return "ultime";
    case LemmaId::diviBB: return "diviBB";
    case LemmaId::gammap: return "gammap";
  }
  return "?";
}

LemmaId parse_lemma(const std::string& text) {
  for (auto id : all_lemmas()) {
    if (to_string(id) == text) {
      return id;
    }
  }
  throw ParameterError("unknown lemma id '" + text + "'");
}

std::int64_t LemmaParams::get(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) {
    throw ParameterError("missing parameter '" + name + "'");
  }
  return it->second;
}

std::int64_t LemmaParams::get_or(const std::string& name, std::int64_t fallback) const {
  auto it = values.find(name);
  return it == values.end() ? fallback : it->second;
}

namespace {

std::uint64_t nonneg(const LemmaParams& params, const std::string& name) {
  auto v = params.get(name);
  if (v < 0) {
    throw ParameterError("parameter '" + name + "' must be non-negative");
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t positive(const LemmaParams& params, const std::string& name) {
  auto v = nonneg(params, name);
  if (v == 0) {
    throw ParameterError("parameter '" + name + "' must be positive");
  }
  return v;
}

std::uint64_t prime_param(const LemmaParams& params, std::uint64_t min_p = 2) {
  auto p = nonneg(params, "p");
  require_prime(p);
  if (p < min_p) {
    throw ParameterError("hypothesis p >= " + std::to_string(min_p) + " fails");
  }
  return p;
}

// N vector from params.Nvec, or (N,...,N) with k copies from N and k.
NVector vector_param(const LemmaParams& params) {
  if (!params.Nvec.empty()) {
    require_nvec(params.Nvec);
    return params.Nvec;
  }
  auto N = positive(params, "N");
  auto k = params.get_or("k", 1);
  if (k < 1) {
    throw ParameterError("parameter 'k' must be positive");
  }
  return NVector(static_cast<std::size_t>(k), static_cast<unsigned>(N));
}

// Equal-entry vector (N^k): N and k from params, or a constant Nvec.
std::pair<unsigned, unsigned> equal_vector(const LemmaParams& params) {
  NVector v = vector_param(params);
  for (auto n : v) {
    if (n != v.front()) {
      throw ParameterError("hypothesis N = (N, ..., N) fails");
    }
  }
  return {v.front(), static_cast<unsigned>(v.size())};
}

Valuation val(long v) { return Valuation(v); }

std::string describe(const Rational& value, std::uint64_t p) {
  std::ostringstream os;
  os << "v_" << p << " of the evaluated side is " << vp_rat(value, p);
  return os.str();
}

CongruenceInstance evaluate(LemmaId id, const LemmaParams& params,
                            SequenceCache& cache) {
  CongruenceInstance out;
  out.lemma = id;
  out.params = params;
  std::ostringstream os;
  switch (id) {
    case LemmaId::J: {
      auto p = prime_param(params);
      auto J = nonneg(params, "J");
      Rational value = Rational(p) * harmonic(J) - harmonic(J / p);
      out.target = val(1);
      out.achieved = vp_rat(value, p);
      os << "p H_J - H_{floor(J/p)} = " << value;
      break;
    }
    case LemmaId::L6: {
      auto p = prime_param(params);
      auto N = static_cast<unsigned>(positive(params, "N"));
      auto n = nonneg(params, "n");
      auto s = static_cast<unsigned>(nonneg(params, "s"));
      auto u = nonneg(params, "u");
      if (u >= upow(p, s)) {
        throw ParameterError("hypothesis u < p^s fails");
      }
      Rational ratio = make_rational(bN(N, u + n * upow(p, s)), bN(N, u));
      out.target = val(vp_bN(N, n, p));
      out.achieved = vp_rat(ratio, p);
      os << "B_N(u+np^s)/B_N(u) against B_N(n)";
      break;
    }
    case LemmaId::L10:
    case LemmaId::strat3: {
      auto p = prime_param(params);
      NVector v = vector_param(params);
      auto a = nonneg(params, "a");
      check_a(a, p);
      auto K = nonneg(params, "K");
      auto s = static_cast<unsigned>(nonneg(params, "s"));
      auto m = nonneg(params, "m");
      Family fam = id == LemmaId::L10 ? Family::plain : Family::zudilin;
      auto& B = cache.get(fam, v);
      Rational value = s_sum_impl(B, p, a, K, s, m);
      out.target = val(static_cast<long>(s) + 1 + B.vp(lval(m), p));
      out.achieved = vp_rat(value, p);
      os << "S(a,K,s,p,m) = " << value << " against p^{s+1} B(m)";
      break;
    }
    case LemmaId::L11:
    case LemmaId::strat4: {
      auto p = prime_param(params);
      NVector v = vector_param(params);
      auto L = static_cast<unsigned>(positive(params, "L"));
      require_L(v, L);
      auto m = nonneg(params, "m");
      auto s = static_cast<unsigned>(nonneg(params, "s"));
      Family fam = id == LemmaId::L11 ? Family::plain : Family::zudilin;
      auto& B = cache.get(fam, v);
      const std::uint64_t ps = upow(p, s);
      Rational value = B.at(lval(m)) * harmonic_diff(L * m * ps, L * (m / p) * ps * p);
      if (id == LemmaId::L11) {
        out.target = vp_rat(make_rational(capital_M(v), ipow(p, s) * theta(L)), p);
      } else {
        out.target = val(-static_cast<long>(s));
      }
      out.achieved = vp_rat(value, p);
      os << describe(value, p);
      break;
    }
    case LemmaId::L12:
    case LemmaId::L12a: {
      auto p = prime_param(params);
      NVector v = vector_param(params);
      auto L = static_cast<unsigned>(positive(params, "L"));
      require_L(v, L);
      auto a = nonneg(params, "a");
      check_a(a, p);
      auto j = nonneg(params, "j");
      Family fam = id == LemmaId::L12 ? Family::plain : Family::zudilin;
      auto& B = cache.get(fam, v);
      Rational value = B.at(lval(a + p * j)) * harmonic_diff(L * j + (L * a) / p, L * j);
      if (id == LemmaId::L12) {
        out.target = vp_rat(make_rational(capital_M(v) * p, theta(L)), p);
      } else {
        out.target = val(1);
      }
      out.achieved = vp_rat(value, p);
      os << describe(value, p);
      break;
    }
    case LemmaId::Ccong: {
      auto p = prime_param(params);
      NVector v = vector_param(params);
      auto L = static_cast<unsigned>(positive(params, "L"));
      require_L(v, L);
      auto a = nonneg(params, "a");
      check_a(a, p);
      auto K = nonneg(params, "K");
      const bool bold = params.get_or("bold", 0) != 0;
      auto& B = cache.get(bold ? Family::zudilin : Family::plain, v);
      Rational value = c_sum_impl(B, L, p, a, K);
      out.target = bold ? val(1)
                        : vp_rat(make_rational(capital_M(v) * p, theta(L)), p);
      out.achieved = vp_rat(value, p);
      os << "C(a+Kp): " << describe(value, p);
      break;
    }
    case LemmaId::W1: {
      auto p = prime_param(params, 5);
      auto r = positive(params, "r");
      Rational value = harmonic_diff(r * p - 1, r * p - p);
      out.target = val(2);
      out.achieved = vp_rat(value, p);
      os << "H_{rp-1} - H_{rp-p} = " << value;
      break;
    }
    case LemmaId::W2:
    case LemmaId::W3: {
      const bool w3 = id == LemmaId::W3;
      auto p = prime_param(params, w3 ? 5 : 3);
      auto J = positive(params, "J");
      const std::uint64_t step = w3 ? p * p : p;
      if (J % step != 0) {
        throw ParameterError(w3 ? "hypothesis p^2 | J fails" : "hypothesis p | J fails");
      }
      Rational value = Rational(p) * harmonic(J) - harmonic(J / p);
      out.target = val(w3 ? 5 : (p == 3 ? 2 : 3));
      out.achieved = vp_rat(value, p);
      os << describe(value, p);
      break;
    }
    case LemmaId::congH:
    case LemmaId::congH2: {
      auto p = prime_param(params, 5);
      auto N = positive(params, "N");
      Rational value;
      const bool wolstenholme = is_wolstenholme_prime(p);
      if (id == LemmaId::congH) {
        value = Rational(p) * harmonic(p * N) - harmonic(N);
        out.expect_member = wolstenholme || N % p == 0;
      } else {
        value = Rational(p) * harmonic_diff(p * N, p) - (harmonic(N) - 1);
        out.expect_member = wolstenholme || N % p == 1 || N % p == p - 1;
      }
      out.target = val(4);
      out.achieved = vp_rat(value, p);
      os << describe(value, p) << "; predicted "
         << (out.expect_member ? "membership" : "non-membership") << " in p^4 Z_p";
      break;
    }
    case LemmaId::B1:
    case LemmaId::C1: {
      auto p = prime_param(params);
      auto [N, k] = equal_vector(params);
      std::uint64_t m;
      if (id == LemmaId::B1) {
        m = positive(params, "a");
        if (m < 2 || m >= p) {
          throw ParameterError("hypothesis 2 <= a < p fails");
        }
      } else {
        m = positive(params, "m");
        if (m < 2 || m % p == 0) {
          throw ParameterError("hypothesis m >= 2, p does not divide m fails");
        }
      }
      out.target = val(static_cast<long>(N / p) + static_cast<long>(k) * legendre_vp_factorial(N, p));
      out.achieved = val(static_cast<long>(k) * vp_bN(N, m, p));
      os << "v_p(B_N(" << m << ")) against floor(N/p) + v_p(N!^k)";
      break;
    }
    case LemmaId::B2: {
      auto p = prime_param(params);
      auto [N, k] = equal_vector(params);
      auto a = positive(params, "a");
      check_a(a, p);
      auto j = positive(params, "j");
      long T1 = 0;  // maximum over an empty range taken as 0
      for (std::uint64_t e = 1; e <= N * a / p; ++e) {
        T1 = std::max(T1, vp_int(Integer(static_cast<unsigned long>(N * j + e)), p).value());
      }
      long T2 = 0;
      for (std::uint64_t x = a + p * j; x >= p; x /= p) {
        ++T2;
      }
      out.target = val(static_cast<long>(N / p) + std::min(1 + T1, T2) - 1 +
                       static_cast<long>(k) * legendre_vp_factorial(N, p));
      out.achieved = val(static_cast<long>(k) * vp_bN(N, a + j * p, p));
      os << "T1=" << T1 << " T2=" << T2;
      break;
    }
    case LemmaId::ultime: {
      auto p = prime_param(params);
      NVector v = vector_param(params);
      auto m = nonneg(params, "m");
      auto r = static_cast<unsigned>(nonneg(params, "r"));
      auto w = nonneg(params, "w");
      if (w >= upow(p, r)) {
        throw ParameterError("hypothesis w < p^r fails");
      }
      Rational ratio = make_rational(bbVec(v, w + m * upow(p, r)), bbVec(v, m));
      out.target = val(0);
      out.achieved = vp_rat(ratio, p);
      os << "bold B(w+mp^r)/bold B(m) = " << ratio;
      break;
    }
    case LemmaId::diviBB: {
      NVector v = vector_param(params);
      auto m = positive(params, "m");
      Integer first = bbVec(v, 1), value = bbVec(v, m);
      // The divisibility is over Z; report it at p when given, else globally.
      if (params.values.count("p") != 0) {
        auto p = prime_param(params);
        out.target = val(vp_bbVec(v, 1, p));
        out.achieved = val(vp_bbVec(v, m, p));
      } else {
        out.target = val(0);
        out.achieved = mpz_divisible_p(value.get_mpz_t(), first.get_mpz_t()) ? val(0) : val(-1);
      }
      os << "bold B(1) = " << first;
      break;
    }
    case LemmaId::gammap: {
      auto p = prime_param(params);
      auto part = params.get_or("part", 1);
      if (part == 1) {
        auto n = positive(params, "n");
        Integer lhs = factorial(n * p) / factorial(n);
        Integer rhs = ipow(p, n) * gamma_p(1 + n * p, p);
        if ((n * p + 1) % 2 == 1) {
          rhs = -rhs;
        }
        out.target = Valuation::infinity();
        out.achieved = vp_int(lhs - rhs, p);
        os << "(np)!/n! - (-1)^{np+1} p^n Gamma_p(1+np) = " << Integer(lhs - rhs);
      } else if (part == 2) {
        auto k = positive(params, "k");
        auto n = positive(params, "n");
        auto s = static_cast<unsigned>(nonneg(params, "s"));
        if (p == 2 && s == 2) {
          // Gamma_2(6) = 15 and Gamma_2(2) = 1 differ modulo 4.
          throw ParameterError("periodicity modulo p^s does not hold for p = 2, s = 2");
        }
        Integer diff = gamma_p(k + n * upow(p, s), p) - gamma_p(k, p);
        out.target = val(static_cast<long>(s));
        out.achieved = vp_int(diff, p);
        os << "Gamma_p(k+np^s) - Gamma_p(k) has valuation " << out.achieved;
      } else {
        throw ParameterError("parameter 'part' must be 1 or 2");
      }
      break;
    }
  }
  out.detail = os.str();
  return out;
}

NVector random_vector(std::mt19937_64& rng, const SuiteBounds& b) {
  std::size_t k = 1 + rng() % b.max_k;
  NVector v(k);
  for (auto& n : v) {
    n = 1 + static_cast<unsigned>(rng() % b.max_N);
  }
  std::sort(v.rbegin(), v.rend());
  return v;
}

std::uint64_t random_prime(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  static thread_local std::map<std::pair<std::uint64_t, std::uint64_t>,
                               std::vector<std::uint64_t>> memo;
  auto& primes = memo[{lo, hi}];
  if (primes.empty()) {
    for (auto p : primes_up_to(hi)) {
      if (p >= lo) {
        primes.push_back(p);
      }
    }
    if (primes.empty()) {
      throw ParameterError("no prime in the requested range");
    }
  }
  return primes[rng() % primes.size()];
}

std::int64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return static_cast<std::int64_t>(lo + rng() % (hi - lo + 1));
}

}  // namespace

CongruenceInstance check_lemma(LemmaId id, const LemmaParams& params) {
  SequenceCache cache;
  return evaluate(id, params, cache);
}

LemmaParams random_lemma_params(LemmaId id, std::mt19937_64& rng,
                                const SuiteBounds& b) {
  LemmaParams out;
  auto& x = out.values;
  const std::uint64_t p = random_prime(rng, id == LemmaId::W1 || id == LemmaId::W3 ||
                                                    id == LemmaId::congH || id == LemmaId::congH2
                                                ? 5
                                                : (id == LemmaId::W2 ? 3 : 2),
                                      std::max<std::uint64_t>(b.max_p, 5));
  x["p"] = static_cast<std::int64_t>(p);
  const auto s_max = b.max_s;
  switch (id) {
    case LemmaId::J:
      x["J"] = draw(rng, 0, 400);
      break;
    case LemmaId::L6: {
      x["N"] = draw(rng, 1, b.max_N);
      x["s"] = draw(rng, 0, s_max);
      x["u"] = draw(rng, 0, upow(p, static_cast<unsigned>(x["s"])) - 1);
      x["n"] = draw(rng, 0, 12);
      break;
    }
    case LemmaId::L10:
    case LemmaId::strat3: {
      out.Nvec = random_vector(rng, b);
      x["a"] = draw(rng, 0, p - 1);
      x["K"] = draw(rng, 0, b.max_K);
      x["s"] = draw(rng, 0, s_max);
      x["m"] = draw(rng, 0, static_cast<std::uint64_t>(x["K"]) / upow(p, static_cast<unsigned>(x["s"])) + 1);
      break;
    }
    case LemmaId::L11:
    case LemmaId::strat4:
      out.Nvec = random_vector(rng, b);
      x["L"] = draw(rng, 1, out.Nvec.front());
      x["m"] = draw(rng, 0, 10);
      x["s"] = draw(rng, 0, s_max);
      break;
    case LemmaId::L12:
    case LemmaId::L12a:
      out.Nvec = random_vector(rng, b);
      x["L"] = draw(rng, 1, out.Nvec.front());
      x["a"] = draw(rng, 0, p - 1);
      x["j"] = draw(rng, 0, b.max_K);
      break;
    case LemmaId::Ccong:
      out.Nvec = random_vector(rng, b);
      x["L"] = draw(rng, 1, out.Nvec.front());
      x["a"] = draw(rng, 0, p - 1);
      x["K"] = draw(rng, 0, b.max_K);
      x["bold"] = draw(rng, 0, 1);
      break;
    case LemmaId::W1:
      x["r"] = draw(rng, 1, 40);
      break;
    case LemmaId::W2:
      x["J"] = static_cast<std::int64_t>(p) * draw(rng, 1, 60);
      break;
    case LemmaId::W3:
      x["J"] = static_cast<std::int64_t>(p * p) * draw(rng, 1, 12);
      break;
    case LemmaId::congH:
    case LemmaId::congH2:
      x["N"] = draw(rng, 1, 60);
      break;
    case LemmaId::B1:
      x["N"] = draw(rng, 1, b.max_N);
      x["k"] = draw(rng, 1, b.max_k);
      if (p < 3) {
        // 2 <= a < p needs p >= 3.
        x["p"] = 3;
      }
      x["a"] = draw(rng, 2, static_cast<std::uint64_t>(x["p"]) - 1);
      break;
    case LemmaId::B2:
      x["N"] = draw(rng, 1, b.max_N);
      x["k"] = draw(rng, 1, b.max_k);
      x["a"] = draw(rng, 1, p - 1);
      x["j"] = draw(rng, 1, b.max_K);
      break;
    case LemmaId::C1: {
      x["N"] = draw(rng, 1, b.max_N);
      x["k"] = draw(rng, 1, b.max_k);
      std::int64_t m;
      do {
        m = draw(rng, 2, 200);
      } while (m % static_cast<std::int64_t>(p) == 0);
      x["m"] = m;
      break;
    }
    case LemmaId::ultime:
      out.Nvec = random_vector(rng, b);
      x["r"] = draw(rng, 0, s_max);
      x["w"] = draw(rng, 0, upow(p, static_cast<unsigned>(x["r"])) - 1);
      x["m"] = draw(rng, 0, b.max_K);
      break;
    case LemmaId::diviBB:
      out.Nvec = random_vector(rng, b);
      x["m"] = draw(rng, 1, 100);
      break;
    case LemmaId::gammap:
      x["part"] = draw(rng, 1, 2);
      x["n"] = draw(rng, 1, 20);
      if (x["part"] == 2) {
        x["n"] = draw(rng, 1, 5);
        x["k"] = draw(rng, 1, 60);
        // p = 2 also exercises s = 3, past the excluded s = 2.
        std::int64_t s;
        do {
          s = draw(rng, 0, p == 2 ? s_max + 1 : s_max);
        } while (p == 2 && s == 2);
        x["s"] = s;
      }
      break;
  }
  return out;
}

SuiteSummary run_lemma_suite(std::uint64_t seed, std::size_t draws,
                             const SuiteBounds& bounds,
                             const std::vector<LemmaId>& lemmas,
                             const std::function<void(const CongruenceInstance&)>& sink) {
  std::mt19937_64 rng(seed);
  SequenceCache cache;
  SuiteSummary summary;
  for (auto id : lemmas) {
    for (std::size_t i = 0; i < draws; ++i) {
      auto inst = evaluate(id, random_lemma_params(id, rng, bounds), cache);
      ++summary.instances;
      if (!inst.pass()) {
        ++summary.failures;
        ++summary.failures_by_lemma[id];
      }
      if (sink) {
        sink(inst);
      }
    }
  }
  return summary;
}

}  // namespace mirror
