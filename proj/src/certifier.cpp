#include "mirror/certifier.hpp"

#include "mirror/mirror_maps.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mirror {

namespace {

unsigned common_entry(const NVector& Nvec, const char* what) {
  if (Nvec.empty()) {
    throw ParameterError("empty N vector");
  }
  for (auto n : Nvec) {
    if (n != Nvec.front()) {
      throw ParameterError(std::string(what) + " needs N = (N, ..., N)");
    }
  }
  return Nvec.front();
}

Integer factorial_power(unsigned N, unsigned k) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), factorial(N).get_mpz_t(), k);
  return out;
}

Integer power(std::uint64_t p, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), e);
  return out;
}

Rational prime_power(std::uint64_t p, long e) {
  Integer pe = power(p, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? make_rational(1, pe) : Rational(pe);
}

Integer require_integer(const Rational& q, const std::string& what) {
  if (!is_integral(q)) {
    std::ostringstream os;
    os << what << " = " << q << " is not an integer";
    throw std::logic_error(os.str());
  }
  return q.get_num();
}

// H_{p-1} mod p^3, exactly, via modular inverses.
bool harmonic_vanishes_mod_p3(std::uint64_t p) {
  Integer mod = power(p, 3);
  if (mod.fits_ulong_p()) {
    using u128 = unsigned __int128;
    const std::uint64_t m = mod.get_ui();
    // Batch inversion: one modular inverse for the whole range.
    std::vector<std::uint64_t> prefix(p);
    prefix[0] = 1;
    for (std::uint64_t j = 1; j < p; ++j) {
      prefix[j] = static_cast<std::uint64_t>(static_cast<u128>(prefix[j - 1]) * j % m);
    }
    Integer total_inv;
    Integer last(static_cast<unsigned long>(prefix[p - 1]));
    mpz_invert(total_inv.get_mpz_t(), last.get_mpz_t(), mod.get_mpz_t());
    std::uint64_t inv = total_inv.get_ui();
    std::uint64_t sum = 0;
    for (std::uint64_t j = p - 1; j >= 1; --j) {
      // inv = 1/(j!) here; 1/j = (j-1)!/j!.
      std::uint64_t inv_j = static_cast<std::uint64_t>(static_cast<u128>(inv) * prefix[j - 1] % m);
      sum = static_cast<std::uint64_t>((static_cast<u128>(sum) + inv_j) % m);
      inv = static_cast<std::uint64_t>(static_cast<u128>(inv) * j % m);
    }
    return sum == 0;
  }
  Integer sum = 0, inv, jj;
  for (std::uint64_t j = 1; j < p; ++j) {
    jj = static_cast<unsigned long>(j);
    mpz_invert(inv.get_mpz_t(), jj.get_mpz_t(), mod.get_mpz_t());
    sum += inv;
  }
  return mpz_divisible_p(sum.get_mpz_t(), mod.get_mpz_t()) != 0;
}

}  // namespace

Integer gcd_sequence_A056612(unsigned N) {
  Integer f = factorial(N);
  Rational fh = harmonic(N) * f;
  return gcd(f, require_integer(fh, "N! H_N"));
}

bool is_wolstenholme_prime(std::uint64_t p, std::uint64_t table_bound,
                           bool force_compute) {
  if (p < 5 || !is_prime(p)) {
    throw ParameterError("Wolstenholme test needs a prime p >= 5");
  }
  if (p > table_bound && !force_compute) {
    return p == 16843 || p == 2124679;
  }
  return harmonic_vanishes_mod_p3(p);
}

Rational xi(unsigned N) {
  if (N == 0) {
    throw ParameterError("xi needs N >= 1");
  }
  if (N == 1) {
    return 1;
  }
  if (N == 7) {
    return make_rational(1, 140);
  }
  Rational h = harmonic(N);
  Rational out = 1;
  for (auto p : primes_up_to(N)) {
    bool bump = N % p == 0 || (p >= 5 && is_wolstenholme_prime(p));
    long cap = 2 + (bump ? 1 : 0);
    auto v = vp_rat(h, p);
    long e = v.is_infinite() ? cap : std::min(cap, v.value());
    out *= prime_power(p, e);
  }
  return out;
}

Rational omega_cap(unsigned N) {
  if (N < 2) {
    throw ParameterError("omega needs N >= 2");
  }
  Rational h = harmonic(N) - 1;
  Rational out = 1;
  for (auto p : primes_up_to(N)) {
    bool bump = N % p == 1 || N % p == p - 1 || (p >= 5 && is_wolstenholme_prime(p));
    long cap = 2 + (bump ? 1 : 0);
    auto v = vp_rat(h, p);
    long e = v.is_infinite() ? cap : std::min(cap, v.value());
    out *= prime_power(p, e);
  }
  return out;
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1: return "T1";
    case TheoremId::T2: return "T2";
    case TheoremId::T3: return "T3";
    case TheoremId::T3a: return "T3a";
    case TheoremId::T4: return "T4";
    case TheoremId::Cor1: return "Cor1";
    case TheoremId::Conj2: return "Conj2";
  }
  return "?";
}

TheoremId parse_theorem(const std::string& text) {
  for (auto id : {TheoremId::T1, TheoremId::T2, TheoremId::T3, TheoremId::T3a,
                  TheoremId::T4, TheoremId::Cor1, TheoremId::Conj2}) {
    if (to_string(id) == text) {
      return id;
    }
  }
  throw ParameterError("unknown theorem id '" + text + "'");
}

RootExponent theorem_exponent(TheoremId id, const CertParams& params) {
  const auto& v = params.Nvec;
  if (v.empty()) {
    throw ParameterError("empty N vector");
  }
  const unsigned top = *std::max_element(v.begin(), v.end());
  auto check_L = [&] {
    if (params.L < 1 || params.L > top) {
      throw ParameterError("L must satisfy 1 <= L <= max(N)");
    }
  };
  const unsigned k = static_cast<unsigned>(v.size());
  switch (id) {
    case TheoremId::T1:
      common_entry(v, "T1");
      check_L();
      return {1, "q_{L,N} integral"};
    case TheoremId::T2:
      check_L();
      return {make_rational(theta(params.L), capital_M(v)), "Theta_L / M_N"};
    case TheoremId::T3: {
      unsigned N = common_entry(v, "T3");
      Integer t = require_integer(xi(N) * factorial_power(N, k), "Xi_N N!^k");
      return {make_rational(1, t), "1 / (Xi_N N!^k)"};
    }
    case TheoremId::T3a: {
      unsigned N = common_entry(v, "T3a");
      if (N < 2) {
        throw ParameterError("T3a needs N >= 2");
      }
      Integer u = require_integer(omega_cap(N) * factorial_power(N, k), "Omega_N N!^k");
      return {make_rational(1, u * k * N), "1 / (Omega_N N!^k k N)"};
    }
    case TheoremId::Cor1: {
      unsigned N = common_entry(v, "Cor1");
      return {make_rational(theta(N), factorial_power(N, k) * k * N),
              "Theta_N / (N!^k k N)"};
    }
    case TheoremId::T4:
      check_L();
      return {1, "bold q_{L,N} integral"};
    case TheoremId::Conj2:
      return {1, "bold q_N in z Z[[z]]"};
  }
  throw ParameterError("unknown theorem");
}

CertReport root_integrality(const TruncSeries& G, const TruncSeries& F,
                            const Rational& e, std::size_t order) {
  auto s = exp_of_quotient(G, F, e, order, true);
  const std::size_t last = s.order();
  if (s[last].get_den() != 1) {
    auto rep = integrality_report(s);
    rep.order = order;
    return rep;
  }
  if (last < std::min({order, G.order(), F.order()})) {
    throw std::logic_error("root search stopped early without a witness");
  }
  return CertReport::passed(last, "integral through index " + std::to_string(last));
}

TheoremCertificate certify_theorem(TheoremId id, const CertParams& params,
                                   std::size_t order) {
  TheoremCertificate out;
  out.exponent = theorem_exponent(id, params);
  const auto& v = params.Nvec;
  const unsigned k = static_cast<unsigned>(v.size());
  TruncSeries G, F;
  Rational e = out.exponent.value;
  std::size_t effective = order;
  switch (id) {
    case TheoremId::T1:
    case TheoremId::T2:
      G = build_GL(v, params.L, Family::plain, order);
      F = build_F(v, Family::plain, order);
      break;
    case TheoremId::T3:
      G = build_GL(v, v.front(), Family::plain, order);
      F = build_F(v, Family::plain, order);
      break;
    case TheoremId::T3a:
    case TheoremId::Cor1:
      // (z^{-1} q_N)^e = q-tilde^{e k N}
      G = build_G_tilde(v.front(), k, order);
      F = build_FN(v.front(), k, order);
      e *= k * v.front();
      break;
    case TheoremId::T4:
      G = build_GL(v, params.L, Family::zudilin, order);
      F = build_F(v, Family::zudilin, order);
      break;
    case TheoremId::Conj2:
      // z exp(G/F) to order needs exp(G/F) to order - 1.
      effective = order == 0 ? 0 : order - 1;
      G = build_bold_G(v, effective);
      F = build_F(v, Family::zudilin, effective);
      break;
  }
  out.report = root_integrality(G, F, e, effective);
  out.report.order = order;
  std::ostringstream os;
  os << to_string(id) << " " << nvec_to_string(v) << " L=" << params.L
     << " exponent " << out.exponent.value << ": " << out.report.detail;
  out.report.detail = os.str();
  return out;
}

MaxRootResult empirical_max_root(const TruncSeries& G, const TruncSeries& F,
                                 std::uint64_t prime_bound, std::size_t order) {
  order = std::min({order, G.order(), F.order()});
  if (!root_integrality(G, F, 1, order).pass) {
    throw ParameterError("series is not integral to the requested order");
  }
  if (G.truncated(order).is_zero()) {
    throw ParameterError("every root of the constant series 1 is integral");
  }
  MaxRootResult out;
  out.order = order;
  for (auto p : primes_up_to(prime_bound)) {
    PrimeRootExponent pr;
    pr.p = p;
    Integer denom = p;
    for (;;) {
      auto rep = root_integrality(G, F, make_rational(1, denom), order);
      if (!rep.pass) {
        pr.witness_index = rep.witness_index;
        break;
      }
      ++pr.exponent;
      denom *= p;
    }
    out.value *= power(p, pr.exponent);
    out.primes.push_back(pr);
  }
  return out;
}

MaxRootResult empirical_max_root(const TruncSeries& s,
                                 std::uint64_t prime_bound, std::size_t order) {
  if (s[0] != 1) {
    throw ParameterError("empirical_max_root needs constant term 1");
  }
  auto trimmed = s.truncated(std::min(order, s.order()));
  if (!integrality_report(trimmed).pass) {
    throw ParameterError("series is not integral to the requested order");
  }
  return empirical_max_root(log_series(trimmed),
                            TruncSeries::constant(1, trimmed.order()),
                            prime_bound, trimmed.order());
}

bool ConjecturalRoot::pass() const {
  return root.pass && std::all_of(sharpness.begin(), sharpness.end(),
                                  [](const CertReport& r) { return r.pass; });
}

namespace {

ConjecturalRoot conjectural_root(const Integer& value, const TruncSeries& G,
                                 const TruncSeries& F, unsigned N,
                                 std::size_t order) {
  ConjecturalRoot out;
  out.value = value;
  out.root = root_integrality(G, F, make_rational(1, value), order);
  for (auto p : primes_up_to(N)) {
    auto rep = root_integrality(G, F, make_rational(1, value * p), order);
    CertReport sharp;
    sharp.order = order;
    sharp.pass = !rep.pass;
    sharp.witness_index = rep.witness_index;
    std::ostringstream os;
    os << "p=" << p << ": ";
    if (rep.pass) {
      os << "no non-integral coefficient through index " << order;
    } else {
      os << "non-integral at index " << *rep.witness_index;
    }
    sharp.detail = os.str();
    out.sharpness.push_back(sharp);
  }
  return out;
}

}  // namespace

ConjecturalRoot tN(unsigned N, std::size_t order) {
  if (N == 0) {
    throw ParameterError("t_N needs N >= 1");
  }
  Integer t = require_integer(xi(N) * factorial(N), "Xi_N N!");
  return conjectural_root(t, build_GL({N}, N, Family::plain, order),
                          build_F({N}, Family::plain, order), N, order);
}

ConjecturalRoot uN(unsigned N, std::size_t order) {
  if (N < 2) {
    throw ParameterError("u_N needs N >= 2");
  }
  Integer u = require_integer(omega_cap(N) * factorial(N), "Omega_N N!");
  return conjectural_root(u, build_G_tilde(N, 1, order), build_FN(N, 1, order),
                          N, order);
}

std::string to_string(Proposition prop) {
  switch (prop) {
    case Proposition::p_gt_N: return "p-gt-N";
    case Proposition::vp3: return "vp3";
    case Proposition::p_gt_N_tilde: return "p-gt-N-tilde";
    case Proposition::vp3_tilde: return "vp3-tilde";
  }
  return "?";
}

Proposition parse_proposition(const std::string& text) {
  static const std::map<std::string, Proposition> names = {
      {"p-gt-N", Proposition::p_gt_N},
      {"p>N", Proposition::p_gt_N},
      {"vp3", Proposition::vp3},
      {"vp=3", Proposition::vp3},
      {"p-gt-N-tilde", Proposition::p_gt_N_tilde},
      {"p>N2", Proposition::p_gt_N_tilde},
      {"vp3-tilde", Proposition::vp3_tilde},
      {"vp=32", Proposition::vp3_tilde}};
  auto it = names.find(text);
  if (it == names.end()) {
    throw ParameterError("unknown proposition '" + text + "'");
  }
  return it->second;
}

CertReport sharpness_witness(Proposition prop, std::uint64_t p, unsigned N) {
  if (!is_prime(p)) {
    throw ParameterError("p must be prime");
  }
  if (N == 0) {
    throw ParameterError("N must be >= 1");
  }
  std::ostringstream os;
  switch (prop) {
    case Proposition::p_gt_N:
    case Proposition::p_gt_N_tilde: {
      const bool tilde = prop == Proposition::p_gt_N_tilde;
      if (p <= N || (tilde && N < 2)) {
        throw ParameterError(tilde ? "needs p > N >= 2" : "needs p > N");
      }
      // Least a with aN >= p (a = 1 when N = 1).
      std::uint64_t a = N == 1 ? 1 : (p + N - 1) / N;
      Rational h = harmonic(static_cast<std::uint64_t>(N) * a);
      if (tilde) {
        h -= harmonic(a);
      }
      Valuation v = Valuation(vp_bN(N, a, p)) + vp_rat(h, p);
      os << "a=" << a << ", v_p(B_N(a) " << (tilde ? "(H_{Na} - H_a)" : "H_{Na}")
         << ") = " << v;
      if (a < p && v == Valuation(0)) {
        auto r = CertReport::passed(a, os.str());
        r.witness_index = a;
        r.witness_valuation = v;
        return r;
      }
      return CertReport::failed(a, a, os.str(), v);
    }
    case Proposition::vp3:
    case Proposition::vp3_tilde: {
      const bool tilde = prop == Proposition::vp3_tilde;
      if (p > N) {
        throw ParameterError("needs p <= N");
      }
      Rational hN = harmonic(N);
      Rational target = tilde ? hN - 1 : hN;
      if (vp_rat(target, p) != Valuation(3)) {
        throw ParameterError(tilde ? "needs v_p(H_N - 1) = 3" : "needs v_p(H_N) = 3");
      }
      if (p >= 5 && is_wolstenholme_prime(p)) {
        throw ParameterError("p must not be a Wolstenholme prime");
      }
      if (!tilde && N % p == 0) {
        throw ParameterError("p must not divide N");
      }
      if (tilde && (N % p == 1 || N % p == p - 1)) {
        throw ParameterError("N must not be +-1 mod p");
      }
      const std::uint64_t np = static_cast<std::uint64_t>(N) * p;
      Rational hp = harmonic(np);
      Rational h1 = target;
      if (tilde) {
        hp -= harmonic(p);
      }
      Rational c = h1 * bN(N, 1) - Rational(bN(N, p) * p) * hp;
      Valuation v = vp_rat(c, p);
      long bound = 4 + legendre_vp_factorial(N, p);
      os << "v_p(C(p)) = " << v << ", membership needs >= " << bound;
      if (v < Valuation(bound)) {
        auto r = CertReport::passed(p, os.str());
        r.witness_index = p;
        r.witness_valuation = v;
        return r;
      }
      return CertReport::failed(p, p, os.str(), v);
    }
  }
  throw ParameterError("unknown proposition");
}

}  // namespace mirror
