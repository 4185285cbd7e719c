#pragma once

/**
 * @file dwork.hpp
 * @brief Executable forms of the congruences behind the integrality proofs.
 *
 * Everything here is exact: each check evaluates both sides as rationals
 * and compares p-adic valuations. A lemma instance that fails under its
 * hypotheses would contradict a proved statement, so the randomized suite
 * treats any failure as a bug in this library.
 */

#include "mirror/coefficients.hpp"
#include "mirror/report.hpp"
#include "mirror/series.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace mirror {

/// C(a+Kp) = sum_{j=0}^K B(a+jp) B(K-j) (H_{L(K-j)} - p H_{La+Ljp}),
/// with B the plain or bold coefficients of Nvec.
Rational c_sum(const NVector& Nvec, unsigned L, std::uint64_t p,
               std::uint64_t a, std::uint64_t K, Family family);

/// S(a,K,s,p,m) = sum_{j=mp^s}^{(m+1)p^s-1} (B(a+jp)B(K-j) - B(j)B(a+(K-j)p)).
Rational s_sum(const NVector& Nvec, std::uint64_t p, std::uint64_t a,
               std::uint64_t K, unsigned s, std::uint64_t m, Family family);

/// Both sides of Dwork's rearrangement
///   sum_j H_{Lj} (B(a+jp)B(K-j) - B(j)B(a+(K-j)p)) = sum_{s<=r} sum_m Y_{m,s}
/// with r minimal such that K < p^r.
struct Rearrangement {
  Rational lhs;
  Rational rhs;
  unsigned r = 0;
};
Rearrangement rearrangement_sides(const NVector& Nvec, unsigned L,
                                  std::uint64_t p, std::uint64_t a,
                                  std::uint64_t K, Family family);

struct DworkBounds {
  unsigned max_s = 2;
  std::uint64_t max_n = 6;
};

/// Checks |A(0)|_p = 1 and, for every s <= max_s, u < p^s, v < p,
/// n <= max_n,
///   A(v+up+np^{s+1})/A(v+up) - A(u+np^s)/A(u) in p^{s+1} A(n)/A(v+up) Z_p
/// with A the coefficients of the family.
CertReport dwork_conditions_check(Family family, const NVector& Nvec,
                                  std::uint64_t p, const DworkBounds& bounds);

/// S(z^p)/S(z)^p in 1 + p z Z_p[[z]] through order; needs S(0) = 1.
CertReport dieudonne_dwork_check(const TruncSeries& s, std::uint64_t p,
                                 std::size_t order);

/// f(z)g(z^p) - p f(z^p)g(z) in p tau z Z_p[[z]] through order; needs
/// f(0) = 1, g(0) = 0 and tau > 0.
CertReport quotient_congruence_check(const TruncSeries& f, const TruncSeries& g,
                        const Rational& tau, std::uint64_t p,
                        std::size_t order);

enum class LemmaId {
  J,
  L6,
  L10,
  L11,
  L12,
  L12a,
  strat3,
  strat4,
  Ccong,
  W1,
  W2,
  W3,
  congH,
  congH2,
  B1,
  B2,
  C1,
  ultime,
  diviBB,
  gammap,
};

const std::vector<LemmaId>& all_lemmas();
std::string to_string(LemmaId id);
LemmaId parse_lemma(const std::string& text);

/// Named integer parameters plus an optional N vector.
struct LemmaParams {
  std::map<std::string, std::int64_t> values;
  NVector Nvec;

  /// Throws ParameterError naming the missing parameter.
  std::int64_t get(const std::string& name) const;
  std::int64_t get_or(const std::string& name, std::int64_t fallback) const;
};

/// One evaluated lemma instance.
///
/// Most lemmas are memberships: pass iff achieved >= target. The two
/// "if and only if" lemmas (congH, congH2) also predict non-membership;
/// for those expect_member carries the predicted side.
struct CongruenceInstance {
  LemmaId lemma = LemmaId::J;
  LemmaParams params;
  Valuation target;
  Valuation achieved;
  bool expect_member = true;
  std::string detail;

  bool pass() const { return (achieved >= target) == expect_member; }
};

/// Validates the lemma's hypotheses (ParameterError listing the failed one),
/// then evaluates both sides exactly.
CongruenceInstance check_lemma(LemmaId id, const LemmaParams& params);

/// Desk bounds for random draws.
struct SuiteBounds {
  std::uint64_t max_p = 13;
  unsigned max_N = 12;
  unsigned max_k = 2;
  unsigned max_s = 2;
  std::uint64_t max_K = 30;
};

/// Hypothesis-respecting random parameters for a lemma.
LemmaParams random_lemma_params(LemmaId id, std::mt19937_64& rng,
                                const SuiteBounds& bounds);

struct SuiteSummary {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::map<LemmaId, std::size_t> failures_by_lemma;
};

/// Runs `draws` random instances of each lemma in `lemmas` from one seeded
/// generator; every instance is passed to `sink` when given.
SuiteSummary run_lemma_suite(
    std::uint64_t seed, std::size_t draws, const SuiteBounds& bounds,
    const std::vector<LemmaId>& lemmas = all_lemmas(),
    const std::function<void(const CongruenceInstance&)>& sink = {});

}  // namespace mirror
