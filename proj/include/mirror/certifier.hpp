#pragma once

/**
 * @file certifier.hpp
 * @brief Root-exponent constants and finite-order integrality certification.
 *
 * A passing report is evidence up to the stated order only; a failing one
 * carries the first non-integral coefficient and is conclusive.
 */

#include "mirror/coefficients.hpp"
#include "mirror/report.hpp"
#include "mirror/series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mirror {

/// gcd(N!, N! H_N), i.e. M_(N)/Theta_N.
Integer gcd_sequence_A056612(unsigned N);

/// True iff v_p(H_{p-1}) >= 3, for primes p >= 5.
///
/// Above table_bound the two known Wolstenholme primes are looked up
/// unless force_compute is set; the computation itself is exact
/// (H_{p-1} modulo p^3).
bool is_wolstenholme_prime(std::uint64_t p, std::uint64_t table_bound = 25000,
                           bool force_compute = false);

/// Xi_N: 1 for N = 1, 1/140 for N = 7, else prod_{p<=N} p^{min(2+xi, v_p(H_N))}.
Rational xi(unsigned N);
/// Omega_N = prod_{p<=N} p^{min(2+omega, v_p(H_N - 1))}, N >= 2.
Rational omega_cap(unsigned N);

enum class TheoremId { T1, T2, T3, T3a, T4, Cor1, Conj2 };

std::string to_string(TheoremId id);
TheoremId parse_theorem(const std::string& text);

/// Nvec carries (N^k) for the equal-parameter statements (T1, T3, T3a, Cor1).
struct CertParams {
  NVector Nvec;
  unsigned L = 1;
};

struct RootExponent {
  Rational value;
  std::string description;
};

RootExponent theorem_exponent(TheoremId id, const CertParams& params);

struct TheoremCertificate {
  RootExponent exponent;
  CertReport report;
};

/// Builds the theorem's series, raises it to the theorem's exponent and
/// checks integrality through `order`.
TheoremCertificate certify_theorem(TheoremId id, const CertParams& params,
                                   std::size_t order);

/// Integrality of exp(e G/F) through order, stopping at the first failure.
CertReport root_integrality(const TruncSeries& G, const TruncSeries& F,
                            const Rational& e, std::size_t order);

struct PrimeRootExponent {
  std::uint64_t p = 0;
  unsigned exponent = 0;
  /// First non-integral index of the root with exponent + 1.
  std::optional<std::size_t> witness_index;
};

/// EMPIRICAL: the largest root verified integral through `order` only.
struct MaxRootResult {
  Integer value = 1;
  std::vector<PrimeRootExponent> primes;
  std::size_t order = 0;
};

/// Largest V with s^{1/V} integral to order, restricted to primes <= bound.
MaxRootResult empirical_max_root(const TruncSeries& s,
                                 std::uint64_t prime_bound, std::size_t order);
/// Same for s = exp(G/F), without forming s.
MaxRootResult empirical_max_root(const TruncSeries& G, const TruncSeries& F,
                                 std::uint64_t prime_bound, std::size_t order);

/// Conjectural optimal root with its empirical evidence.
struct ConjecturalRoot {
  Integer value;
  CertReport root;
  /// One per prime p <= N; pass means a non-integral coefficient of the
  /// 1/(p value) root was found within order.
  std::vector<CertReport> sharpness;

  bool pass() const;
};

/// t_N = Xi_N N!, checked on q_{N,N} (k = 1).
ConjecturalRoot tN(unsigned N, std::size_t order);
/// u_N = Omega_N N!, checked on q-tilde_N (k = 1).
ConjecturalRoot uN(unsigned N, std::size_t order);

enum class Proposition { p_gt_N, vp3, p_gt_N_tilde, vp3_tilde };

std::string to_string(Proposition prop);
Proposition parse_proposition(const std::string& text);

/// Exhibits the obstruction of a sharpness proposition; throws
/// ParameterError when its hypotheses fail.
CertReport sharpness_witness(Proposition prop, std::uint64_t p, unsigned N);

}  // namespace mirror
