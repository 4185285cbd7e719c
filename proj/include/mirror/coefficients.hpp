#pragma once

/**
 * @file coefficients.hpp
 * @brief Hypergeometric coefficient families.
 *
 * Plain family:   B_N(m) = (Nm)!/m!^N and B_Nvec(m) = prod_j B_{N_j}(m).
 * Zudilin family: bold B_N(m) = C_N^m prod_{r coprime to N} (r/N)_m / m!
 *                 = prod_i (alpha_i m)! / prod_i (beta_i m)!,
 *                 with the bold H_N(m) weights and the floor-sum step
 *                 function Delta attached to the same (alpha, beta) data.
 */

#include "mirror/padic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mirror {

using NVector = std::vector<unsigned>;

enum class Family { plain, zudilin };

/// Parameters of a hypergeometric family; L is only used by the L-maps.
struct HyperSpec {
  NVector Nvec;
  unsigned L = 1;
  Family family = Family::plain;
};

/// Per-N data of the Zudilin factorial-ratio representation.
///
/// alpha/beta are kept unreduced: alpha is N over even-size products of
/// distinct prime factors, beta is N over odd-size products, padded with
/// 1's until sum(alpha) == sum(beta).
struct ZudilinData {
  unsigned N = 1;
  unsigned phi = 1;
  std::vector<unsigned> residues;  // 1 <= r <= N, gcd(r, N) = 1, ascending
  Integer C = 1;
  std::vector<unsigned> alpha;
  std::vector<unsigned> beta;
};

/// Cached per N; safe to call from several threads.
const ZudilinData& zudilin_data(unsigned N);

/// Builds the bundle without touching the cache.
ZudilinData compute_zudilin_data(unsigned N);

unsigned euler_phi(unsigned N);

/// (alpha, beta) with common entries cancelled (multiset difference).
struct FactorialRatio {
  std::vector<unsigned> alpha;
  std::vector<unsigned> beta;
};
FactorialRatio normalized_ratio(const ZudilinData& data);

/// prod (alpha_i m)! / prod (beta_i m)! as an exact rational.
Rational factorial_ratio(const FactorialRatio& ratio, std::uint64_t m);
/// Legendre-only valuation of the same ratio.
long vp_factorial_ratio(const FactorialRatio& ratio, std::uint64_t m,
                        std::uint64_t p);

// --- plain coefficients ---------------------------------------------------

Integer bN(unsigned N, std::uint64_t m);
long vp_bN(unsigned N, std::uint64_t m, std::uint64_t p);
Integer bVec(const NVector& Nvec, std::uint64_t m);
long vp_bVec(const NVector& Nvec, std::uint64_t m, std::uint64_t p);

/// B_N(0..max_m), computed incrementally.
std::vector<Integer> bN_table(unsigned N, std::uint64_t max_m);

// --- Zudilin coefficients -------------------------------------------------

enum class BoldMode { pochhammer, factorial };

Rational bbN(unsigned N, std::uint64_t m, BoldMode mode);
/// Factorial-mode value, asserted integral.
Integer bbN_int(unsigned N, std::uint64_t m);
long vp_bbN(unsigned N, std::uint64_t m, std::uint64_t p);
Integer bbVec(const NVector& Nvec, std::uint64_t m);
long vp_bbVec(const NVector& Nvec, std::uint64_t m, std::uint64_t p);
std::vector<Integer> bbN_table(unsigned N, std::uint64_t max_m);

enum class HMode { residues, alphabeta };

/// Bold H_N(m) = sum_j H(r_j/N, m) - phi(N) H(1, m).
Rational hN(unsigned N, std::uint64_t m, HMode mode);

/// Delta(x) = sum floor(alpha_i x) - sum floor(beta_i x).
long delta(unsigned N, const Rational& x);
long delta(const FactorialRatio& ratio, const Rational& x);

// --- coefficient sequences ------------------------------------------------

/// Lazily grown table of B_Nvec(n) (plain) or bold B_Nvec(n) (zudilin).
///
/// at(n) returns 0 for n < 0; this is the single place where the
/// negative-index convention is applied.
class CoefficientSequence {
 public:
  CoefficientSequence(Family family, NVector Nvec);

  Integer at(long n);
  long vp(long n, std::uint64_t p);

  Family family() const { return family_; }
  const NVector& nvec() const { return nvec_; }

 private:
  void grow_to(std::uint64_t n);

  Family family_;
  NVector nvec_;
  std::vector<std::vector<Integer>> factors_;  // per entry of Nvec
  std::vector<Integer> values_;
};

/// M_Nvec = prod N_j!.
Integer capital_M(const NVector& Nvec);

/// Positive divisors of N except 1, descending.
NVector divisor_vector(unsigned N);

std::string nvec_to_string(const NVector& Nvec);
NVector parse_nvec(const std::string& text);

}  // namespace mirror
