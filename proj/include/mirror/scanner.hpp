#pragma once

/**
 * @file scanner.hpp
 * @brief Fixed-prime scans of v_p(H_N) and v_p(H_N - 1).
 *
 * For a fixed p the scanner keeps s_N = p^e sum_{n<=N} 1/n modulo
 * p^{K+e}, with e = floor(log_p N_max) so every term is p-integral. Then
 * v_p(H_N) = v_p(s_N) - e as long as v_p(s_N) < K + e - 1; past that the
 * working precision is exhausted and the scan restarts with K doubled.
 * No rationals are formed, so a scan is O(N_max) modular operations.
 */

#include "mirror/padic.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mirror {

struct ScanHit {
  std::uint64_t p = 0;
  std::uint64_t N = 0;
  unsigned shift = 0;  // 0: H_N, 1: H_N - 1
  long valuation = 0;

  friend bool operator==(const ScanHit&, const ScanHit&) = default;
};

/// Raised when the running sum vanishes to working precision.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resumable scan state: (p, N_reached, s_N, K) plus the scale exponent e
/// and the shift, both of which s_N depends on.
struct ScanCheckpoint {
  std::uint64_t p = 0;
  unsigned shift = 0;
  unsigned K = 0;
  unsigned e_max = 0;
  std::uint64_t N_reached = 0;
  Integer s;  // p^e (H_N - shift) mod p^{K+e}, in [0, p^{K+e})

  /// One line: "p N_reached s K e_max shift".
  std::string to_string() const;
  static ScanCheckpoint parse(const std::string& line);
  void save(const std::string& path) const;
  static ScanCheckpoint load(const std::string& path);
};

/// Incremental accumulator over 1..N for one prime.
class HarmonicAccumulator {
 public:
  /// Fresh state at N = 0 scaled for ranges up to N_max.
  HarmonicAccumulator(std::uint64_t p, unsigned shift, unsigned K,
                      std::uint64_t N_max);
  explicit HarmonicAccumulator(const ScanCheckpoint& cp);

  /// Adds 1/n for n = N_reached+1 .. N_to. When `visit` is set it receives
  /// (N, v_p(H_N - shift)) for every N; throws PrecisionExhausted if a
  /// valuation cannot be determined.
  void advance(std::uint64_t N_to,
               const std::function<void(std::uint64_t, long)>& visit = {});

  /// v_p(H_N - shift) at the current N.
  long current_valuation() const;

  /// Raises e_max (lossless: the sum is multiplied by p^delta).
  void rescale(unsigned e_max);

  ScanCheckpoint checkpoint() const;
  std::uint64_t reached() const { return N_; }
  unsigned precision() const { return K_; }

 private:
  void check_modulus();

  std::uint64_t p_;
  unsigned shift_;
  unsigned K_;
  unsigned e_max_;
  std::uint64_t N_ = 0;
  Integer s_;
  Integer modulus_;
};

struct ScanOptions {
  std::uint64_t p = 2;
  std::uint64_t N_max = 0;
  unsigned shift = 0;
  long threshold = 1;
  unsigned K = 8;
  unsigned K_max = 64;
  /// Worker threads; chunks are merged through their prefix sums.
  unsigned threads = 1;
};

struct ScanResult {
  std::vector<ScanHit> hits;
  /// Number of N per valuation level (N = 1 excluded when shift = 1).
  std::map<long, std::uint64_t> histogram;
  unsigned K_used = 0;
  /// One line per precision escalation.
  std::vector<std::string> log;
};

/// Every N <= N_max with v_p(H_N - shift) >= threshold, in increasing N.
/// For shift = 1 the value N = 1 is skipped (H_1 - 1 = 0).
ScanResult scan(const ScanOptions& options,
                const std::function<void(const ScanHit&)>& sink = {});

/// Primes 5 <= p <= p_max with v_p(H_{p-1}) >= 3, together with the
/// valuation found for every prime in the range.
struct WolstenholmeScan {
  std::vector<std::uint64_t> primes;
  std::map<std::uint64_t, long> valuations;
};
WolstenholmeScan wolstenholme_scan(std::uint64_t p_max, unsigned K = 4,
                                   unsigned K_max = 64);

/// vp_rat(H_N - shift, p) by exact rationals; N <= 10^5.
Valuation vp_harmonic_exact(std::uint64_t p, std::uint64_t N, unsigned shift);

/// The 118-digit N with v_83(H_N) = 3, kept for display only.
const std::string& large_p83_example();

void write_hits_csv(std::ostream& os, const std::vector<ScanHit>& hits,
                    bool header = true);

}  // namespace mirror
