#include "doctest.h"

#include "mirror/scanner.hpp"

#include <cstdio>
#include <set>
#include <sstream>

using namespace mirror;

namespace {

std::set<std::uint64_t> hit_set(const ScanResult& r) {
  std::set<std::uint64_t> out;
  for (const auto& h : r.hits) {
    out.insert(h.N);
  }
  return out;
}

ScanOptions opts(std::uint64_t p, std::uint64_t N_max, unsigned shift, long threshold,
                 unsigned K) {
  ScanOptions o;
  o.p = p;
  o.N_max = N_max;
  o.shift = shift;
  o.threshold = threshold;
  o.K = K;
  return o;
}

}  // namespace

TEST_CASE("p = 11 hits with valuation >= 3") {
  auto r = scan(opts(11, 11000, 0, 3, 8));
  CHECK(hit_set(r) == std::set<std::uint64_t>{848, 9338, 10583});
  for (const auto& h : r.hits) {
    CHECK(h.valuation == 3);
  }
}

TEST_CASE("positive 3-adic and shifted 5-adic valuations") {
  CHECK(hit_set(scan(opts(3, 100000, 0, 1, 6))) == std::set<std::uint64_t>{2, 7, 22});
  CHECK(hit_set(scan(opts(5, 100000, 1, 1, 6))) == std::set<std::uint64_t>{3, 21, 23});
  CHECK(hit_set(scan(opts(5, 100000, 0, 1, 6))) == std::set<std::uint64_t>{4, 20, 24});
  CHECK(hit_set(scan(opts(3, 100000, 1, 1, 6))) == std::set<std::uint64_t>{66, 68});
}

TEST_CASE("exact valuations") {
  for (std::uint64_t L = 1; L <= 4096; L += (L < 64 ? 1 : 37)) {
    long expected = 0;
    for (std::uint64_t x = L; x >= 2; x /= 2) {
      --expected;
    }
    REQUIRE(vp_harmonic_exact(2, L, 0) == Valuation(expected));
  }
  CHECK(vp_harmonic_exact(5, 4, 0) == Valuation(2));
  CHECK(vp_harmonic_exact(3, 66, 1) == Valuation(1));
  CHECK(vp_harmonic_exact(3, 68, 1) == Valuation(1));
  CHECK(vp_harmonic_exact(7, 1, 1).is_infinite());
  CHECK_THROWS_AS(vp_harmonic_exact(3, 100001, 0), ParameterError);
}

TEST_CASE("scan agrees with exact rationals on N <= 10^4") {
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (unsigned shift : {0u, 1u}) {
      std::map<std::uint64_t, long> seen;
      HarmonicAccumulator acc(p, shift, 6, 10000);
      acc.advance(10000, [&](std::uint64_t N, long v) { seen[N] = v; });
      REQUIRE(seen.size() == (shift == 1 ? 9999u : 10000u));
      for (auto [N, v] : seen) {
        REQUIRE(vp_harmonic_exact(p, N, shift) == Valuation(v));
      }
    }
  }
}

TEST_CASE("histogram counts every N once") {
  auto r = scan(opts(7, 5000, 0, 1, 6));
  std::uint64_t total = 0, positive = 0;
  for (auto [v, count] : r.histogram) {
    total += count;
    if (v >= 1) {
      positive += count;
    }
  }
  CHECK(total == 5000);
  CHECK(positive == r.hits.size());
}

TEST_CASE("hits obey the lower bounds on L") {
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u}) {
    for (const auto& h : scan(opts(p, 20000, 0, 1, 6)).hits) {
      if (h.N < p) {
        continue;
      }
      REQUIRE(h.N >= 2 * p);
      if (p != 3) {
        REQUIRE(h.N >= 3 * p);
      }
      if (p != 3 && p != 5 && p != 11) {
        REQUIRE(h.N >= 5 * p);
      }
      if (h.valuation > 2) {
        REQUIRE(h.N >= 6 * p);
      }
    }
    for (const auto& h : scan(opts(p, 20000, 1, 1, 6)).hits) {
      if (h.N < p) {
        continue;
      }
      REQUIRE(h.N >= 4 * p);
      if (p != 5) {
        REQUIRE(h.N >= 6 * p);
      }
    }
  }
}

TEST_CASE("chunked and checkpointed scans equal one-shot scans") {
  auto whole = scan(opts(11, 30000, 0, 1, 8));
  for (unsigned threads : {2u, 3u, 7u}) {
    auto o = opts(11, 30000, 0, 1, 8);
    o.threads = threads;
    auto split = scan(o);
    REQUIRE(split.hits == whole.hits);
    REQUIRE(split.histogram == whole.histogram);
  }
  // Two sequential chunks through a checkpoint file.
  std::vector<ScanHit> hits;
  auto collect = [&](std::uint64_t N, long v) {
    if (v >= 1) {
      hits.push_back({11, N, 0, v});
    }
  };
  HarmonicAccumulator first(11, 0, 8, 30000);
  first.advance(12345, collect);
  const std::string path = "scanner_checkpoint_test.txt";
  first.checkpoint().save(path);
  HarmonicAccumulator second(ScanCheckpoint::load(path));
  std::remove(path.c_str());
  second.advance(30000, collect);
  CHECK(hits == whole.hits);
}

TEST_CASE("resuming past the scaled range rescales losslessly") {
  HarmonicAccumulator small(3, 1, 6, 100);
  small.advance(100);
  auto cp = small.checkpoint();
  HarmonicAccumulator resumed(cp);
  std::map<std::uint64_t, long> tail;
  resumed.advance(5000, [&](std::uint64_t N, long v) { tail[N] = v; });
  for (std::uint64_t N = 101; N <= 5000; N += 97) {
    REQUIRE(vp_harmonic_exact(3, N, 1) == Valuation(tail.at(N)));
  }
  CHECK(resumed.checkpoint().e_max == 7u);
}

TEST_CASE("checkpoint text round-trip and validation") {
  HarmonicAccumulator acc(5, 1, 6, 1000);
  acc.advance(777);
  auto cp = acc.checkpoint();
  auto back = ScanCheckpoint::parse(cp.to_string());
  CHECK(back.p == 5);
  CHECK(back.N_reached == 777);
  CHECK(back.s == cp.s);
  CHECK(back.K == 6);
  CHECK(back.e_max == cp.e_max);
  CHECK(back.shift == 1);
  CHECK_THROWS_AS(ScanCheckpoint::parse("5 777"), ParameterError);
  CHECK_THROWS_AS(ScanCheckpoint::parse("4 1 0 6 0 0"), ParameterError);
  CHECK_THROWS_AS(ScanCheckpoint::parse("5 1 99999999999 2 0 0"), ParameterError);
}

TEST_CASE("precision escalation") {
  // v_11(H_848) = 3 needs more than K = 5 digits at threshold 3.
  auto o = opts(11, 1000, 0, 3, 5);
  auto r = scan(o);
  CHECK(hit_set(r) == std::set<std::uint64_t>{848});
  CHECK(r.K_used == 5);
  // With K = 3 the sum at 848 vanishes to working precision; K doubles.
  HarmonicAccumulator tight(11, 0, 3, 848);
  CHECK_THROWS_AS(tight.advance(848, [](std::uint64_t, long) {}), PrecisionExhausted);
  auto o2 = opts(11, 1000, 0, 1, 3);
  auto r2 = scan(o2);
  CHECK(r2.K_used == 6);
  CHECK_FALSE(r2.log.empty());
  CHECK(hit_set(r2).count(848) == 1);
  auto o3 = opts(11, 1000, 0, 1, 3);
  o3.K_max = 5;
  CHECK_THROWS_AS(scan(o3), PrecisionExhausted);
  CHECK_THROWS_AS(scan(opts(11, 1000, 0, 3, 4)), ParameterError);
}

TEST_CASE("big-modulus path agrees with the word-size path") {
  // p^{K+e} far beyond 2^63 forces the GMP accumulator.
  HarmonicAccumulator big(13, 0, 20, 3000), small(13, 0, 6, 3000);
  std::vector<long> a, b;
  big.advance(3000, [&](std::uint64_t, long v) { a.push_back(v); });
  small.advance(3000, [&](std::uint64_t, long v) { b.push_back(v); });
  CHECK(a == b);
}

TEST_CASE("Wolstenholme scan") {
  CHECK(wolstenholme_scan(100).primes.empty());
  auto w = wolstenholme_scan(20000);
  CHECK(w.primes == std::vector<std::uint64_t>{16843});
  for (auto [p, v] : w.valuations) {
    REQUIRE(v >= 2);
  }
  CHECK(w.valuations.at(16843) >= 3);
  auto small = wolstenholme_scan(400);
  for (auto [p, v] : small.valuations) {
    REQUIRE(vp_harmonic_exact(p, p - 1, 0) == Valuation(v));
  }
}

TEST_CASE("CSV emission and the display fixture") {
  std::ostringstream os;
  write_hits_csv(os, {{11, 848, 0, 3}});
  CHECK(os.str() == "p,N,shift,valuation\n11,848,0,3\n");
  CHECK(large_p83_example().size() == 121);
  CHECK(large_p83_example().substr(0, 5) == "79781");
}
