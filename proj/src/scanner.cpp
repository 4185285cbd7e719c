#include "mirror/scanner.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

namespace mirror {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::size_t kBatch = 1 << 15;

unsigned floor_log(u64 p, u64 n) {
  unsigned e = 0;
  for (u64 x = n; x >= p; x /= p) {
    ++e;
  }
  return e;
}

Integer ipow(u64 p, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), e);
  return out;
}

long vp_u64(u64 x, u64 p) {
  if (p == 2) {
    return __builtin_ctzll(x);
  }
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// Adds p^e/n for n in (from, to] to s modulo m (< 2^63), one modular
// inverse per batch. visit(N, v_p(s_N)) is called when set; s_N == 0
// reports v = -1.
template <typename Visit>
u64 accumulate_u64(u64 s, u64 from, u64 to, u64 p, unsigned e, u64 m,
                   const std::vector<u64>& ppow, Visit&& visit) {
  std::vector<u64> unit(kBatch), prefix(kBatch), scale(kBatch);
  Integer mz(static_cast<unsigned long>(m)), tmp;
  for (u64 lo = from + 1; lo <= to; lo += kBatch) {
    const u64 hi = std::min<u64>(to, lo + kBatch - 1);
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    u64 acc = 1;
    for (std::size_t i = 0; i < len; ++i) {
      u64 n = lo + i;
      unsigned v = 0;
      while (n % p == 0) {
        n /= p;
        ++v;
      }
      unit[i] = n % m;
      scale[i] = ppow[e - v];
      prefix[i] = acc;  // product of units before i
      acc = static_cast<u64>(static_cast<u128>(acc) * unit[i] % m);
    }
    tmp = static_cast<unsigned long>(acc);
    mpz_invert(tmp.get_mpz_t(), tmp.get_mpz_t(), mz.get_mpz_t());
    u64 inv = tmp.get_ui();  // inverse of the product of units [0, i]
    // Backward pass turns the running inverse into individual inverses.
    for (std::size_t i = len; i-- > 0;) {
      u64 inv_i = static_cast<u64>(static_cast<u128>(inv) * prefix[i] % m);
      inv = static_cast<u64>(static_cast<u128>(inv) * unit[i] % m);
      unit[i] = static_cast<u64>(static_cast<u128>(inv_i) * scale[i] % m);
    }
    for (std::size_t i = 0; i < len; ++i) {
      s += unit[i];
      if (s >= m) {
        s -= m;
      }
      visit(lo + i, s == 0 ? -1 : vp_u64(s, p));
    }
  }
  return s;
}

}  // namespace

// --- checkpoint -------------------------------------------------------------

std::string ScanCheckpoint::to_string() const {
  std::ostringstream os;
  os << p << ' ' << N_reached << ' ' << s.get_str() << ' ' << K << ' ' << e_max
     << ' ' << shift;
  return os.str();
}

ScanCheckpoint ScanCheckpoint::parse(const std::string& line) {
  std::istringstream is(line);
  ScanCheckpoint cp;
  std::string s_text;
  if (!(is >> cp.p >> cp.N_reached >> s_text >> cp.K >> cp.e_max >> cp.shift)) {
    throw ParameterError("malformed checkpoint line: '" + line + "'");
  }
  if (cp.s.set_str(s_text, 10) != 0 || cp.s < 0) {
    throw ParameterError("malformed checkpoint sum: '" + s_text + "'");
  }
  if (!is_prime(cp.p) || cp.shift > 1 || cp.K == 0) {
    throw ParameterError("checkpoint fields out of range");
  }
  if (cp.s >= ipow(cp.p, cp.K + cp.e_max)) {
    throw ParameterError("checkpoint sum exceeds its modulus");
  }
  return cp;
}

void ScanCheckpoint::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write checkpoint " + path);
  }
  out << to_string() << '\n';
}

ScanCheckpoint ScanCheckpoint::load(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  if (!in || !std::getline(in, line)) {
    throw std::runtime_error("cannot read checkpoint " + path);
  }
  return parse(line);
}

// --- accumulator ------------------------------------------------------------

HarmonicAccumulator::HarmonicAccumulator(std::uint64_t p, unsigned shift,
                                         unsigned K, std::uint64_t N_max)
    : p_(p), shift_(shift), K_(K), e_max_(N_max == 0 ? 0 : floor_log(p, N_max)) {
  if (!is_prime(p)) {
    throw ParameterError("scan needs a prime p");
  }
  if (shift > 1) {
    throw ParameterError("shift must be 0 or 1");
  }
  if (K == 0) {
    throw ParameterError("precision K must be positive");
  }
  check_modulus();
  // H_0 - shift = -shift.
  s_ = shift == 1 ? Integer(modulus_ - ipow(p, e_max_)) : Integer(0);
}

HarmonicAccumulator::HarmonicAccumulator(const ScanCheckpoint& cp)
    : p_(cp.p), shift_(cp.shift), K_(cp.K), e_max_(cp.e_max), N_(cp.N_reached), s_(cp.s) {
  if (!is_prime(p_) || shift_ > 1 || K_ == 0) {
    throw ParameterError("invalid checkpoint");
  }
  check_modulus();
  if (s_ < 0 || s_ >= modulus_) {
    throw ParameterError("checkpoint sum outside [0, p^{K+e})");
  }
}

void HarmonicAccumulator::check_modulus() { modulus_ = ipow(p_, K_ + e_max_); }

void HarmonicAccumulator::rescale(unsigned e_max) {
  if (e_max <= e_max_) {
    return;
  }
  s_ *= ipow(p_, e_max - e_max_);
  e_max_ = e_max;
  check_modulus();
  s_ %= modulus_;
}

void HarmonicAccumulator::advance(
    std::uint64_t N_to, const std::function<void(std::uint64_t, long)>& visit) {
  if (N_to <= N_) {
    return;
  }
  rescale(floor_log(p_, N_to));
  const long limit = static_cast<long>(K_ + e_max_) - 1;
  const long e = static_cast<long>(e_max_);
  auto report = [&](u64 N, long v) {
    if (shift_ == 1 && N == 1) {
      return;  // H_1 - 1 = 0
    }
    if (v < 0 || v >= limit) {
      std::ostringstream os;
      os << "precision exhausted at p=" << p_ << " N=" << N << " (K=" << K_ << ")";
      throw PrecisionExhausted(os.str());
    }
    visit(N, v - e);
  };
  const bool fast = modulus_ < (Integer(1) << 63);
  if (fast) {
    const u64 m = modulus_.get_ui();
    std::vector<u64> ppow(e_max_ + 1, 1);
    for (unsigned i = 1; i <= e_max_; ++i) {
      ppow[i] = ppow[i - 1] * p_;
    }
    u64 s = s_.get_ui();
    if (visit) {
      s = accumulate_u64(s, N_, N_to, p_, e_max_, m, ppow, report);
    } else {
      s = accumulate_u64(s, N_, N_to, p_, e_max_, m, ppow, [](u64, long) {});
    }
    s_ = static_cast<unsigned long>(s);
  } else {
    Integer inv, unit;
    for (u64 n = N_ + 1; n <= N_to; ++n) {
      u64 u = n;
      unsigned v = 0;
      while (u % p_ == 0) {
        u /= p_;
        ++v;
      }
      unit = static_cast<unsigned long>(u);
      mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), modulus_.get_mpz_t());
      s_ += inv * ipow(p_, e_max_ - v);
      s_ %= modulus_;
      if (visit) {
        report(n, s_ == 0 ? -1 : vp_int(s_, p_).value());
      }
    }
  }
  N_ = N_to;
}

long HarmonicAccumulator::current_valuation() const {
  const long limit = static_cast<long>(K_ + e_max_) - 1;
  if (s_ == 0 || vp_int(s_, p_) >= Valuation(limit)) {
    throw PrecisionExhausted("precision exhausted at N=" + std::to_string(N_) +
                             " (K=" + std::to_string(K_) + ")");
  }
  return vp_int(s_, p_).value() - static_cast<long>(e_max_);
}

ScanCheckpoint HarmonicAccumulator::checkpoint() const {
  ScanCheckpoint cp;
  cp.p = p_;
  cp.shift = shift_;
  cp.K = K_;
  cp.e_max = e_max_;
  cp.N_reached = N_;
  cp.s = s_;
  return cp;
}

// --- scans ------------------------------------------------------------------

namespace {

struct ChunkOutput {
  std::vector<ScanHit> hits;
  std::map<long, std::uint64_t> histogram;
};

ScanResult scan_at_precision(const ScanOptions& o, unsigned K) {
  const unsigned threads = std::max(1u, o.threads);
  HarmonicAccumulator base(o.p, o.shift, K, o.N_max);
  const u64 span = o.N_max;
  const u64 chunk = (span + threads - 1) / std::max<u64>(threads, 1);
  std::vector<u64> bounds = {0};
  for (unsigned t = 0; t < threads && bounds.back() < span; ++t) {
    bounds.push_back(std::min(span, bounds.back() + std::max<u64>(chunk, 1)));
  }
  const std::size_t parts = bounds.size() - 1;
  std::vector<ChunkOutput> outputs(std::max<std::size_t>(parts, 1));
  auto run_chunk = [&](std::size_t i, const ScanCheckpoint& start) {
    HarmonicAccumulator acc(start);
    auto& out = outputs[i];
    acc.advance(bounds[i + 1], [&](u64 N, long v) {
      ++out.histogram[v];
      if (v >= o.threshold) {
        out.hits.push_back({o.p, N, o.shift, v});
      }
    });
  };
  if (parts <= 1) {
    if (parts == 1) {
      run_chunk(0, base.checkpoint());
    }
  } else {
    // Pass 1: chunk sums from zero; pass 2: rerun each chunk from its prefix.
    std::vector<Integer> sums(parts);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < parts; ++i) {
      pool.emplace_back([&, i] {
        auto cp = base.checkpoint();
        cp.N_reached = bounds[i];
        cp.s = 0;
        HarmonicAccumulator acc(cp);
        acc.advance(bounds[i + 1]);
        sums[i] = acc.checkpoint().s;
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    std::vector<ScanCheckpoint> starts(parts, base.checkpoint());
    const Integer modulus = ipow(o.p, K + starts[0].e_max);
    for (std::size_t i = 1; i < parts; ++i) {
      starts[i].N_reached = bounds[i];
      starts[i].s = (starts[i - 1].s + sums[i - 1]) % modulus;
    }
    std::vector<std::exception_ptr> errors(parts);
    pool.clear();
    for (std::size_t i = 0; i < parts; ++i) {
      pool.emplace_back([&, i] {
        try {
          run_chunk(i, starts[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    for (auto& err : errors) {
      if (err) {
        std::rethrow_exception(err);
      }
    }
  }
  ScanResult result;
  result.K_used = K;
  for (auto& out : outputs) {
    result.hits.insert(result.hits.end(), out.hits.begin(), out.hits.end());
    for (auto [v, count] : out.histogram) {
      result.histogram[v] += count;
    }
  }
  return result;
}

}  // namespace

ScanResult scan(const ScanOptions& options,
                const std::function<void(const ScanHit&)>& sink) {
  if (static_cast<long>(options.K) < options.threshold + 2) {
    throw ParameterError("precision K must be at least threshold + 2");
  }
  std::vector<std::string> log;
  for (unsigned K = options.K;; K *= 2) {
    if (K > options.K_max) {
      throw PrecisionExhausted("precision would exceed K_max = " +
                               std::to_string(options.K_max));
    }
    try {
      ScanResult result = scan_at_precision(options, K);
      result.log = std::move(log);
      if (sink) {
        for (const auto& hit : result.hits) {
          sink(hit);
        }
      }
      return result;
    } catch (const PrecisionExhausted& e) {
      log.push_back(std::string(e.what()) + "; retrying with K=" + std::to_string(2 * K));
    }
  }
}

WolstenholmeScan wolstenholme_scan(std::uint64_t p_max, unsigned K,
                                   unsigned K_max) {
  WolstenholmeScan out;
  for (auto p : primes_up_to(p_max)) {
    if (p < 5) {
      continue;
    }
    for (unsigned k = K;; k *= 2) {
      if (k > K_max) {
        throw PrecisionExhausted("Wolstenholme scan exceeded K_max at p=" + std::to_string(p));
      }
      HarmonicAccumulator acc(p, 0, k, p - 1);
      acc.advance(p - 1);
      try {
        long v = acc.current_valuation();
        out.valuations[p] = v;
        if (v >= 3) {
          out.primes.push_back(p);
        }
        break;
      } catch (const PrecisionExhausted&) {
        continue;
      }
    }
  }
  return out;
}

Valuation vp_harmonic_exact(std::uint64_t p, std::uint64_t N, unsigned shift) {
  if (N > 100000) {
    throw ParameterError("exact harmonic valuation is guarded at N <= 100000");
  }
  if (shift > 1) {
    throw ParameterError("shift must be 0 or 1");
  }
  return vp_rat(harmonic(N) - shift, p);
}

const std::string& large_p83_example() {
  static const std::string value =
      "79781079199360090066989143814676572961528399477699516786377994370"
      "78839681692157676915245857235055200779421409821643691818";
  return value;
}

void write_hits_csv(std::ostream& os, const std::vector<ScanHit>& hits, bool header) {
  if (header) {
    os << "p,N,shift,valuation\n";
  }
  for (const auto& h : hits) {
    os << h.p << ',' << h.N << ',' << h.shift << ',' << h.valuation << '\n';
  }
}

}  // namespace mirror
