#include "mirror/acceptance.hpp"

#include "mirror/certifier.hpp"
#include "mirror/dwork.hpp"
#include "mirror/mirror_maps.hpp"
#include "mirror/scanner.hpp"
#include "mirror/yukawa.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <sstream>

#ifndef MIRROR_VERSION
#define MIRROR_VERSION "0.0.0"
#endif

namespace mirror {

namespace {

// Collects sub-check outcomes for one criterion.
class Checks {
 public:
  void add(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      failures_.push_back(what);
    }
  }
  bool pass() const { return failures_.empty(); }
  std::string summary() const {
    std::ostringstream os;
    os << (total_ - failures_.size()) << "/" << total_ << " sub-checks";
    for (std::size_t i = 0; i < failures_.size(); ++i) {
      os << (i == 0 ? "; failed: " : "; ") << failures_[i];
    }
    return os.str();
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
};

struct Context {
  AcceptanceProfile profile;
  std::uint64_t seed;
  std::map<std::string, std::uint64_t>* orders;

  std::size_t order(const std::string& key, std::size_t full) const {
    std::size_t o = profile == AcceptanceProfile::quick ? std::min<std::size_t>(full, 60) : full;
    (*orders)[key] = o;
    return o;
  }
  std::uint64_t range(const std::string& key, std::uint64_t full) const {
    std::uint64_t n = profile == AcceptanceProfile::quick ? std::min<std::uint64_t>(full, 10000) : full;
    (*orders)[key] = n;
    return n;
  }
};

std::string join(const std::set<std::uint64_t>& values) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto v : values) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << "}";
  return os.str();
}

std::string witness_text(const CertReport& r) {
  return r.witness_index ? "index " + std::to_string(*r.witness_index) : "none";
}

CriterionResult mirror_map_integrality(const Context& ctx) {
  const auto order = ctx.order("c1.order", 100);
  Checks checks;
  for (unsigned k = 1; k <= 2; ++k) {
    for (unsigned N = 1; N <= 12; ++N) {
      auto rep = root_integrality(build_GN(N, k, order), build_FN(N, k, order), 1, order);
      checks.add(rep.pass, "q_" + std::to_string(N) + " k=" + std::to_string(k) +
                               " at " + witness_text(rep));
    }
  }
  return {1, "mirror maps q_N integral, N <= 12, k in {1,2}", checks.pass(), checks.summary()};
}

CriterionResult quintic_root(const Context& ctx) {
  const auto order = ctx.order("c2.order", 200);
  const auto G = build_GN(5, 1, order), F = build_FN(5, 1, order);
  Checks checks;
  auto root = root_integrality(G, F, make_rational(1, 10), order);
  checks.add(root.pass, "(q_5/z)^(1/10) non-integral at " + witness_text(root));
  std::ostringstream witnesses;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u}) {
    auto rep = root_integrality(G, F, make_rational(1, 10 * p), order);
    checks.add(!rep.pass, "no witness for 1/(10*" + std::to_string(p) + ")");
    witnesses << " p=" << p << ":" << witness_text(rep);
  }
  return {2, "(q_5/z)^(1/10) integral and sharp at p <= 11", checks.pass(),
          checks.summary() + "; witnesses" + witnesses.str()};
}

CriterionResult sequence_fixtures(const Context&) {
  const std::vector<long> printed = {1,     1,      1,       2,       2,      36,
                                     36,    144,    144,     1440,    1440,   17280,
                                     17280, 241920, 3628800, 29030400};
  Checks checks;
  for (unsigned N = 1; N <= printed.size(); ++N) {
    checks.add(gcd_sequence_A056612(N) == printed[N - 1], "gcd value at N=" + std::to_string(N));
  }
  checks.add(xi(7) == make_rational(1, 140), "Xi_7 = 1/140");
  return {3, "gcd(N!, N! H_N) for N <= 16 and Xi_7", checks.pass(), checks.summary()};
}

std::set<std::uint64_t> scan_set(std::uint64_t p, std::uint64_t N_max, unsigned shift,
                                 long threshold) {
  ScanOptions o;
  o.p = p;
  o.N_max = N_max;
  o.shift = shift;
  o.threshold = threshold;
  o.K = static_cast<unsigned>(threshold + 5);
  std::set<std::uint64_t> out;
  for (const auto& h : scan(o).hits) {
    out.insert(h.N);
  }
  return out;
}

std::set<std::uint64_t> capped(std::set<std::uint64_t> values, std::uint64_t cap) {
  std::erase_if(values, [cap](std::uint64_t v) { return v > cap; });
  return values;
}

CriterionResult harmonic_scan(const Context& ctx) {
  Checks checks;
  struct Case {
    std::uint64_t p, N_max;
    unsigned shift;
    long threshold;
    std::set<std::uint64_t> expected;
  };
  const std::vector<Case> cases = {{11, 11000, 0, 3, {848, 9338, 10583}},
                                   {3, 100000, 0, 1, {2, 7, 22}},
                                   {5, 100000, 0, 1, {4, 20, 24}},
                                   {3, 100000, 1, 1, {66, 68}},
                                   {5, 100000, 1, 1, {3, 21, 23}}};
  std::ostringstream found;
  for (const auto& c : cases) {
    std::string key = "c4.p" + std::to_string(c.p) + ".shift" + std::to_string(c.shift);
    auto N_max = ctx.range(key, c.N_max);
    auto got = scan_set(c.p, N_max, c.shift, c.threshold);
    auto want = capped(c.expected, N_max);
    checks.add(got == want, key + " gave " + join(got) + ", expected " + join(want));
    found << " " << key << "=" << join(got);
  }
  return {4, "harmonic valuation scans", checks.pass(), checks.summary() + ";" + found.str()};
}

CriterionResult wolstenholme(const Context& ctx) {
  const auto p_max = ctx.range("c5.p_max", 20000);
  auto w = wolstenholme_scan(p_max);
  Checks checks;
  std::set<std::uint64_t> got(w.primes.begin(), w.primes.end());
  auto want = capped({16843}, p_max);
  checks.add(got == want, "found " + join(got) + ", expected " + join(want));
  for (auto [p, v] : w.valuations) {
    checks.add(v >= 2, "v_p(H_{p-1}) < 2 at p=" + std::to_string(p));
  }
  return {5, "Wolstenholme primes up to " + std::to_string(p_max), checks.pass(),
          checks.summary() + "; scanned " + std::to_string(w.valuations.size()) + " primes"};
}

CriterionResult zudilin_duality(const Context&) {
  Checks checks;
  for (unsigned N = 1; N <= 30; ++N) {
    for (std::uint64_t m = 0; m <= 40; ++m) {
      const auto tag = "N=" + std::to_string(N) + " m=" + std::to_string(m);
      checks.add(bbN(N, m, BoldMode::pochhammer) == bbN(N, m, BoldMode::factorial),
                 "bold B " + tag);
      checks.add(hN(N, m, HMode::residues) == hN(N, m, HMode::alphabeta), "bold H " + tag);
    }
  }
  return {6, "Zudilin coefficient and weight dualities, N <= 30, m <= 40", checks.pass(),
          checks.summary()};
}

CriterionResult theorem4(const Context& ctx) {
  const auto order = ctx.order("c7.order", 60);
  Checks checks;
  const auto& vectors = calabi_yau_vectors();
  for (const auto& v : vectors) {
    const unsigned top = *std::max_element(v.begin(), v.end());
    for (unsigned L = 1; L <= top; ++L) {
      auto cert = certify_theorem(TheoremId::T4, {v, L}, order);
      checks.add(cert.report.pass, "q_{" + std::to_string(L) + "," + nvec_to_string(v) +
                                       "} at " + witness_text(cert.report));
    }
  }
  for (std::size_t i = vectors.size() - 5; i < vectors.size(); ++i) {
    auto rep = integrality_report(build_bold_q(vectors[i], order).q);
    checks.add(rep.pass, "bold q_" + nvec_to_string(vectors[i]) + " at " + witness_text(rep));
  }
  return {7, "L-maps of the fourteen Calabi-Yau vectors and the five new maps",
          checks.pass(), checks.summary()};
}

CriterionResult zudilin_refinement(const Context& ctx) {
  const auto long_order = ctx.order("c8.order_L1", 100);
  const auto order = ctx.order("c8.order", 60);
  const NVector six = {6};
  Checks checks;
  auto F = build_F(six, Family::zudilin, long_order);
  auto G1 = build_GL(six, 1, Family::zudilin, long_order);
  auto r60 = root_integrality(G1, F, make_rational(1, 60), long_order);
  checks.add(r60.pass, "q_{1,(6)}^(1/60) at " + witness_text(r60));
  auto r120 = root_integrality(G1, F, make_rational(1, 120), long_order);
  checks.add(!r120.pass, "q_{1,(6)}^(1/120) has no witness");
  auto Fs = F.truncated(order);
  auto r2 = root_integrality(build_GL(six, 2, Family::zudilin, order), Fs,
                             make_rational(1, 6), order);
  checks.add(r2.pass, "q_{2,(6)}^(1/6) at " + witness_text(r2));
  auto r3 = root_integrality(build_GL(six, 3, Family::zudilin, order), Fs,
                             make_rational(1, 2), order);
  checks.add(r3.pass, "q_{3,(6)}^(1/2) at " + witness_text(r3));
  return {8, "refined roots of the (6) maps", checks.pass(),
          checks.summary() + "; 1/120 witness at " + witness_text(r120)};
}

CriterionResult dwork_suite(const Context& ctx) {
  Checks checks;
  SuiteBounds bounds{13, 12, 2, 2, 30};
  auto summary = run_lemma_suite(ctx.seed, 1000, bounds);
  for (auto [lemma, count] : summary.failures_by_lemma) {
    checks.add(count == 0, to_string(lemma) + " failed " + std::to_string(count) + " times");
  }
  checks.add(summary.failures == 0, std::to_string(summary.failures) + " suite failures");
  std::mt19937_64 rng(ctx.seed);
  const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13};
  for (int draw = 0; draw < 100; ++draw) {
    NVector v = {1 + static_cast<unsigned>(rng() % 12)};
    if (rng() % 2) {
      v.push_back(1 + static_cast<unsigned>(rng() % 12));
    }
    const unsigned L = 1 + static_cast<unsigned>(rng() % *std::max_element(v.begin(), v.end()));
    const auto p = primes[rng() % primes.size()];
    const auto a = rng() % p, K = rng() % 31;
    const auto family = rng() % 2 ? Family::plain : Family::zudilin;
    auto sides = rearrangement_sides(v, L, p, a, K, family);
    checks.add(sides.lhs == sides.rhs, "rearrangement at N=" + nvec_to_string(v) +
                                           " L=" + std::to_string(L) + " p=" +
                                           std::to_string(p) + " a=" + std::to_string(a) +
                                           " K=" + std::to_string(K));
  }
  return {9, "randomized lemma suite and the rearrangement identity", checks.pass(),
          checks.summary() + "; " + std::to_string(summary.instances) + " lemma instances"};
}

CriterionResult picard_fuchs(const Context& ctx) {
  const auto order = ctx.order("c10.order", 25);
  Checks checks;
  for (const NVector& v : {NVector{2}, NVector{5}, NVector{6}, NVector{3, 3}}) {
    auto rep = picard_fuchs_check(v, order);
    checks.add(rep.pass, nvec_to_string(v) + " residual at " + witness_text(rep) +
                             (rep.detail.empty() ? "" : " (" + rep.detail + ")"));
  }
  return {10, "Picard-Fuchs operator kills both solutions", checks.pass(), checks.summary()};
}

CriterionResult quintic_instantons(const Context&) {
  Checks checks;
  auto small = instanton_numbers({5}, 7), large = instanton_numbers({5}, 11);
  checks.add(small.K[0] == 5, "K(0) = 5");
  std::ostringstream values;
  for (std::size_t d = 1; d <= 5; ++d) {
    const auto& n = small.n[d - 1];
    checks.add(n.get_den() == 1, "n_" + std::to_string(d) + " integral");
    checks.add(n == large.n[d - 1], "n_" + std::to_string(d) + " stable");
    values << " " << n;
  }
  return {11, "quintic instanton numbers d <= 5", checks.pass(),
          checks.summary() + "; n =" + values.str()};
}

CriterionResult conjectural_roots(const Context& ctx) {
  const auto order = ctx.order("c12.order", 150);
  Checks checks;
  for (unsigned N = 2; N <= 10; ++N) {
    for (bool tilde : {false, true}) {
      auto r = tilde ? uN(N, order) : tN(N, order);
      const std::string name = (tilde ? "u_" : "t_") + std::to_string(N) + "=" + r.value.get_str();
      checks.add(r.root.pass, name + " root at " + witness_text(r.root));
      const auto primes = primes_up_to(N);
      for (std::size_t i = 0; i < primes.size(); ++i) {
        checks.add(r.sharpness[i].pass, name + " sharpness at p=" + std::to_string(primes[i]) +
                                            " (" + r.sharpness[i].detail + ")");
      }
    }
  }
  std::mt19937_64 rng(ctx.seed);
  for (int draw = 0; draw < 10; ++draw) {
    const unsigned N = 1 + static_cast<unsigned>(rng() % 12);
    std::uint64_t p = N + 1 + rng() % 40;
    while (!is_prime(p)) {
      ++p;
    }
    auto rep = sharpness_witness(Proposition::p_gt_N, p, N);
    checks.add(rep.pass, "p>N witness at p=" + std::to_string(p) + " N=" + std::to_string(N));
  }
  return {12, "conjectural roots t_N, u_N for N <= 10 with sharpness", checks.pass(),
          checks.summary()};
}

}  // namespace

std::string to_string(AcceptanceProfile profile) {
  return profile == AcceptanceProfile::quick ? "quick" : "full";
}

AcceptanceProfile parse_profile(const std::string& text) {
  if (text == "quick") {
    return AcceptanceProfile::quick;
  }
  if (text == "full") {
    return AcceptanceProfile::full;
  }
  throw ParameterError("unknown profile '" + text + "' (quick or full)");
}

std::size_t RunManifest::passed() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; }));
}

const char* library_version() { return MIRROR_VERSION; }

RunManifest run_acceptance(AcceptanceProfile profile, std::uint64_t seed,
                           const std::vector<unsigned>& only,
                           const std::function<void(const CriterionResult&)>& on_result) {
  using Clock = std::chrono::steady_clock;
  using Runner = CriterionResult (*)(const Context&);
  static const std::vector<Runner> runners = {
      mirror_map_integrality, quintic_root,     sequence_fixtures,  harmonic_scan,
      wolstenholme,           zudilin_duality,  theorem4,           zudilin_refinement,
      dwork_suite,            picard_fuchs,     quintic_instantons, conjectural_roots};
  for (unsigned id : only) {
    if (id == 0 || id > runners.size()) {
      throw ParameterError("no acceptance criterion " + std::to_string(id));
    }
  }
  RunManifest manifest;
  manifest.seed = seed;
  manifest.profile = profile;
  for (const char* module : {"padic_core", "series_engine", "coefficient_factory", "mirror_maps",
                             "integrality_certifier", "dwork_verifier", "harmonic_scanner",
                             "yukawa", "cli"}) {
    manifest.module_versions[module] = MIRROR_VERSION;
  }
  Context ctx{profile, seed, &manifest.orders};
  const auto start = Clock::now();
  for (unsigned id = 1; id <= runners.size(); ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) {
      continue;
    }
    const auto t0 = Clock::now();
    auto result = runners[id - 1](ctx);
    result.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    manifest.results.push_back(result);
    if (on_result) {
      on_result(result);
    }
  }
  manifest.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return manifest;
}

std::string format_criterion_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " ["
     << r.detail << "]";
  return os.str();
}

std::string manifest_to_json(const RunManifest& manifest, bool include_timing) {
  nlohmann::ordered_json j;
  j["command_line"] = manifest.command_line;
  j["seed"] = manifest.seed;
  j["profile"] = to_string(manifest.profile);
  j["orders"] = manifest.orders;
  j["module_versions"] = manifest.module_versions;
  if (include_timing) {
    j["wall_seconds"] = manifest.wall_seconds;
  }
  j["passed"] = manifest.passed();
  j["total"] = manifest.results.size();
  auto& results = j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : manifest.results) {
    nlohmann::ordered_json entry;
    entry["id"] = r.id;
    entry["title"] = r.title;
    entry["pass"] = r.pass;
    entry["detail"] = r.detail;
    if (include_timing) {
      entry["seconds"] = r.seconds;
    }
    results.push_back(entry);
  }
  return j.dump(2);
}

}  // namespace mirror
