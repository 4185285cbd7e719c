#include "mirror/cli.hpp"

#include "mirror/acceptance.hpp"
#include "mirror/certifier.hpp"
#include "mirror/dwork.hpp"
#include "mirror/mirror_maps.hpp"
#include "mirror/scanner.hpp"
#include "mirror/series_io.hpp"
#include "mirror/yukawa.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace mirror {

namespace {

using json = nlohmann::ordered_json;

// Set by a subcommand callback: true when every requested check passed.
struct Outcome {
  bool ok = true;
};

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* text = std::getenv(name);
  if (text == nullptr || *text == '\0') {
    return fallback;
  }
  try {
    std::size_t used = 0;
    auto value = std::stoull(text, &used);
    if (used == std::string(text).size()) {
      return value;
    }
  } catch (const std::exception&) {
  }
  throw ParameterError(std::string(name) + " must be a non-negative integer");
}

std::string str(const Integer& n) { return n.get_str(); }
std::string str(const Rational& q) { return q.get_str(); }

json report_json(const CertReport& r) {
  json j;
  j["pass"] = r.pass;
  j["order"] = r.order;
  j["witness_index"] = r.witness_index ? json(*r.witness_index) : json(nullptr);
  j["witness_valuation"] =
      r.witness_valuation ? json(r.witness_valuation->to_string()) : json(nullptr);
  j["detail"] = r.detail;
  return j;
}

json family_json(Family f) { return f == Family::plain ? "plain" : "zudilin"; }

Family parse_family(const std::string& text) {
  if (text == "plain") {
    return Family::plain;
  }
  if (text == "zudilin") {
    return Family::zudilin;
  }
  throw ParameterError("family must be plain or zudilin");
}

// A single entry with --k expands to (N^k); a longer vector is taken as is.
NVector expand(const std::string& text, unsigned k) {
  auto v = parse_nvec(text);
  if (k == 0) {
    throw ParameterError("k must be positive");
  }
  if (v.size() == 1) {
    return repeated(v[0], k);
  }
  if (k != 1) {
    throw ParameterError("--k only applies to a single N");
  }
  return v;
}

json instance_json(const CongruenceInstance& inst) {
  json j;
  j["lemma"] = to_string(inst.lemma);
  json params = json::object();
  for (const auto& [name, value] : inst.params.values) {
    params[name] = value;
  }
  if (!inst.params.Nvec.empty()) {
    params["Nvec"] = nvec_to_string(inst.params.Nvec);
  }
  j["params"] = params;
  j["target"] = inst.target.to_string();
  j["achieved"] = inst.achieved.to_string();
  j["expect_member"] = inst.expect_member;
  j["pass"] = inst.pass();
  j["detail"] = inst.detail;
  return j;
}

void add_order(CLI::App* cmd, std::size_t& order) {
  cmd->add_option("--order", order, "series order (MIRROR_ORDER)")->capture_default_str();
}

// --- subcommands ------------------------------------------------------------

void setup_build(CLI::App& app, std::ostream& out, Outcome&) {
  auto* cmd = app.add_subcommand("build", "build F, G and the map q");
  auto family = std::make_shared<std::string>("plain");
  auto N = std::make_shared<std::string>();
  auto k = std::make_shared<unsigned>(1);
  auto L = std::make_shared<unsigned>(0);
  auto order = std::make_shared<std::size_t>(env_or("MIRROR_ORDER", 100));
  auto emit = std::make_shared<std::string>("json");
  cmd->add_option("--family", *family)->check(CLI::IsMember({"plain", "zudilin"}));
  cmd->add_option("--N", *N, "N or an N vector such as 3,3")->required();
  cmd->add_option("--k", *k);
  cmd->add_option("--L", *L, "build the L-map q_{L,N} instead");
  add_order(cmd, *order);
  cmd->add_option("--emit", *emit)->check(CLI::IsMember({"json", "csv"}));
  cmd->callback([=, &out] {
    const auto fam = parse_family(*family);
    const auto vec = expand(*N, *k);
    MirrorInstance inst;
    if (*L != 0) {
      inst = build_qLN(vec, *L, *order, fam);
    } else if (fam == Family::zudilin) {
      inst = build_bold_q(vec, *order);
    } else if (std::all_of(vec.begin(), vec.end(), [&](unsigned x) { return x == vec[0]; })) {
      inst = build_qN(vec[0], static_cast<unsigned>(vec.size()), *order);
    } else {
      inst.spec = {vec, 1, Family::plain};
      inst.order = *order;
      inst.F = build_F(vec, Family::plain, *order);
      inst.q = canonical_coordinate(vec, Family::plain, *order);
    }
    if (*emit == "csv") {
      out << series_to_csv(inst.q);
      return;
    }
    json j;
    j["N"] = nvec_to_string(vec);
    j["family"] = family_json(fam);
    j["L"] = *L;
    j["order"] = *order;
    j["has_z_factor"] = inst.has_z_factor;
    j["F"] = series_to_json(inst.F);
    j["G"] = inst.G.is_zero() && inst.G.order() == 0 ? json(nullptr) : json(series_to_json(inst.G));
    j["q"] = series_to_json(inst.q);
    out << j.dump() << '\n';
  });
}

void setup_certify(CLI::App& app, std::ostream& out, Outcome& outcome) {
  auto* cmd = app.add_subcommand("certify", "certify a theorem's integral root");
  auto theorem = std::make_shared<std::string>();
  auto N = std::make_shared<std::string>();
  auto k = std::make_shared<unsigned>(1);
  auto L = std::make_shared<unsigned>(1);
  auto order = std::make_shared<std::size_t>(env_or("MIRROR_ORDER", 100));
  cmd->add_option("--theorem", *theorem, "T1 T2 T3 T3a T4 Cor1 Conj2")->required();
  cmd->add_option("--N", *N)->required();
  cmd->add_option("--k", *k);
  cmd->add_option("--L", *L);
  add_order(cmd, *order);
  cmd->callback([=, &out, &outcome] {
    const auto id = parse_theorem(*theorem);
    CertParams params{expand(*N, *k), *L};
    auto cert = certify_theorem(id, params, *order);
    json j;
    j["theorem"] = to_string(id);
    j["N"] = nvec_to_string(params.Nvec);
    j["L"] = params.L;
    j["exponent"] = str(cert.exponent.value);
    j["exponent_description"] = cert.exponent.description;
    j["report"] = report_json(cert.report);
    out << j.dump() << '\n';
    outcome.ok = cert.report.pass;
  });
}

void setup_maxroot(CLI::App& app, std::ostream& out, Outcome&) {
  auto* cmd = app.add_subcommand("maxroot", "largest root integral to a finite order (EMPIRICAL)");
  auto series_from = std::make_shared<std::string>();
  auto family = std::make_shared<std::string>("plain");
  auto N = std::make_shared<std::string>();
  auto k = std::make_shared<unsigned>(1);
  auto L = std::make_shared<unsigned>(0);
  auto bound = std::make_shared<std::uint64_t>(13);
  auto order = std::make_shared<std::size_t>(env_or("MIRROR_ORDER", 100));
  auto* from = cmd->add_option("--series-from", *series_from, "JSON series with constant term 1");
  auto* nopt = cmd->add_option("--N", *N, "build exp(G/F) for this N instead");
  from->excludes(nopt);
  cmd->add_option("--family", *family)->check(CLI::IsMember({"plain", "zudilin"}));
  cmd->add_option("--k", *k);
  cmd->add_option("--L", *L, "use the L-map; default is the canonical coordinate over z");
  cmd->add_option("--prime-bound", *bound);
  add_order(cmd, *order);
  cmd->callback([=, &out] {
    MaxRootResult result;
    std::string source;
    if (!series_from->empty()) {
      std::ifstream in(*series_from);
      if (!in) {
        throw ParameterError("cannot read " + *series_from);
      }
      auto s = series_from_json(nlohmann::json::parse(in));
      result = empirical_max_root(s.truncated(std::min(*order, s.order())), *bound,
                                  std::min(*order, s.order()));
      source = *series_from;
    } else if (!N->empty()) {
      const auto fam = parse_family(*family);
      const auto vec = expand(*N, *k);
      auto F = build_F(vec, fam, *order);
      TruncSeries G;
      if (*L != 0) {
        G = build_GL(vec, *L, fam, *order);
      } else if (fam == Family::zudilin) {
        G = build_bold_G(vec, *order);
      } else {
        if (std::any_of(vec.begin(), vec.end(), [&](unsigned x) { return x != vec[0]; })) {
          throw ParameterError("plain canonical coordinate needs equal entries; use --L");
        }
        G = build_GN(vec[0], static_cast<unsigned>(vec.size()), *order);
      }
      result = empirical_max_root(G, F, *bound, *order);
      source = nvec_to_string(vec);
    } else {
      throw ParameterError("give --series-from or --N");
    }
    json j;
    j["label"] = "EMPIRICAL";
    j["source"] = source;
    j["order"] = result.order;
    j["value"] = str(result.value);
    auto& primes = j["primes"] = json::array();
    for (const auto& p : result.primes) {
      primes.push_back({{"p", p.p},
                        {"exponent", p.exponent},
                        {"witness_index", p.witness_index ? json(*p.witness_index) : json(nullptr)}});
    }
    out << j.dump() << '\n';
  });
}

void setup_dwork(CLI::App& app, std::ostream& out, Outcome& outcome) {
  auto* cmd = app.add_subcommand("dwork", "evaluate one congruence lemma instance");
  auto lemma = std::make_shared<std::string>();
  auto N = std::make_shared<std::string>();
  auto values = std::make_shared<std::map<std::string, std::int64_t>>();
  cmd->add_option("--lemma", *lemma)->required();
  cmd->add_option("--N", *N, "N, or an N vector such as 6,4");
  for (const char* name : {"p", "J", "L", "k", "s", "a", "K", "m", "n", "r", "j", "u", "w",
                           "part", "bold"}) {
    cmd->add_option_function<std::int64_t>(
        std::string("--") + name, [values, name](std::int64_t v) { (*values)[name] = v; });
  }
  cmd->callback([=, &out, &outcome] {
    LemmaParams params;
    params.values = *values;
    if (!N->empty()) {
      auto vec = parse_nvec(*N);
      if (vec.size() == 1) {
        params.values["N"] = vec[0];
      } else {
        params.Nvec = vec;
      }
    }
    auto inst = check_lemma(parse_lemma(*lemma), params);
    out << instance_json(inst).dump() << '\n';
    outcome.ok = inst.pass();
  });
}

void setup_dwork_suite(CLI::App& app, std::ostream& out, Outcome& outcome) {
  auto* cmd = app.add_subcommand("dwork-suite", "randomized lemma instances");
  auto seed = std::make_shared<std::uint64_t>(env_or("MIRROR_SEED", 42));
  auto draws = std::make_shared<std::size_t>(1000);
  auto lemmas = std::make_shared<std::vector<std::string>>();
  auto emit = std::make_shared<std::string>("jsonl");
  auto bounds = std::make_shared<SuiteBounds>();
  cmd->add_option("--seed", *seed, "MIRROR_SEED");
  cmd->add_option("--draws", *draws, "instances per lemma");
  cmd->add_option("--lemma", *lemmas, "restrict to these lemma ids");
  cmd->add_option("--max-p", bounds->max_p);
  cmd->add_option("--max-N", bounds->max_N);
  cmd->add_option("--max-k", bounds->max_k);
  cmd->add_option("--max-s", bounds->max_s);
  cmd->add_option("--max-K", bounds->max_K);
  cmd->add_option("--emit", *emit)->check(CLI::IsMember({"jsonl", "json"}));
  cmd->callback([=, &out, &outcome] {
    std::vector<LemmaId> ids;
    for (const auto& text : *lemmas) {
      ids.push_back(parse_lemma(text));
    }
    if (ids.empty()) {
      ids = all_lemmas();
    }
    json failures = json::array();
    auto sink = [&](const CongruenceInstance& inst) {
      if (*emit == "jsonl") {
        out << instance_json(inst).dump() << '\n';
      } else if (!inst.pass()) {
        failures.push_back(instance_json(inst));
      }
    };
    auto summary = run_lemma_suite(*seed, *draws, *bounds, ids, sink);
    if (*emit == "json") {
      json j;
      j["seed"] = *seed;
      j["draws"] = *draws;
      j["instances"] = summary.instances;
      j["failures"] = summary.failures;
      j["failed_instances"] = failures;
      out << j.dump() << '\n';
    }
    outcome.ok = summary.failures == 0;
  });
}

void setup_scan(CLI::App& app, std::ostream& out, std::ostream& err, Outcome&) {
  auto* cmd = app.add_subcommand("scan", "p-adic valuations of H_N or H_N - 1");
  auto opts = std::make_shared<ScanOptions>();
  auto emit = std::make_shared<std::string>("csv");
  auto resume = std::make_shared<std::string>();
  auto save = std::make_shared<std::string>();
  cmd->add_option("--p", opts->p)->required();
  cmd->add_option("--max", opts->N_max)->required();
  cmd->add_option("--shift", opts->shift)->check(CLI::IsMember({0, 1}));
  cmd->add_option("--threshold", opts->threshold);
  cmd->add_option("--K", opts->K, "initial p-adic precision");
  cmd->add_option("--K-max", opts->K_max);
  cmd->add_option("--threads", opts->threads);
  cmd->add_option("--resume", *resume, "continue from a checkpoint file");
  cmd->add_option("--checkpoint", *save, "write the final state here");
  cmd->add_option("--emit", *emit)->check(CLI::IsMember({"csv", "jsonl", "json"}));
  cmd->callback([=, &out, &err] {
    std::vector<ScanHit> hits;
    std::optional<ScanCheckpoint> final_state;
    if (!resume->empty()) {
      HarmonicAccumulator acc(ScanCheckpoint::load(*resume));
      const auto cp = acc.checkpoint();
      const auto shift = cp.shift;
      acc.advance(opts->N_max, [&](std::uint64_t N, long v) {
        if (v >= opts->threshold) {
          hits.push_back({cp.p, N, shift, v});
        }
      });
      final_state = acc.checkpoint();
    } else {
      auto result = scan(*opts);
      for (const auto& line : result.log) {
        err << line << '\n';
      }
      hits = std::move(result.hits);
      if (!save->empty()) {
        HarmonicAccumulator acc(opts->p, opts->shift, result.K_used, opts->N_max);
        acc.advance(opts->N_max);
        final_state = acc.checkpoint();
      }
    }
    if (!save->empty() && final_state) {
      final_state->save(*save);
    }
    if (*emit == "csv") {
      write_hits_csv(out, hits);
      return;
    }
    json arr = json::array();
    for (const auto& h : hits) {
      json row = {{"p", h.p}, {"N", h.N}, {"shift", h.shift}, {"valuation", h.valuation}};
      if (*emit == "jsonl") {
        out << row.dump() << '\n';
      } else {
        arr.push_back(row);
      }
    }
    if (*emit == "json") {
      out << arr.dump() << '\n';
    }
  });
}

void setup_wolstenholme(CLI::App& app, std::ostream& out, Outcome& outcome) {
  auto* cmd = app.add_subcommand("wolstenholme", "primes p with v_p(H_{p-1}) >= 3");
  auto p_max = std::make_shared<std::uint64_t>(20000);
  cmd->add_option("--max", *p_max);
  cmd->callback([=, &out, &outcome] {
    auto w = wolstenholme_scan(*p_max);
    json j;
    j["p_max"] = *p_max;
    j["primes"] = w.primes;
    j["scanned"] = w.valuations.size();
    long low = 0;
    for (auto [p, v] : w.valuations) {
      low += v < 2 ? 1 : 0;
    }
    j["below_two"] = low;
    out << j.dump() << '\n';
    outcome.ok = low == 0;
  });
}

void setup_yukawa(CLI::App& app, std::ostream& out, Outcome& outcome) {
  auto* cmd = app.add_subcommand("yukawa", "Yukawa coupling and instanton numbers");
  auto N = std::make_shared<std::string>();
  auto family = std::make_shared<std::string>("plain");
  auto order = std::make_shared<std::size_t>(env_or("MIRROR_ORDER", 12));
  auto emit = std::make_shared<std::string>("json");
  cmd->add_option("--N", *N)->required();
  cmd->add_option("--family", *family)->check(CLI::IsMember({"plain", "zudilin"}));
  add_order(cmd, *order);
  cmd->add_option("--emit", *emit)->check(CLI::IsMember({"json"}));
  cmd->callback([=, &out, &outcome] {
    const auto vec = parse_nvec(*N);
    const auto fam = parse_family(*family);
    const auto shape = yukawa_shape(vec, fam);
    json j;
    j["N"] = nvec_to_string(vec);
    j["family"] = family_json(fam);
    j["exponent"] = shape.exponent;
    auto K = yukawa_K(vec, *order, fam);
    j["K"] = series_to_json(K);
    json k = json::array();
    for (const auto& c : lambert_decompose(K)) {
      k.push_back(str(c));
    }
    j["k"] = k;
    if (shape.exponent == 3) {
      auto r = instanton_numbers(vec, K.order(), fam);
      json n = json::array();
      for (const auto& c : r.n) {
        n.push_back(str(c));
      }
      j["n"] = n;
      j["n_integral"] = r.n_integral;
      j["first_anomaly"] = r.n_integral ? json(nullptr) : json(r.first_anomaly);
      outcome.ok = r.n_integral;
    } else {
      j["n"] = nullptr;
    }
    out << j.dump() << '\n';
  });
}

void setup_zudilin_data(CLI::App& app, std::ostream& out, Outcome&) {
  auto* cmd = app.add_subcommand("zudilin-data", "residues, C_N, alpha and beta for N");
  auto N = std::make_shared<unsigned>(0);
  cmd->add_option("N", *N)->required()->check(CLI::PositiveNumber);
  cmd->callback([=, &out] {
    const auto& d = zudilin_data(*N);
    json j;
    j["N"] = d.N;
    j["phi"] = d.phi;
    j["residues"] = d.residues;
    j["C"] = str(d.C);
    j["alpha"] = d.alpha;
    j["beta"] = d.beta;
    out << j.dump() << '\n';
  });
}

void setup_sequences(CLI::App& app, std::ostream& out, Outcome&) {
  auto* cmd = app.add_subcommand("sequences", "integer sequences indexed by N >= 1");
  auto id = std::make_shared<std::string>();
  auto count = std::make_shared<unsigned>(16);
  auto emit = std::make_shared<std::string>("text");
  cmd->add_option("--id", *id, "A056612, theta, t, u")
      ->required()
      ->check(CLI::IsMember({"A056612", "theta", "t", "u"}));
  cmd->add_option("--count", *count);
  cmd->add_option("--emit", *emit)->check(CLI::IsMember({"text", "json"}));
  cmd->callback([=, &out] {
    std::vector<std::string> values;
    for (unsigned N = 1; N <= *count; ++N) {
      if (*id == "A056612") {
        values.push_back(str(gcd_sequence_A056612(N)));
      } else if (*id == "theta") {
        values.push_back(str(theta(N)));
      } else if (*id == "t") {
        values.push_back(str(Rational(xi(N) * Rational(factorial(N)))));
      } else if (N >= 2) {
        values.push_back(str(Rational(omega_cap(N) * Rational(factorial(N)))));
      }
    }
    if (*emit == "json") {
      out << json(values).dump() << '\n';
      return;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << (i ? ", " : "") << values[i];
    }
    out << '\n';
  });
}

void setup_acceptance(CLI::App& app, std::ostream& out, std::ostream& err, Outcome& outcome,
                      const std::string& command_line) {
  auto* cmd = app.add_subcommand("acceptance", "run the acceptance battery");
  auto profile = std::make_shared<std::string>("quick");
  auto seed = std::make_shared<std::uint64_t>(env_or("MIRROR_SEED", 42));
  auto only = std::make_shared<std::vector<unsigned>>();
  auto timing = std::make_shared<bool>(true);
  cmd->add_option("--profile", *profile)->check(CLI::IsMember({"quick", "full"}));
  cmd->add_option("--seed", *seed, "MIRROR_SEED");
  cmd->add_option("--only", *only, "criterion ids");
  cmd->add_flag("!--no-timing", *timing, "omit timings from the manifest");
  cmd->callback([=, &out, &err, &outcome] {
    auto manifest = run_acceptance(parse_profile(*profile), *seed, *only,
                                   [&](const CriterionResult& r) {
                                     err << format_criterion_line(r) << std::endl;
                                   });
    manifest.command_line = command_line;
    out << manifest_to_json(manifest, *timing) << '\n';
    outcome.ok = manifest.all_passed();
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Outcome outcome;
  std::string command_line = "mirror";
  for (const auto& a : args) {
    command_line += " " + a;
  }
  try {
    CLI::App app{"Exact integrality checks for mirror maps and harmonic numbers", "mirror"};
    app.require_subcommand(1);
    setup_build(app, out, outcome);
    setup_certify(app, out, outcome);
    setup_maxroot(app, out, outcome);
    setup_dwork(app, out, outcome);
    setup_dwork_suite(app, out, outcome);
    setup_scan(app, out, err, outcome);
    setup_wolstenholme(app, out, outcome);
    setup_yukawa(app, out, outcome);
    setup_zudilin_data(app, out, outcome);
    setup_sequences(app, out, outcome);
    setup_acceptance(app, out, err, outcome, command_line);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "mirror: " << e.what() << "\n" << "run 'mirror --help' for usage\n";
      return 2;
    }
  } catch (const ParameterError& e) {
    err << "mirror: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "mirror: " << e.what() << '\n';
    return 1;
  }
  return outcome.ok ? 0 : 1;
}

}  // namespace mirror
