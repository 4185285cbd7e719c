#include "doctest.h"

#include "mirror/certifier.hpp"
#include "mirror/dwork.hpp"
#include "mirror/mirror_maps.hpp"

#include <random>

using namespace mirror;

namespace {

LemmaParams params(std::initializer_list<std::pair<const std::string, std::int64_t>> values,
                   NVector Nvec = {}) {
  LemmaParams out;
  out.values = values;
  out.Nvec = std::move(Nvec);
  return out;
}

// Oracle for the coefficient form: builds the series directly.
Rational lemma4_coefficient(const TruncSeries& f, const TruncSeries& g,
                            std::uint64_t p, std::size_t index) {
  auto h = f * substitute_pth_power(g, p) - Rational(p) * (substitute_pth_power(f, p) * g);
  return h[index];
}

}  // namespace

TEST_CASE("c_sum examples") {
  for (std::uint64_t p : {2u, 3u, 7u}) {
    CHECK(c_sum({5}, 3, p, 0, 0, Family::plain) == 0);
    CHECK(c_sum({6}, 2, p, 0, 0, Family::zudilin) == 0);
  }
  // Single term j = 0: B(1) B(0) (H_0 - 7 H_5) = -7 * 120 * 137/60.
  CHECK(c_sum({5}, 5, 7, 1, 0, Family::plain) == -7 * 274);
  CHECK(c_sum({5}, 5, 7, 1, 0, Family::plain) ==
        -7 * Rational(factorial(5)) * harmonic(5));
  CHECK_THROWS_AS(c_sum({5}, 5, 7, 7, 0, Family::plain), ParameterError);
}

TEST_CASE("c_sum is the (a+Kp)-th coefficient of f g(z^p) - p f(z^p) g") {
  std::mt19937_64 rng(50);
  struct Case {
    NVector v;
    unsigned L;
    Family fam;
  };
  const std::size_t order = 60;
  for (const auto& c : {Case{{5}, 5, Family::plain}, Case{{3, 2}, 2, Family::plain},
                        Case{{6}, 4, Family::zudilin}, Case{{4, 3}, 3, Family::zudilin}}) {
    auto f = build_F(c.v, c.fam, order);
    auto g = build_GL(c.v, c.L, c.fam, order);
    for (int draw = 0; draw < 50; ++draw) {
      std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[rng() % 4];
      std::uint64_t index = 1 + rng() % order;
      std::uint64_t a = index % p, K = index / p;
      REQUIRE(c_sum(c.v, c.L, p, a, K, c.fam) == lemma4_coefficient(f, g, p, index));
    }
  }
}

TEST_CASE("s_sum examples") {
  // Every argument K - j is negative for m p^s > K.
  CHECK(s_sum({3}, 5, 2, 3, 1, 1, Family::plain) == 0);
  auto v = s_sum({2}, 3, 1, 2, 0, 1, Family::plain);
  CHECK(vp_rat(v, 3) >= Valuation(1 + vp_bN(2, 1, 3)));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    std::uint64_t a = rng() % 5, K = rng() % 30, m = rng() % 3;
    unsigned s = static_cast<unsigned>(rng() % 3);
    auto bold = s_sum({6}, 5, a, K, s, m, Family::zudilin);
    REQUIRE(vp_rat(bold, 5) >= Valuation(static_cast<long>(s) + 1 + vp_bbN(6, m, 5)));
  }
}

TEST_CASE("Dwork's rearrangement holds exactly") {
  std::mt19937_64 rng(107);
  for (int draw = 0; draw < 60; ++draw) {
    NVector v = {1 + static_cast<unsigned>(rng() % 8)};
    if (rng() % 2) {
      v.push_back(1 + static_cast<unsigned>(rng() % v[0]));
    }
    unsigned L = 1 + static_cast<unsigned>(rng() % v[0]);
    std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7, 11}[rng() % 5];
    std::uint64_t a = rng() % p, K = rng() % 40;
    Family fam = rng() % 2 ? Family::plain : Family::zudilin;
    auto sides = rearrangement_sides(v, L, p, a, K, fam);
    REQUIRE(sides.lhs == sides.rhs);
  }
}

TEST_CASE("Dwork's three conditions") {
  auto plain = dwork_conditions_check(Family::plain, {5}, 3, {2, 6});
  CHECK_MESSAGE(plain.pass, plain.detail);
  auto bold = dwork_conditions_check(Family::zudilin, {6}, 5, {2, 5});
  CHECK_MESSAGE(bold.pass, bold.detail);
  CHECK(dwork_conditions_check(Family::plain, {3, 2}, 2, {2, 5}).pass);
  CHECK(dwork_conditions_check(Family::plain, {4}, 7, {0, 8}).pass);
}

TEST_CASE("Dieudonne-Dwork ratio test") {
  std::vector<Rational> geo(21, Rational(1));
  CHECK(dieudonne_dwork_check(TruncSeries(geo), 2, 20).pass);
  auto q55 = build_qLN({5}, 5, 40, Family::plain).q;
  CHECK(dieudonne_dwork_check(q55, 3, 40).pass);
  auto e = exp_series(TruncSeries::variable(12));
  auto rep = dieudonne_dwork_check(e, 2, 12);
  CHECK_FALSE(rep.pass);
  // S(z^2)/S(z)^2 = exp(z^2 - 2z) = 1 - 2z + 3z^2 + ...
  CHECK(rep.witness_index == 2u);
  CHECK_THROWS_AS(dieudonne_dwork_check(TruncSeries::variable(4), 2, 4), ParameterError);
}

TEST_CASE("Dieudonne-Dwork agrees with p-integrality of roots") {
  auto q = build_qLN({4}, 4, 30, Family::plain);
  for (unsigned e = 0; e <= 4; ++e) {
    Integer d = 1;
    for (unsigned i = 0; i < e; ++i) {
      d *= 2;
    }
    auto root = exp_of_quotient(q.G, q.F, make_rational(1, d), 30);
    bool two_integral = true;
    for (std::size_t i = 0; i <= 30; ++i) {
      if (vp_rat(root[i], 2) < Valuation(0)) {
        two_integral = false;
      }
    }
    REQUIRE(dieudonne_dwork_check(root, 2, 30).pass == two_integral);
  }
}

TEST_CASE("quotient congruence criterion") {
  const std::size_t order = 40;
  auto f = build_FN(5, 1, order);
  auto g = build_GL({5}, 5, Family::plain, order);
  Rational tau = make_rational(capital_M({5}), theta(5));
  CHECK(tau == 2);
  CHECK(quotient_congruence_check(f, g, tau, 2, order).pass);
  for (unsigned L = 1; L <= 6; ++L) {
    auto bf = build_F({6}, Family::zudilin, order);
    auto bg = build_GL({6}, L, Family::zudilin, order);
    CHECK(quotient_congruence_check(bf, bg, 1, 5, order).pass);
  }
  CHECK(quotient_congruence_check(f, TruncSeries(order), 7, 3, order).pass);
  CHECK_THROWS_AS(quotient_congruence_check(f, g, 0, 2, order), ParameterError);
}

TEST_CASE("quotient congruence matches p-integrality of exp(g/(tau f))") {
  const std::size_t order = 30;
  auto f = build_FN(5, 1, order);
  auto g = build_GL({5}, 5, Family::plain, order);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    Integer tau = 1;
    for (int e = 0; e <= 4; ++e, tau *= p) {
      auto root = exp_of_quotient(g, f, make_rational(1, tau), order);
      bool p_integral = true;
      for (std::size_t i = 0; i <= order; ++i) {
        if (vp_rat(root[i], p) < Valuation(0)) {
          p_integral = false;
        }
      }
      REQUIRE(quotient_congruence_check(f, g, Rational(tau), p, order).pass == p_integral);
    }
  }
}

TEST_CASE("lemma instances from the worked examples") {
  auto j = check_lemma(LemmaId::J, params({{"p", 3}, {"J", 7}}));
  CHECK(j.pass());
  CHECK(j.achieved == Valuation(1));
  CHECK(Rational(3) * harmonic(7) - harmonic(2) == make_rational(879, 140));
  auto w1 = check_lemma(LemmaId::W1, params({{"p", 5}, {"r", 1}}));
  CHECK(w1.achieved == Valuation(2));
  CHECK(w1.pass());
  auto ch = check_lemma(LemmaId::congH, params({{"p", 7}, {"N", 7}}));
  CHECK(ch.expect_member);
  CHECK(ch.pass());
  auto ch_no = check_lemma(LemmaId::congH, params({{"p", 7}, {"N", 3}}));
  CHECK_FALSE(ch_no.expect_member);
  CHECK(ch_no.achieved < Valuation(4));
  CHECK(ch_no.pass());
  auto w2 = check_lemma(LemmaId::W2, params({{"p", 5}, {"J", 25}}));
  CHECK(w2.pass());
  CHECK(w2.target == Valuation(3));
  CHECK(check_lemma(LemmaId::W2, params({{"p", 3}, {"J", 9}})).target == Valuation(2));
  auto g1 = check_lemma(LemmaId::gammap, params({{"p", 5}, {"part", 1}, {"n", 3}}));
  CHECK(g1.achieved.is_infinite());
  CHECK(g1.pass());
  CHECK(check_lemma(LemmaId::gammap,
                    params({{"p", 2}, {"part", 2}, {"k", 3}, {"n", 2}, {"s", 3}}))
            .pass());
  CHECK(check_lemma(LemmaId::diviBB, params({{"m", 7}}, {6, 4})).pass());
  CHECK(check_lemma(LemmaId::L12, params({{"p", 5}, {"L", 5}, {"a", 3}, {"j", 4}}, {5})).pass());
}

TEST_CASE("lemma hypotheses are enforced") {
  CHECK_THROWS_AS(check_lemma(LemmaId::W1, params({{"p", 3}, {"r", 1}})), ParameterError);
  CHECK_THROWS_AS(check_lemma(LemmaId::W2, params({{"p", 5}, {"J", 7}})), ParameterError);
  CHECK_THROWS_AS(check_lemma(LemmaId::W3, params({{"p", 5}, {"J", 5}})), ParameterError);
  CHECK_THROWS_AS(check_lemma(LemmaId::L6, params({{"p", 3}, {"N", 2}, {"n", 1}, {"s", 1}, {"u", 3}})),
                  ParameterError);
  CHECK_THROWS_AS(check_lemma(LemmaId::L12, params({{"p", 5}, {"L", 6}, {"a", 1}, {"j", 0}}, {5})),
                  ParameterError);
  CHECK_THROWS_AS(check_lemma(LemmaId::B1, params({{"p", 5}, {"N", 3}, {"a", 1}})), ParameterError);
  CHECK_THROWS_AS(check_lemma(LemmaId::C1, params({{"p", 5}, {"N", 3}, {"m", 10}})), ParameterError);
  CHECK_THROWS_AS(check_lemma(LemmaId::ultime, params({{"p", 2}, {"m", 1}, {"r", 1}, {"w", 2}}, {6})),
                  ParameterError);
  CHECK_THROWS_AS(check_lemma(LemmaId::J, params({{"p", 4}, {"J", 7}})), ParameterError);
  CHECK_THROWS_AS(check_lemma(LemmaId::J, params({{"p", 3}})), ParameterError);
  CHECK_THROWS_AS(check_lemma(LemmaId::gammap,
                              params({{"p", 2}, {"part", 2}, {"k", 2}, {"n", 1}, {"s", 2}})),
                  ParameterError);
  CHECK_THROWS_AS(parse_lemma("L99"), ParameterError);
}

TEST_CASE("Gamma_2 periodicity fails modulo 4") {
  // Why the lemma refuses p = 2, s = 2.
  CHECK(gamma_p(6, 2) == 15);
  CHECK(gamma_p(2, 2) == 1);
  CHECK(vp_int(gamma_p(6, 2) - gamma_p(2, 2), 2) == Valuation(1));
}

TEST_CASE("lemma ids round-trip") {
  for (auto id : all_lemmas()) {
    REQUIRE(parse_lemma(to_string(id)) == id);
  }
}

TEST_CASE("randomized lemma suite: 1000 draws per lemma") {
  std::size_t seen = 0;
  std::vector<std::string> failures;
  auto summary = run_lemma_suite(42, 1000, SuiteBounds{}, all_lemmas(),
                                 [&](const CongruenceInstance& inst) {
                                   ++seen;
                                   if (!inst.pass() && failures.size() < 5) {
                                     failures.push_back(to_string(inst.lemma) + ": " + inst.detail);
                                   }
                                 });
  for (const auto& f : failures) {
    MESSAGE(f);
  }
  CHECK(summary.instances == 1000 * all_lemmas().size());
  CHECK(seen == summary.instances);
  CHECK(summary.failures == 0);
}

TEST_CASE("suite draws are reproducible from the seed") {
  std::vector<std::string> first, second;
  auto collect = [](std::vector<std::string>& out) {
    return [&out](const CongruenceInstance& inst) {
      std::string key = to_string(inst.lemma);
      for (const auto& [k, v] : inst.params.values) {
        key += " " + k + "=" + std::to_string(v);
      }
      out.push_back(key);
    };
  };
  run_lemma_suite(9, 5, SuiteBounds{}, all_lemmas(), collect(first));
  run_lemma_suite(9, 5, SuiteBounds{}, all_lemmas(), collect(second));
  CHECK(first == second);
}
