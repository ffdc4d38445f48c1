#include "doctest.h"

#include <random>

#include "corpus.hpp"
#include "msow/automata.hpp"
#include "msow/compiler.hpp"
#include "msow/config.hpp"
#include "oracles.hpp"

using namespace msow;

namespace {

Dfa contains_one() {
  Dfa d;
  d.width = 1;
  d.n = 2;
  d.delta = {0, 1, 1, 1};
  d.acc = {0, 1};
  return d;
}

// 0* u 1*
Dfa constant_runs() {
  Dfa d;
  d.width = 1;
  d.n = 4;
  d.delta = {1, 2, 1, 3, 3, 2, 3, 3};
  d.acc = {1, 1, 1, 0};
  return d;
}

Nba infinitely_many_ones() {
  Nba a;
  a.width = 1;
  a.n = 2;
  a.delta.assign(4, {});
  a.succ(0, 0).push_back(0);
  a.succ(0, 1).push_back(1);
  a.succ(1, 0).push_back(0);
  a.succ(1, 1).push_back(1);
  a.init = {0};
  a.acc = {0, 1};
  return a;
}

std::vector<int> letters(const std::string& w) { return symbols_of(w); }

}  // namespace

TEST_CASE("boolean operations on finite-word automata") {
  Dfa one = contains_one();
  CHECK(dfa_complement(one).accepts(letters("000")));
  CHECK_FALSE(dfa_complement(one).accepts(letters("010")));
  CHECK(dfa_is_empty(dfa_minimize(dfa_product(one, dfa_complement(one), BoolOp::And))));
  CHECK(dfa_equivalent(dfa_complement(dfa_complement(one)), one));
  CHECK(dfa_equivalent(dfa_minimize(nfa_determinize(dfa_to_nfa(one))), one));
  CHECK_THROWS_AS(dfa_product(one, dfa_universal(2), BoolOp::And), UsageError);

  // X(x) & P(x) on tracks (P, X), projected over X
  CompiledFormula cf = compile_finite(parse("X(x) & P(x)", {"x", "X"}));
  Dfa proj = dfa_minimize(nfa_determinize(nfa_project(cf.finite, cf.track_of("X"))));
  Dfa again = dfa_minimize(nfa_determinize(nfa_project(proj, 1)));
  CHECK(again.accepts(letters("010")));
  CHECK_FALSE(again.accepts(letters("000")));
}

TEST_CASE("shortest words") {
  auto w = dfa_shortest_word(contains_one());
  REQUIRE(w);
  CHECK(*w == letters("1"));
  CHECK_FALSE(dfa_shortest_word(dfa_empty(1)));
  CHECK(dfa_shortest_word(dfa_universal(1))->empty());
  CHECK(*dfa_shortest_word(dfa_nonempty(1)) == letters("0"));
}

TEST_CASE("lasso membership") {
  Nba a = infinitely_many_ones();
  CHECK(nba_membership_up(a, UpWord{"", "10", 1}));
  CHECK_FALSE(nba_membership_up(a, UpWord{"1", "0", 1}));
  CHECK_THROWS_AS(nba_membership_up(a, UpWord{"1", "", 1}), UsageError);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Nba r = oracle::random_nba(rng, 4);
    UpWord w = oracle::random_up(rng, 3, 3);
    bool member = nba_membership_up(r, w);
    CHECK(member == oracle::nba_accepts_lasso(r, w));
    UpWord rotated{w.u + w.v.substr(0, 1), w.v.substr(1) + w.v.substr(0, 1), 1};
    CHECK(member == nba_membership_up(r, rotated));
  }
}

TEST_CASE("transition profiles form a monoid morphism") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Nba r = oracle::random_nba(rng, 4);
    UpWord a = oracle::random_up(rng, 4, 4), b = oracle::random_up(rng, 4, 4);
    TransitionProfile pa = profile_of(r, letters(a.u)), pb = profile_of(r, letters(b.v));
    TransitionProfile pc = profile_of(r, letters(a.v));
    CHECK(profile_of(r, letters(a.u + b.v)) == profile_compose(pa, pb));
    CHECK(profile_compose(profile_compose(pa, pb), pc) == profile_compose(pa, profile_compose(pb, pc)));
    TransitionProfile e = profile_idempotent(pa);
    CHECK(profile_compose(e, e) == e);
  }
}

TEST_CASE("complementation") {
  Nba a = infinitely_many_ones();
  Nba c = nba_complement(a);
  CHECK(nba_membership_up(c, UpWord{"", "0", 1}));
  CHECK_FALSE(nba_membership_up(c, UpWord{"0", "01", 1}));
  Nba all = nba_complement(nba_empty(1));
  for (const auto& w : corpus::up_words(2, 2)) CHECK(nba_membership_up(all, w));

  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Nba r = oracle::random_nba(rng, 3);
    Nba rc = nba_complement(r);
    for (const auto& w : corpus::up_words(2, 2)) CHECK(nba_membership_up(r, w) != nba_membership_up(rc, w));
  }
  int saved = config().nba_complement_cap;
  config().nba_complement_cap = 2;
  Nba big = oracle::random_nba(rng, 1);
  big.n = 3;
  big.delta.assign(6, {});
  big.acc.assign(3, 0);
  CHECK_THROWS_AS(nba_complement(big), ResourceError);
  config().nba_complement_cap = saved;
}

TEST_CASE("factor automata") {
  Dfa zeros = factor_automaton(UpWord{"", "0", 1});
  for (const auto& w : corpus::binary_words(0, 6))
    CHECK(oracle::dfa_member(zeros, w) == (w.find('1') == std::string::npos));

  Dfa alt = factor_automaton(UpWord{"", "01", 1});
  for (const auto& w : corpus::binary_words(0, 6))
    CHECK(oracle::dfa_member(alt, w) ==
          (w.find("00") == std::string::npos && w.find("11") == std::string::npos));

  for (const BiWord& b : {BiWord{"0", "1", "0", 0}, BiWord{"01", "1", "10", 0}, BiWord{"011", "", "0", 0}}) {
    Dfa f = factor_automaton(b);
    auto expect = oracle::factors_of(oracle::window_of(b, -30, 30), 6);
    for (const auto& w : corpus::binary_words(0, 6)) CHECK(oracle::dfa_member(f, w) == (expect.count(w) > 0));
    CHECK(factorial_check(f));
  }
}

TEST_CASE("factorial and extension conditions") {
  CHECK(factorial_check(dfa_universal(1)));
  CHECK(extension_check(dfa_universal(1)));
  CHECK(factorial_check(constant_runs()));
  CHECK_FALSE(extension_check(constant_runs()));
  CHECK_FALSE(factorial_check(contains_one()));
  CHECK(has_nonempty_word(constant_runs()));
  CHECK_FALSE(has_nonempty_word(factor_automaton(dfa_empty(1))));

  // extension against a bounded join search
  for (const Dfa& d : {factor_automaton(UpWord{"", "01", 1}), factor_automaton(BiWord{"0", "1", "0", 0}),
                       factor_automaton(UpWord{"", "001", 1}), constant_runs()}) {
    bool joined = true;
    auto words = corpus::binary_words(0, 4);
    for (const auto& u : words) {
      if (!oracle::dfa_member(d, u)) continue;
      for (const auto& w : words) {
        if (!oracle::dfa_member(d, w)) continue;
        bool ok = false;
        for (const auto& v : corpus::binary_words(0, 8))
          if (oracle::dfa_member(d, u + v + w)) {
            ok = true;
            break;
          }
        joined = joined && ok;
      }
    }
    CHECK(extension_check(d) == joined);
  }
}

TEST_CASE("transition monoid") {
  TransitionMonoid m = transition_monoid(factor_automaton(UpWord{"", "01", 1}), 1000);
  REQUIRE(!m.elements.empty());
  for (std::size_t i = 0; i < m.elements[0].size(); ++i) CHECK(m.elements[0][i] == static_cast<int>(i));
  for (std::size_t e = 0; e < m.elements.size(); ++e)
    for (int a = 0; a < 2; ++a) CHECK(m.right[e][a] < static_cast<int>(m.elements.size()));
  CHECK_THROWS_AS(transition_monoid(dfa_minimize(compile_finite(parse("E x. E y. E z. x < y & y < z & P(x) & "
                                                                        "!P(y) & P(z)"))
                                                      .finite),
                                    1),
                  ResourceError);
}

TEST_CASE("serialization") {
  Dfa d = constant_runs();
  Dfa back = dfa_from_text(to_text(d));
  CHECK(dfa_equivalent(d, back));
  CHECK(to_text(back) == to_text(dfa_from_text(to_text(back))));
  Nba a = infinitely_many_ones();
  Nba b = nba_from_text(to_text(a, "nba"));
  for (const auto& w : corpus::up_words(2, 3)) CHECK(nba_membership_up(a, w) == nba_membership_up(b, w));
  CHECK(to_json(d).find("\"states\"") != std::string::npos);
  CHECK_THROWS(dfa_from_text("dfa width=1 states=2\n0 1 7\n"));
}
