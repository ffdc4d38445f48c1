#include "doctest.h"

#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "msow/biinf.hpp"
#include "msow/config.hpp"
#include "msow/decide.hpp"
#include "oracles.hpp"

using namespace msow;

namespace {

// Recurrent on a window: every factor (length <= 4) of the middle stretch
// shows up far out on both sides.
bool window_recurrent(const BiWord& w) {
  long long reach = 40;
  auto middle = oracle::factors_of(oracle::window_of(w, -reach, reach), 4);
  auto left = oracle::factors_of(oracle::window_of(w, -4 * reach, -2 * reach), 4);
  auto right = oracle::factors_of(oracle::window_of(w, 2 * reach, 4 * reach), 4);
  for (const auto& f : middle)
    if (!left.count(f) || !right.count(f)) return false;
  return true;
}

bool is_factor(const FiniteWord& hay, const FiniteWord& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("recurrence and periods") {
  BiWord alt{"01", "", "01", 0};
  CHECK(is_recurrent(alt));
  CHECK(period(alt) == 2);
  CHECK_FALSE(is_recurrent(BiWord{"0", "1", "0", 0}));
  CHECK(period(BiWord{"0", "", "0", 0}) == 1);
  CHECK_FALSE(period(BiWord{"0", "1", "0", 0}));
  CHECK_FALSE(is_recurrent(BiWord{"01", "", "10", 0}));
}

TEST_CASE("recurrent presentations are periodic with period dividing |x|") {
  for (const auto& w : corpus::bi_words(4, 4)) {
    bool rec = is_recurrent(w);
    CHECK(rec == window_recurrent(w));
    auto p = period(w);
    CHECK(rec == p.has_value());
    if (p) {
      CHECK(static_cast<long long>(w.x.size()) % *p == 0);
      CHECK(*p == oracle::window_period(w, 8, 30));
    }
  }
}

TEST_CASE("shift equivalence") {
  BiWord even{"01", "0", "10", 0};
  BiWord odd{"10", "1", "01", 0};
  CHECK(shift_equivalent(even, odd) == 1);
  CHECK_FALSE(shift_equivalent(BiWord{"0", "1", "0", 0}, BiWord{"0", "11", "0", 0}));
  BiWord xi{"011", "10", "01", 0};
  CHECK(shift_equivalent(xi, shift(xi, 3)) == 3);
  CHECK(shift_equivalent(xi, shift(xi, -2)) == -2);

  // no shift within |p| <= 50 is missed
  std::mt19937 rng(23);
  auto ws = corpus::bi_words(3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const BiWord& a = ws[rng() % ws.size()];
    BiWord b = trial % 2 ? shift(a, static_cast<long long>(rng() % 41) - 20) : ws[rng() % ws.size()];
    auto found = shift_equivalent(a, b);
    std::optional<long long> brute;
    for (long long d = 0; d <= 50 && !brute; ++d) {
      for (long long p : {d, -d})
        if (!brute && oracle::window_of(shift(a, p), -120, 120) == oracle::window_of(b, -120, 120)) brute = p;
    }
    CHECK(found.has_value() == brute.has_value());
    if (found && brute) CHECK(std::llabs(*found) == std::llabs(*brute));
  }
}

TEST_CASE("equivalence of bi-infinite words") {
  CHECK(mso_equivalent(BiWord{"01", "", "01", 0}, BiWord{"10", "", "10", 0}));
  CHECK_FALSE(mso_equivalent(BiWord{"0", "1", "0", 0}, BiWord{"0", "11", "0", 0}));
  CHECK(mso_equivalent(*all_words().dfa, *all_words().dfa));
  CHECK(mso_equivalent(BiWord{"01", "", "01", 0}, *alternating_factors().dfa));
  CHECK_FALSE(mso_equivalent(BiWord{"0", "1", "0", 0}, *all_words().dfa));
}

TEST_CASE("classification") {
  EquivalenceClassReport alt = classify(BiWord{"01", "", "01", 0});
  CHECK(alt.kind == ClassKind::Periodic);
  CHECK(alt.period == 2);
  CHECK(alt.cardinality == "2");
  CHECK(enumerate_class(BiWord{"01", "", "01", 0}).size() == 2);
  EquivalenceClassReport lone = classify(BiWord{"0", "1", "0", 0});
  CHECK(lone.kind == ClassKind::NonRecurrent);
  CHECK(lone.cardinality == "aleph0");
  REQUIRE(lone.witness);
  CHECK(*lone.witness == "1");
  CHECK(lone.describe() == "non-recurrent; class cardinality aleph0");
  EquivalenceClassReport rich = classify(*all_words().dfa);
  CHECK(rich.kind == ClassKind::RecurrentNonPeriodic);
  CHECK(rich.cardinality == "continuum");
  EquivalenceClassReport gm = classify(*golden_mean().dfa);
  CHECK(gm.kind == ClassKind::RecurrentNonPeriodic);
  EquivalenceClassReport three = classify(factor_automaton(UpWord{"", "001", 1}));
  CHECK(three.kind == ClassKind::Periodic);
  CHECK(three.period == 3);
  CHECK_THROWS_AS(enumerate_class(BiWord{"0", "1", "0", 0}), UsageError);

  auto shifts = enumerate_class(BiWord{"011", "", "011", 0});
  CHECK(shifts.size() == 3);
  for (std::size_t i = 0; i < shifts.size(); ++i)
    for (std::size_t j = i + 1; j < shifts.size(); ++j) CHECK_FALSE(equal_bi(shifts[i], shifts[j]));
}

TEST_CASE("determining words") {
  Dfa alt = *alternating_factors().dfa;
  CHECK(determining_check(alt, "0") == Determining::Both);
  for (const auto& u : corpus::binary_words(0, 4)) CHECK(determining_check(*all_words().dfa, u) == Determining::Neither);
  CHECK(has_determining_word(alt));
  CHECK_FALSE(has_determining_word(*all_words().dfa));
  Dfa not_factorial;
  not_factorial.width = 1;
  not_factorial.n = 2;
  not_factorial.delta = {0, 1, 1, 1};
  not_factorial.acc = {0, 1};
  CHECK_THROWS_AS(determining_check(not_factorial, "1"), PropertyError);

  // against unique extensions counted directly
  for (const Dfa& lang : {alt, *golden_mean().dfa, factor_automaton(UpWord{"", "001", 1}),
                          factor_automaton(BiWord{"0", "1", "0", 0})}) {
    for (const auto& u : corpus::binary_words(0, 4)) {
      if (!oracle::dfa_member(lang, u)) continue;
      bool right = true, left = true;
      for (int m = 1; m <= 6; ++m) {
        int r = 0, l = 0;
        for (const auto& v : corpus::binary_words(m, m)) {
          r += oracle::dfa_member(lang, u + v);
          l += oracle::dfa_member(lang, v + u);
        }
        right = right && r == 1;
        left = left && l == 1;
      }
      Determining expect = left && right ? Determining::Both
                           : left        ? Determining::Left
                           : right       ? Determining::Right
                                         : Determining::Neither;
      CHECK(determining_check(lang, u) == expect);
    }
  }
}

TEST_CASE("language conditions") {
  CHECK(check_conditions(all_words()).all());
  CHECK(check_conditions(all_words()).exact);
  CHECK(check_conditions(alternating_factors()).all());
  Language lf = gap_pair_language([](std::uint64_t i) { return i; }, "f=id");
  LanguageConditions c = check_conditions(lf);
  CHECK(c.all());
  CHECK_FALSE(c.exact);
  CHECK(lf.member("10001001"));
  CHECK_FALSE(lf.member("1000100001"));
  Language broken{"no-ones", [](const FiniteWord& w) { return w.find('1') == std::string::npos && !w.empty(); },
                  std::nullopt, 0};
  CHECK(check_conditions(broken).first_failure().find("(b)") != std::string::npos);
}

TEST_CASE("enumerations") {
  Enumeration f(all_words());
  CHECK(f(0).empty());
  CHECK(f(1) == "0");
  CHECK(f(2) == "1");
  CHECK(f(3) == "00");
  CHECK(f(6) == "11");
  Enumeration g(golden_mean());
  for (std::size_t i = 0; i < 30; ++i) CHECK(golden_mean().member(g(i)));
  Enumeration twisted(all_words(), 99);
  std::set<FiniteWord> seen;
  for (std::size_t i = 0; i < 31; ++i) {
    seen.insert(twisted(i));
    if (i > 0) CHECK(twisted(i - 1).size() <= twisted(i).size());
  }
  CHECK(seen.size() == 31);

  // automaton languages against a scan of all words by length
  for (const Language& lang : {golden_mean(), alternating_factors(), language_of(factor_automaton(UpWord{"", "001", 1}), "001")})
    for (std::uint64_t seed : {0, 7}) {
      Enumeration e(lang, seed);
      std::size_t i = 0;
      for (std::size_t len = 0; len <= 10; ++len) {
        std::vector<std::pair<FiniteWord, FiniteWord>> block;
        for (const auto& w : corpus::binary_words(static_cast<int>(len), static_cast<int>(len)))
          if (lang.member(w)) {
            FiniteWord key = w;
            for (std::size_t p = 0; p < len; ++p)
              if (e.mask_bit(len, p)) key[p] = key[p] == '0' ? '1' : '0';
            block.emplace_back(key, w);
          }
        std::sort(block.begin(), block.end());
        for (const auto& kw : block) CHECK(e(i++) == kw.second);
      }
    }
  Enumeration sparse(alternating_factors());
  CHECK(sparse(400).size() == 200);
}

TEST_CASE("realizer streams") {
  for (Language lang : {all_words(), alternating_factors()}) {
    RealizerStream r(lang);
    FiniteWord previous = r.current().word;
    for (int s = 1; s <= 12; ++s) {
      r.step();
      BiPrefix p = r.current();
      CHECK(lang.member(p.word));
      CHECK(is_factor(p.word, previous));
      for (std::size_t i = 0; i <= static_cast<std::size_t>(s); ++i) CHECK(is_factor(p.word, r.enumeration()(i)));
      previous = p.word;
    }
  }
  Dfa zeros = factor_automaton(UpWord{"", "0", 1});
  RealizerStream z(language_of(zeros, "zeros"));
  for (int s = 0; s < 5; ++s) z.step();
  CHECK(z.current().word.find('1') == std::string::npos);

  Dfa runs;
  runs.width = 1;
  runs.n = 4;
  runs.delta = {1, 2, 1, 3, 3, 2, 3, 3};
  runs.acc = {1, 1, 1, 0};
  try {
    RealizerStream bad(language_of(runs, "runs"));
    FAIL("accepted 0* u 1*");
  } catch (const PropertyError& e) {
    CHECK(std::string(e.what()).find("(c)") != std::string::npos);
  }
}

TEST_CASE("block sentences follow the image of f") {
  CHECK(decide_finite("1011", pair_block_sentence(0)));
  CHECK(decide_finite("11000100001", pair_block_sentence(2)));
  CHECK_FALSE(decide_finite("11000100001", pair_block_sentence(1)));
  CHECK_FALSE(decide_finite("1001", pair_block_sentence(0)));
  CHECK(decide_finite("10001001", pair_block_sentence(1)));

  Language doubled = gap_pair_language([](std::uint64_t i) { return 2 * i; }, "f=2i");
  RealizerStream r(doubled);
  for (int s = 0; s < 3000; ++s) r.step();
  FiniteWord w = r.current().word;
  CHECK(doubled.member(w));
  for (std::uint64_t j = 0; j <= 4; ++j) CHECK(decide_finite(w, pair_block_sentence(j)) == (j % 2 == 0));
}

TEST_CASE("rich words and interleaving") {
  CHECK(rich_segment(0).empty());
  CHECK(rich_segment(1) == "0");
  CHECK(rich_segment(2) == "1");
  CHECK(rich_segment(3) == "00");
  CHECK(rich_segment(14) == "111");
  BiPrefix p = rich_word_prefix(30);
  for (const auto& w : corpus::binary_words(0, 3)) CHECK(is_factor(p.word, w));
  CHECK(p.word.substr(static_cast<std::size_t>(p.origin), 3) == "010");

  FiniteWord beta = interleave_with_oracle("101", 5);
  CHECK(beta[0] == '1');
  CHECK(beta[1] == '0');
  CHECK(beta[3] == '1');
  CHECK(decode_interleaved(beta, 3) == "101");
  FiniteWord plain = interleave_with_oracle("", 4);
  CHECK(plain == "0" + rich_segment(0) + "0" + rich_segment(1) + "0" + rich_segment(2) + "0" + rich_segment(3));
}

TEST_CASE("embedding oracle bits") {
  for (Language lang : {all_words(), golden_mean()}) {
    EmbeddingState s = embed_oracle(lang, "10110");
    CHECK(decode_oracle(lang, s.right, 5) == "10110");
    CHECK(lang.member(s.word()));
    CHECK(s.tuples.size() == 6);
    FiniteWord before = embed_oracle(lang, "1011").word();
    CHECK(is_factor(s.word(), before));
    EmbeddingState t = embed_oracle(lang, "10100");
    CHECK(t.right != s.right);
  }
  EmbeddingState seeded = embed_oracle(all_words(), "0110", 7);
  CHECK(decode_oracle(all_words(), seeded.right, 4, 7) == "0110");
  CHECK_THROWS_AS(embed_oracle(alternating_factors(), "1"), PropertyError);
  CHECK_THROWS_AS(decode_oracle(all_words(), "0", 3), UsageError);
}
