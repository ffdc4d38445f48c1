#include "doctest.h"

#include <random>

#include "corpus.hpp"
#include "msow/compiler.hpp"
#include "msow/config.hpp"
#include "msow/decide.hpp"
#include "msow/formula.hpp"

using namespace msow;

namespace {

// The macros nest quantifiers beyond the default brute-force budget; the
// words here are short enough to afford it.
bool holds(const FiniteWord& w, const Formula& phi, std::map<std::string, long long> fo = {}) {
  Valuation nu;
  nu.fo = std::move(fo);
  int saved = config().brute_force_qr;
  config().brute_force_qr = 8;
  bool v = brute_force_eval(w, phi, nu);
  config().brute_force_qr = saved;
  return v;
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  Formula f = parse("E x. P(x)");
  CHECK(f->kind == Kind::ExistsFo);
  CHECK(f->a == "x");
  CHECK(f->left->kind == Kind::Letter);

  Formula g = parse("E2 X. A z. X(z)");
  CHECK(g->kind == Kind::ExistsSo);
  CHECK(g->left->kind == Kind::ForallFo);
  CHECK(g->left->left->kind == Kind::In);
}

TEST_CASE("syntax errors carry the column") {
  try {
    parse("P(x", {"x"});
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.column() == 4);
  }
  CHECK_THROWS_AS(parse("E x. P(y)"), SyntaxError);
  CHECK_NOTHROW(parse("P(y)", {"y"}));
  CHECK_THROWS_AS(parse("E x. divides(0, x, x)"), SyntaxError);
}

TEST_CASE("printing round-trips") {
  for (const auto& text : corpus::sentence_texts()) {
    Formula f = parse(text);
    Formula again = parse(to_string(f));
    CHECK(canonical_key(f) == canonical_key(again));
  }
  CHECK(canonical_key(parse("E x. P(x)")) == canonical_key(parse("E y. P(y)")));
}

TEST_CASE("precedence: ! > & > | > ->") {
  Formula f = parse("P(x) | P(y) & !P(z) -> P(x)", {"x", "y", "z"});
  CHECK(f->kind == Kind::Implies);
  CHECK(f->left->kind == Kind::Or);
  CHECK(f->left->right->kind == Kind::And);
  CHECK(f->left->right->right->kind == Kind::Not);
}

TEST_CASE("quantifier rank") {
  CHECK(quantifier_rank(parse("P(x)", {"x"})) == 0);
  CHECK(quantifier_rank(parse("E x. P(x)")) == 1);
  CHECK(quantifier_rank(parse("E x. A y. x <= y")) == 2);
  CHECK(quantifier_rank(parse("E2 X. E x. X(x) & E y. P(y)")) == 3);
  for (const auto& f : corpus::sentences()) CHECK(quantifier_rank(reverse_formula(f)) == quantifier_rank(f));
}

TEST_CASE("divides macro on small words") {
  Formula d3 = macro_divides(3, "x", "y");
  CHECK(holds("00000", d3, {{"x", 0}, {"y", 3}}));
  CHECK_FALSE(holds("00000", d3, {{"x", 0}, {"y", 2}}));
  CHECK(holds("000", macro_divides(1, "x", "y"), {{"x", 2}, {"y", 2}}));
  CHECK_FALSE(holds("0000", d3, {{"x", 3}, {"y", 0}}));
  CHECK_THROWS_AS(macro_divides(0, "x", "y"), UsageError);
}

TEST_CASE("positional macros") {
  Formula s = macro_succ("x", "y");
  CHECK(holds("000", s, {{"x", 1}, {"y", 2}}));
  CHECK_FALSE(holds("000", s, {{"x", 0}, {"y", 2}}));
  Formula plus2 = macro_letter_at_plus("x", 2);
  CHECK(holds("0010", plus2, {{"x", 0}}));
  CHECK_FALSE(holds("0010", plus2, {{"x", 1}}));
  CHECK_FALSE(holds("001", plus2, {{"x", 2}}));
  Formula least2 = macro_at_least(2, "x");
  CHECK_FALSE(holds("0000", least2, {{"x", 1}}));
  CHECK(holds("0000", least2, {{"x", 2}}));
  for (int m = 0; m <= 2; ++m)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        bool expect = i <= j && (j - i) % (1 << m) == 0;
        CHECK(holds("000000", macro_pow2_divides(m, "x", "y"), {{"x", i}, {"y", j}}) == expect);
      }
}

TEST_CASE("relativize") {
  Formula some = parse("E z. P(z)");
  Formula rel = relativize(some, "x", "y");
  CHECK_FALSE(holds("0110", rel, {{"x", 0}, {"y", 0}}));
  CHECK(holds("0110", rel, {{"x", 0}, {"y", 2}}));
  CHECK(holds("0110", relativize(parse("A z. P(z)"), "x", "y"), {{"x", 1}, {"y", 2}}));
  CHECK_THROWS_AS(relativize(parse("E x. P(x)"), "x", "y"), UsageError);

  std::mt19937 rng(7);
  for (const auto& phi : corpus::sentences(2)) {
    Formula r = relativize(phi, "l", "r");
    for (int trial = 0; trial < 6; ++trial) {
      int n = 1 + static_cast<int>(rng() % 6);
      FiniteWord w;
      for (int i = 0; i < n; ++i) w += letter_char(static_cast<int>(rng() % 2));
      int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
      if (i > j) std::swap(i, j);
      CHECK(holds(w, r, {{"l", i}, {"r", j}}) == brute_force_eval(w.substr(i, j - i + 1), phi));
    }
  }
}

TEST_CASE("reversal") {
  Formula r = reverse_formula(parse("x <= y", {"x", "y"}));
  CHECK(r->kind == Kind::Le);
  CHECK(r->a == "y");
  CHECK(r->b == "x");
  Formula first = parse("E x. A y. x <= y & P(x)");
  CHECK(brute_force_eval("10", parse("E x. A y. x <= y")) ==
        brute_force_eval("01", reverse_formula(parse("E x. A y. x <= y"))));
  CHECK(brute_force_eval("10", first) == brute_force_eval("01", reverse_formula(first)));
  CHECK_FALSE(brute_force_eval("0110", first));
  CHECK_FALSE(brute_force_eval("0110", reverse_formula(first)));
  for (const auto& phi : corpus::sentences())
    for (const auto& w : corpus::binary_words(0, 6))
      CHECK(brute_force_eval(w, phi) == brute_force_eval(reverse(w), reverse_formula(phi)));
}

TEST_CASE("folding sentences") {
  Formula f = fold_to_omega(parse("E x. P(x)"));
  CHECK(max_letter_track(f) == 1);
  CHECK_THROWS_AS(fold_to_omega(parse("P(x)", {"x"})), UsageError);

  Formula exactly_one = parse("E x. P(x) & A y. P(y) -> x = y");
  BiWord single{"0", "1", "0", 0};
  CHECK(decide_up(fold_word(single), fold_to_omega(exactly_one)));
  CHECK_FALSE(decide_up(fold_word(BiWord{"0", "11", "0", 0}), fold_to_omega(exactly_one)));

  Formula unbounded = parse("A x. E y. x <= y & P(y)");
  BiWord alternating{"10", "", "10", 0};
  CHECK(decide_up(fold_word(alternating), fold_to_omega(unbounded)));
  CHECK_FALSE(decide_up(fold_word(BiWord{"1", "", "0", 0}), fold_to_omega(unbounded)));
}
