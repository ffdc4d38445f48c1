#include "doctest.h"

#include "corpus.hpp"
#include "msow/automata.hpp"
#include "msow/compiler.hpp"
#include "msow/config.hpp"

using namespace msow;

TEST_CASE("finite-word compilation") {
  CompiledFormula some = compile_finite(parse("E x. P(x)"));
  CHECK(accepts_finite(some, "010"));
  CHECK_FALSE(accepts_finite(some, "000"));
  CHECK(some.finite.width == 1);

  CompiledFormula div = compile_finite(parse("divides(3, x, y)", {"x", "y"}));
  Valuation nu;
  nu.fo = {{"x", 0}, {"y", 3}};
  CHECK(accepts_finite(div, "0000", nu));
  nu.fo["y"] = 2;
  CHECK_FALSE(accepts_finite(div, "0000", nu));
}

TEST_CASE("compiled automata agree with direct semantics") {
  auto words = corpus::binary_words(0, 6);
  for (const auto& phi : corpus::sentences()) {
    CompiledFormula cf = compile_finite(phi);
    CHECK(cf.finite.width == 1);
    for (const auto& w : words) CHECK(accepts_finite(cf, w) == brute_force_eval(w, phi));
  }
}

TEST_CASE("free variables become tracks") {
  Formula f = parse("x < y & P(y) & X(x)", {"x", "y", "X"});
  CompiledFormula cf = compile_finite(f);
  CHECK(cf.vars.size() == 3);
  CHECK(cf.finite.width == 4);
  for (const auto& w : corpus::binary_words(2, 4))
    for (long long i = 0; i < static_cast<long long>(w.size()); ++i)
      for (long long j = 0; j < static_cast<long long>(w.size()); ++j)
        for (int mask = 0; mask < (1 << w.size()); ++mask) {
          Valuation nu;
          nu.fo = {{"x", i}, {"y", j}};
          nu.so["X"] = {};
          for (long long p = 0; p < static_cast<long long>(w.size()); ++p)
            if (mask >> p & 1) nu.so["X"].insert(p);
          CHECK(accepts_finite(cf, w, nu) == brute_force_eval(w, f, nu));
        }
}

TEST_CASE("double negation and closed sentences") {
  for (const auto& phi : corpus::sentences(2)) {
    Dfa a = compile_finite(phi).finite;
    Dfa b = compile_finite(neg(neg(phi))).finite;
    CHECK(dfa_equivalent(a, b));
  }
}

TEST_CASE("omega compilation") {
  Formula inf = parse("A x. E y. x < y & P(y)");
  CompiledFormula cf = compile_omega(inf);
  REQUIRE(cf.omega);
  CHECK(nba_membership_up(*cf.omega, UpWord{"", "10", 1}));
  CHECK_FALSE(nba_membership_up(*cf.omega, UpWord{"1", "0", 1}));

  // Buchi complementation is capped; a sentence over the cap must say so
  // with a ResourceError, and most of the corpus has to fit.
  auto words = corpus::up_words(2, 2);
  auto sentences = corpus::sentences(2);
  std::size_t over_cap = 0;
  for (const auto& phi : sentences) {
    std::optional<CompiledFormula> c, taut, contra;
    try {
      c = compile_omega(phi);
      taut = compile_omega(disj(phi, neg(phi)));
      contra = compile_omega(conj(phi, neg(phi)));
    } catch (const ResourceError& e) {
      CHECK(std::string(e.what()).find("nba_complement_cap") != std::string::npos);
      ++over_cap;
      continue;
    }
    const Dfa& lasso = compile_lasso(phi);
    for (const auto& w : words) {
      bool member = nba_membership_up(*c->omega, w);
      CHECK(member == lasso_accepts(lasso, w.u, w.v));
      CHECK(nba_membership_up(*taut->omega, w));
      CHECK_FALSE(nba_membership_up(*contra->omega, w));
    }
  }
  CHECK(over_cap * 4 <= sentences.size());
}

TEST_CASE("lasso automata ignore the choice of presentation") {
  for (const auto& phi : corpus::sentences()) {
    const Dfa& lasso = compile_lasso(phi);
    for (const auto& w : corpus::up_words(2, 3)) {
      bool verdict = lasso_accepts(lasso, w.u, w.v);
      CHECK(verdict == lasso_accepts(lasso, w.u + w.v, w.v));
      CHECK(verdict == lasso_accepts(lasso, w.u, w.v + w.v));
    }
  }
}

TEST_CASE("brute-force evaluator") {
  CHECK(brute_force_eval("0110", parse("E x. P(x)")));
  CHECK_FALSE(brute_force_eval("", parse("E x. x <= x")));
  CHECK(brute_force_eval("01", parse("E2 X. A z. X(z)")));
  int saved = config().brute_force_len;
  config().brute_force_len = 3;
  CHECK_THROWS_AS(brute_force_eval("0000", parse("E x. P(x)")), ResourceError);
  config().brute_force_len = saved;
}
