#include "selftest.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>

#include "corpus.hpp"
#include "json.hpp"
#include "msow/automata.hpp"
#include "msow/biinf.hpp"
#include "msow/compiler.hpp"
#include "msow/config.hpp"
#include "msow/decide.hpp"
#include "msow/types.hpp"
#include "oracles.hpp"

namespace msow::cli {

namespace {

struct Count {
  std::size_t cases = 0, failures = 0;
  void operator()(bool ok) {
    ++cases;
    if (!ok) ++failures;
  }
};

void compiler_suite(Count& c) {
  auto words = corpus::binary_words(0, 5);
  for (const auto& phi : corpus::sentences()) {
    CompiledFormula cf = compile_finite(phi);
    for (const auto& w : words) c(accepts_finite(cf, w) == brute_force_eval(w, phi));
  }
}

void types_suite(Count& c) {
  for (int k = 0; k <= 2; ++k)
    for (const auto& w : corpus::binary_words(0, 4)) c(ktype_composed(w, k) == ktype(w, {}, k));
  for (int k = 1; k <= 2; ++k) {
    UnaryClassification u = unary_classify(k);
    for (long long a = 0; a <= 5; ++a)
      for (long long b = 0; b <= 5; ++b) {
        bool expect = a == b || (a >= u.t && b >= u.t && (a - b) % u.p == 0);
        c(equiv_k_bruteforce(std::string(a, '0'), std::string(b, '0'), k) == expect);
      }
  }
}

void complement_suite(Count& c) {
  std::mt19937 rng(config().seed);
  for (int i = 0; i < 30; ++i) {
    Nba a = oracle::random_nba(rng, 4);
    Nba comp = nba_complement(a);
    for (int j = 0; j < 10; ++j) {
      UpWord w = oracle::random_up(rng, 3, 3);
      bool in_a = oracle::nba_accepts_lasso(a, w);
      c(in_a == nba_membership_up(a, w));
      c(in_a != oracle::nba_accepts_lasso(comp, w));
    }
  }
}

void bi_suite(Count& c) {
  auto phis = corpus::sentences(2);
  auto ws = corpus::bi_words(2, 1);
  for (std::size_t i = 0; i < ws.size(); i += 5)
    for (const auto& phi : phis) c(decide_bi(ws[i], phi) == decide_bi_by_representative(ws[i], phi));
  for (const auto& w : corpus::bi_words(3, 2)) {
    auto p = period(w);
    if (p) c(*p == oracle::window_period(w, 8, 30));
  }
}

void gap_suite(Count& c) {
  std::mt19937 rng(config().seed);
  auto phis = corpus::sentences();
  for (int trial = 0; trial < 40; ++trial) {
    std::uint64_t g = rng() % 10;
    const Formula& phi = phis[rng() % phis.size()];
    c(decide_gap(constant_gap_word(g), phi).verdict == decide_up(UpWord{"", "1" + std::string(g, '0'), 1}, phi));
  }
}

void shift_suite(Count& c) {
  std::mt19937 rng(config().seed);
  auto ws = corpus::bi_words(2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const BiWord& a = ws[rng() % ws.size()];
    BiWord b = trial % 2 ? shift(a, static_cast<long long>(rng() % 21) - 10) : ws[rng() % ws.size()];
    bool brute = false;
    for (long long p = -50; p <= 50 && !brute; ++p)
      brute = oracle::window_of(shift(a, p), -100, 100) == oracle::window_of(b, -100, 100);
    c(shift_equivalent(a, b).has_value() == brute);
  }
}

void realize_suite(Count& c) {
  for (const Language& lang : {all_words(), alternating_factors(), golden_mean()}) {
    RealizerStream r(lang);
    for (std::size_t s = 1; s <= 10; ++s) {
      r.step();
      FiniteWord z = r.current().word;
      c(lang.member(z));
      for (std::size_t i = 0; i <= s; ++i) c(z.find(r.enumeration()(i)) != std::string::npos);
    }
  }
}

void embed_suite(Count& c) {
  for (const Language& lang : {all_words(), golden_mean()})
    for (const auto& a : corpus::binary_words(0, 4)) {
      EmbeddingState s = embed_oracle(lang, a);
      c(decode_oracle(lang, s.right, a.size()) == a);
    }
}

void indicator_suite(Count& c) {
  for (const auto& a : corpus::up_words(1, 2)) {
    IndicatorOracle weak = [&](const Formula& f) { return weak_indicator_up(a, f); };
    IndicatorOracle rec = [&](const Formula& f) { return indicator_up(a, f); };
    IndicatorOracle rec2 = rec_from_weak(a, weak), weak2 = weak_from_rec(a, rec);
    for (const auto& text : corpus::indicator_texts()) {
      Formula phi = parse(text);
      c(rec2(phi) == rec(phi));
      c(weak2(phi) == weak(phi));
    }
  }
}

}  // namespace

bool run_selftest(std::ostream& out, bool as_json, const std::string& only) {
  const std::vector<std::pair<std::string, std::function<void(Count&)>>> suites = {
      {"compiler", compiler_suite}, {"types", types_suite},   {"complement", complement_suite},
      {"bi-words", bi_suite},       {"gap", gap_suite},       {"shift", shift_suite},
      {"realize", realize_suite},   {"embed", embed_suite},   {"indicators", indicator_suite},
  };
  nlohmann::json rows = nlohmann::json::array();
  bool all = true, found = false;
  if (!as_json) out << std::left << std::setw(12) << "suite" << std::setw(8) << "cases" << std::setw(10) << "failures"
                    << "result\n";
  for (const auto& [name, suite] : suites) {
    if (!only.empty() && only != name) continue;
    found = true;
    Count c;
    std::string note;
    try {
      suite(c);
    } catch (const std::exception& e) {
      ++c.failures;
      note = e.what();
    }
    bool ok = c.failures == 0;
    all = all && ok;
    rows.push_back({{"suite", name}, {"cases", c.cases}, {"failures", c.failures}, {"pass", ok}});
    if (!as_json)
      out << std::setw(12) << name << std::setw(8) << c.cases << std::setw(10) << c.failures << (ok ? "PASS" : "FAIL")
          << (note.empty() ? "" : "  " + note) << "\n";
  }
  if (!found) throw UsageError("no suite named " + only);
  if (as_json) out << rows.dump(2) << "\n";
  return all;
}

}  // namespace msow::cli
