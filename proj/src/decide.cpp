#include "msow/decide.hpp"

#include <map>

#include "msow/biinf.hpp"
#include "msow/compiler.hpp"
#include "msow/config.hpp"
#include "msow/types.hpp"

namespace msow {

namespace {

void need_sentence(const Formula& phi) {
  if (!is_sentence(phi)) throw UsageError("a sentence is required: " + to_string(phi));
}

FiniteWord word_of(const std::vector<int>& symbols) {
  FiniteWord w;
  for (int s : symbols) w += letter_char(s);
  return w;
}

// Nonempty words satisfying phi that are factors of `factors`.
Dfa satisfying_factors(const Formula& phi, const Dfa& factors) {
  Dfa d = compile_finite(phi).finite;
  if (d.width != factors.width) throw UsageError("indicator sentences must speak about a single letter track");
  return dfa_product(dfa_product(d, factors, BoolOp::And), dfa_nonempty(d.width), BoolOp::And);
}

std::optional<FiniteWord> some_word(const Dfa& d) {
  auto w = dfa_shortest_word(d);
  if (!w) return std::nullopt;
  return word_of(*w);
}

struct GapClasses {
  std::string source;
  long long t = 0, p = 1;
};

// Classes of 0^g: rank-k types when they are affordable, otherwise the
// letter-0 transformation of the sentence's lasso automaton. Equal
// transformations are interchangeable inside any lasso, so replacing every
// gap block by an equivalent one preserves the verdict.
GapClasses gap_classes(const Formula& phi, int k) {
  if (k <= 3) {
    try {
      UnaryClassification c = unary_classify(k);
      return {"types", c.t, c.p};
    } catch (const ResourceError&) {
    }
  }
  const Dfa& d = compile_lasso(phi, 1);
  std::vector<int> cur(d.n);
  for (int q = 0; q < d.n; ++q) cur[q] = q;
  std::map<std::vector<int>, long long> seen;
  const long long cap = 1000000;
  for (long long n = 0; n <= cap; ++n) {
    auto it = seen.find(cur);
    if (it != seen.end()) return {"automaton", it->second, n - it->second};
    seen.emplace(cur, n);
    for (int& q : cur) q = d.next(q, 0);
  }
  throw ResourceError("gap_classes", "no repetition among powers of the 0-transition");
}

bool certificate_holds(const GapWord& word, const GapClasses& c, std::uint64_t n0, std::uint64_t q) {
  std::uint64_t end = n0 + q * static_cast<std::uint64_t>(config().cert_window);
  for (std::uint64_t n = n0; n < end; ++n)
    if (gap_representative(word, n, c.t, c.p) != gap_representative(word, n + q, c.t, c.p)) return false;
  return true;
}

FiniteWord gap_block(const GapWord& word, std::uint64_t n, const GapClasses& c) {
  return "1" + FiniteWord(gap_representative(word, n, c.t, c.p), '0');
}

std::string fresh_fo(const std::set<std::string>& used, const std::string& stem) {
  for (int i = 0;; ++i) {
    std::string v = stem + std::to_string(i);
    if (!used.count(v)) return v;
  }
}

}  // namespace

bool decide_finite(const FiniteWord& w, const Formula& phi) {
  need_sentence(phi);
  return accepts_finite(compile_finite(phi), w);
}

bool decide_up(const UpWord& a, const Formula& phi) {
  need_sentence(phi);
  validate(a);
  return lasso_accepts(compile_lasso(phi, a.width), a.u, a.v);
}

bool decide_bi(const BiWord& a, const Formula& phi) {
  need_sentence(phi);
  UpWord folded = fold_word(a);
  return lasso_accepts(compile_lasso(fold_to_omega(phi), 2), folded.u, folded.v);
}

bool decide_bi_by_representative(const BiWord& a, const Formula& phi) {
  need_sentence(phi);
  RepresentativeBi r = representative_bi(a, quantifier_rank(phi));
  return decide_bi(BiWord{r.x, r.y, r.z, 0}, phi);
}

std::uint64_t gap_representative(const GapWord& word, std::uint64_t n, long long threshold, long long period) {
  std::uint64_t g = word.gap(n);
  std::uint64_t t = static_cast<std::uint64_t>(threshold), p = static_cast<std::uint64_t>(period);
  if (g != kSaturated && g < t) return g;
  std::uint64_t residue = word.gap_mod(n, p);
  return t + (residue + p - t % p) % p;
}

namespace {

GapCertificate find_certificate(const GapWord& word, const GapClasses& c) {
  if (word.certificate) {
    if (word.certificate->q == 0 || !certificate_holds(word, c, word.certificate->n0, word.certificate->q))
      throw PropertyError("certificate (n0=" + std::to_string(word.certificate->n0) + ", q=" +
                          std::to_string(word.certificate->q) + ") fails validation for " + word.name);
    return *word.certificate;
  }
  for (int n0 = 0; n0 <= config().cert_n0_max; ++n0)
    for (int q = 1; q <= config().cert_q_max; ++q)
      if (certificate_holds(word, c, n0, q))
        return GapCertificate{static_cast<std::uint64_t>(n0), static_cast<std::uint64_t>(q)};
  throw ResourceError("cert_search", "no certificate with n0 <= " + std::to_string(config().cert_n0_max) +
                                         ", q <= " + std::to_string(config().cert_q_max) + " for " + word.name);
}

UpWord normal_form(const GapWord& word, const GapClasses& c, const GapCertificate& cert) {
  UpWord out;
  for (std::uint64_t n = 0; n < cert.n0; ++n) out.u += gap_block(word, n, c);
  for (std::uint64_t i = 0; i < cert.q; ++i) out.v += gap_block(word, cert.n0 + i, c);
  return out;
}

}  // namespace

GapDecision decide_gap(const GapWord& word, const Formula& phi) {
  need_sentence(phi);
  GapDecision out;
  out.rank = quantifier_rank(phi);
  GapClasses c = gap_classes(phi, out.rank);
  out.class_source = c.source;
  out.threshold = c.t;
  out.period = c.p;
  out.certificate = find_certificate(word, c);
  out.presentation = normal_form(word, c, out.certificate);
  out.verdict = decide_up(out.presentation, phi);
  return out;
}

std::function<std::pair<FiniteWord, FiniteWord>(int)> type_function_gap(const GapWord& word) {
  return [word](int k) {
    UnaryClassification u = unary_classify(k);
    GapClasses c{"types", u.t, u.p};
    UpWord nf = normal_form(word, c, find_certificate(word, c));
    RepresentativeUp r = representative_up(nf, k);
    return std::make_pair(r.x, r.y);
  };
}

std::string to_string(const IndicatorValue& v) { return v.top ? "T" : std::to_string(v.n); }

IndicatorValue top_value() {
  IndicatorValue v;
  v.top = true;
  return v;
}

IndicatorValue finite_value(long long n) {
  IndicatorValue v;
  v.n = n;
  return v;
}

IndicatorValue weak_indicator_up(const UpWord& a, const Formula& phi) {
  need_sentence(phi);
  validate(a);
  auto anywhere = some_word(satisfying_factors(phi, factor_automaton(a)));
  if (!anywhere) return finite_value(0);
  auto recurring = some_word(satisfying_factors(phi, factor_automaton(UpWord{"", a.v, a.width})));
  IndicatorValue v = recurring ? top_value() : finite_value(1);
  v.witness = recurring ? recurring : anywhere;
  return v;
}

IndicatorValue indicator_up(const UpWord& a, const Formula& phi) {
  IndicatorValue weak = weak_indicator_up(a, phi);
  if (weak.top || weak.n == 0) return weak;
  std::size_t end = a.u.size() + a.v.size();
  for (std::size_t n = 1; n <= end; ++n) {
    if (!some_word(satisfying_factors(phi, factor_automaton(suffix(a, n))))) {
      IndicatorValue v = finite_value(static_cast<long long>(n));
      v.witness = weak.witness;
      return v;
    }
  }
  throw PropertyError("no factor-free tail although the loop has no satisfying factor");
}

Formula some_factor_sentence(const Formula& phi, long long n) {
  need_sentence(phi);
  std::set<std::string> used = all_names(phi);
  std::string x = fresh_fo(used, "l"), y = fresh_fo(used, "r");
  Formula body = conj(le(x, y), relativize(phi, x, y));
  if (n > 0) body = conj(macro_at_least(static_cast<int>(n), x), body);
  return exists_fo(x, exists_fo(y, body));
}

IndicatorOracle rec_from_weak(const UpWord& a, IndicatorOracle weak) {
  validate(a);
  return [weak = std::move(weak)](const Formula& phi) {
    IndicatorValue w = weak(phi);
    if (w.top) return w;
    for (long long n = 0; n <= config().indicator_search_cap; ++n) {
      IndicatorValue probe = weak(some_factor_sentence(phi, n));
      if (!probe.top && probe.n == 0) {
        IndicatorValue v = finite_value(n);
        v.witness = w.witness;
        return v;
      }
    }
    throw ResourceError("indicator_search_cap", "no factor-free tail found for " + to_string(phi));
  };
}

IndicatorOracle weak_from_rec(const UpWord& a, IndicatorOracle rec) {
  validate(a);
  return [a, rec = std::move(rec)](const Formula& phi) {
    if (!decide_up(a, some_factor_sentence(phi))) return finite_value(0);
    IndicatorValue r = rec(phi);
    return r.top ? top_value() : finite_value(1);
  };
}

BiIndicatorValue bi_indicator(const BiWord& a, const Formula& phi) {
  need_sentence(phi);
  validate(a);
  BiIndicatorValue out;
  if (is_recurrent(a)) {
    auto w = some_word(satisfying_factors(phi, factor_automaton(a)));
    IndicatorValue v = w ? top_value() : finite_value(0);
    v.witness = w;
    out.left = out.right = v;
    return out;
  }
  out.right = indicator_up(right_half(a, 0), phi);
  out.left = indicator_up(left_half_reversed(a, -1), reverse_formula(phi));
  if (!out.left.top) {
    out.left.n = -1 - out.left.n;
    if (out.left.witness) out.left.witness = reverse(*out.left.witness);
  }
  return out;
}

std::pair<IndicatorValue, IndicatorValue> weak_bi_indicator(const BiWord& a, const Formula& phi, long long x,
                                                            long long y) {
  validate(a);
  return {weak_indicator_up(left_half_reversed(a, x), phi), weak_indicator_up(right_half(a, y), phi)};
}

TheoryReport decide_theory(const BiWord& a) {
  validate(a);
  TheoryReport r;
  r.presentation = to_string(a);
  r.decidable = true;
  r.full_checker = true;
  r.recurrent = is_recurrent(a);
  r.summary = "decidable; checker = decide_bi (ultimately periodic in both directions, " +
              std::string(r.recurrent ? "recurrent" : "not recurrent") + ")";
  return r;
}

TheoryReport decide_theory(const Dfa& factor_language) {
  LanguageConditions c = check_conditions(language_of(factor_language, "L"));
  if (!c.all()) throw PropertyError("not the factor language of a recurrent word: " + c.first_failure());
  TheoryReport r;
  r.presentation = "factor language (" + std::to_string(factor_language.n) + " states)";
  r.decidable = true;
  r.full_checker = false;
  r.recurrent = true;
  r.summary =
      "decidable relative to the theory of the factor language, which is decidable for a regular language; "
      "indicator functions available (constant top/0 form); full sentence checking unsupported";
  return r;
}

}  // namespace msow
