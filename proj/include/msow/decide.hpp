// Model checking on presented words and the indicator machinery.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "msow/automata.hpp"
#include "msow/formula.hpp"
#include "msow/words.hpp"

namespace msow {

bool decide_finite(const FiniteWord& w, const Formula& phi);
bool decide_up(const UpWord& a, const Formula& phi);
/// Folds the word and the sentence into a two-track omega-word question.
bool decide_bi(const BiWord& a, const Formula& phi);
/// Same verdict through the rank-qr(phi) representative x^{omega*} y z^omega.
bool decide_bi_by_representative(const BiWord& a, const Formula& phi);

struct GapDecision {
  bool verdict = false;
  int rank = 0;
  std::string class_source;  // "types" or "automaton"
  long long threshold = 0;   // gap lengths >= threshold are classified modulo period
  long long period = 1;
  GapCertificate certificate;
  UpWord presentation;  // the ultimately periodic stand-in that was checked
};

/// Representative length of the class of gap g(n) for the given threshold/period.
std::uint64_t gap_representative(const GapWord& word, std::uint64_t n, long long threshold, long long period);

/// Uses the word's own certificate when present (validated on a window),
/// otherwise searches n0 <= cert_n0_max, q <= cert_q_max.
GapDecision decide_gap(const GapWord& word, const Formula& phi);

/// k -> representative (u, v) of the rank-k type of the gap word, read off
/// the normal form that decide_gap checks. Gap classes come from rank-k types,
/// so only ranks unary_classify can afford are available.
std::function<std::pair<FiniteWord, FiniteWord>(int)> type_function_gap(const GapWord& word);

/// Indicator values: `top`, or a number. Weak indicators use n in {0, 1};
/// bi-infinite indicators allow negative n.
struct IndicatorValue {
  bool top = false;
  long long n = 0;
  std::optional<FiniteWord> witness;  // a satisfying factor, if any exists

  bool operator==(const IndicatorValue& o) const { return top == o.top && (top || n == o.n); }
  bool operator!=(const IndicatorValue& o) const { return !(*this == o); }
};

std::string to_string(const IndicatorValue& v);
IndicatorValue top_value();
IndicatorValue finite_value(long long n);

IndicatorValue weak_indicator_up(const UpWord& a, const Formula& phi);
IndicatorValue indicator_up(const UpWord& a, const Formula& phi);

using IndicatorOracle = std::function<IndicatorValue(const Formula&)>;

/// Indicator built from the weak indicator of `a`: top stays top, otherwise
/// the least n for which the weak oracle reports 0 on "some factor [x,y]
/// with n <= x satisfies phi".
IndicatorOracle rec_from_weak(const UpWord& a, IndicatorOracle weak);
/// Weak indicator built from an indicator of `a`: 0 if `a` has no factor
/// satisfying phi (decided on `a`), 1 if it has one and rec is finite, else top.
IndicatorOracle weak_from_rec(const UpWord& a, IndicatorOracle rec);

/// "Some factor [x,y] satisfies phi", with x >= n when n > 0.
Formula some_factor_sentence(const Formula& phi, long long n = 0);

struct BiIndicatorValue {
  IndicatorValue left, right;
};

BiIndicatorValue bi_indicator(const BiWord& a, const Formula& phi);
/// Weak indicators of xi(-inf, x] reversed and of xi[y, inf).
std::pair<IndicatorValue, IndicatorValue> weak_bi_indicator(const BiWord& a, const Formula& phi, long long x,
                                                            long long y);

struct TheoryReport {
  std::string presentation;
  bool decidable = false;
  bool full_checker = false;
  bool recurrent = false;
  std::string summary;
};

TheoryReport decide_theory(const BiWord& a);
/// Factor-language presentation of a recurrent word; throws PropertyError
/// naming the failed condition.
TheoryReport decide_theory(const Dfa& factor_language);

}  // namespace msow
