// Bi-infinite words: recurrence, periods, shift- and MSO-equivalence,
// determining words, and the word-building constructions over factor
// languages (realizer, rich word, oracle embedding).
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "msow/automata.hpp"
#include "msow/formula.hpp"
#include "msow/words.hpp"

namespace msow {

bool is_recurrent(const BiWord& a);
/// Least p > 0 with shift(a, p) = a.
std::optional<long long> period(const BiWord& a);
/// Some p with shift(a, p) = b; the least |p| wins, positive first.
std::optional<long long> shift_equivalent(const BiWord& a, const BiWord& b);
/// Search bound used by shift_equivalent.
long long shift_search_bound(const BiWord& a, const BiWord& b);

/// A bi-infinite word given directly, or a recurrent word given by its
/// factor language.
using Presentation = std::variant<BiWord, Dfa>;

bool mso_equivalent(const Presentation& a, const Presentation& b);

enum class ClassKind { Periodic, NonRecurrent, RecurrentNonPeriodic };

struct EquivalenceClassReport {
  ClassKind kind = ClassKind::NonRecurrent;
  long long period = 0;            // Periodic only
  std::string cardinality;         // "p", "aleph0" or "continuum"
  std::optional<FiniteWord> witness;  // non-recurrence factor, or a determining word
  std::string describe() const;
};

EquivalenceClassReport classify(const Presentation& a);
/// The distinct shifts of a periodic word.
std::vector<BiWord> enumerate_class(const BiWord& a);

enum class Determining { Neither, Left, Right, Both };
std::string to_string(Determining d);

/// `lang` must be factorial (PropertyError otherwise).
Determining determining_check(const Dfa& lang, const FiniteWord& u);
std::optional<FiniteWord> has_determining_word(const Dfa& lang);

// ---- languages and enumerations

/// A language of binary words. Membership is always available; a DFA when
/// the language is regular. `local_ones` > 0 says membership is decided by
/// the factors containing at most that many 1s, so a concatenation of two
/// members only needs checking near the junction.
struct Language {
  std::string name;
  std::function<bool(const FiniteWord&)> member;
  std::optional<Dfa> dfa;
  int local_ones = 0;
};

Language language_of(const Dfa& d, const std::string& name);
Language all_words();
/// Words without factor 11.
Language golden_mean();
/// Factors of the alternating word.
Language alternating_factors();
/// Words in which every factor 1 0^{2i+1} 1 0^{2j} 1 has j = f(i).
Language gap_pair_language(std::function<std::uint64_t(std::uint64_t)> f, const std::string& name);

/// "Some factor lies in 1(00)*01 0^{2j} 1": a block 1 0^{2i+1} 1 0^{2j} 1.
Formula pair_block_sentence(std::uint64_t j);

struct LanguageConditions {
  bool nonempty_word = false;  // (a)
  bool factorial = false;      // (b)
  bool extendable = false;     // (c)
  bool exact = false;          // decided on the automaton rather than up to a length bound
  bool all() const { return nonempty_word && factorial && extendable; }
  std::string first_failure() const;
};

LanguageConditions check_conditions(const Language& lang);

/// Surjection onto a language: words by length, and within one length in
/// the order of (word xor mask), the mask drawn from the seed. Seed 0 gives
/// length-lexicographic order.
class Enumeration {
public:
  explicit Enumeration(Language lang, std::uint64_t seed = 0);
  const FiniteWord& operator()(std::size_t i);
  const Language& language() const { return lang_; }
  std::uint64_t seed() const { return seed_; }
  /// Order bit at position `pos` of words of length `len`.
  bool mask_bit(std::size_t len, std::size_t pos) const;

private:
  Language lang_;
  std::uint64_t seed_;
  std::vector<FiniteWord> words_;
  std::size_t next_len_ = 0;
  // DFA languages: prefixes of the current length whose state can still accept
  std::vector<std::pair<FiniteWord, int>> frontier_;
  std::vector<char> live_;
};

/// Finite window of a bi-infinite word: `word` with position 0 at `origin`.
struct BiPrefix {
  FiniteWord word;
  long long origin = 0;
};

/// Builds w_i = u_i x_i ... u_1 x_1 u_0 y_1 u_1 ... y_i u_i where u_i is the
/// i-th enumerated word and each x_i, y_i is the first extension the
/// enumeration offers. Every w_i is in L and the limit has factor set L.
class RealizerStream {
public:
  explicit RealizerStream(Language lang, std::uint64_t seed = 0);
  void step();
  std::size_t steps() const { return steps_; }
  BiPrefix current() const;
  std::size_t length() const { return left_.size() + right_.size(); }
  Enumeration& enumeration() { return f_; }

private:
  FiniteWord head(std::size_t ones) const;
  FiniteWord tail(std::size_t ones) const;

  Enumeration f_;
  std::size_t steps_ = 0;
  FiniteWord left_;   // reversed: left_[0] is the letter just left of position 0
  FiniteWord right_;  // from position 0 on
  std::vector<int> transform_;  // DFA state map of the current word
};

/// g(i): the i-th binary word in length-lexicographic order.
FiniteWord rich_segment(std::size_t i);
/// g(s) ... g(1) g(0) g(1) ... g(s), position 0 at the start of g(0).
BiPrefix rich_word_prefix(std::size_t s);
/// chi_A(0) g(0) chi_A(1) g(1) ... over `segments` segments (A padded with 0s).
FiniteWord interleave_with_oracle(const OracleBits& a, std::size_t segments);
/// Reads the marker positions sum_{i<n} (1 + |g(i)|).
OracleBits decode_interleaved(const FiniteWord& beta, std::size_t n);

struct EmbeddingTuple {
  FiniteWord u, v, x, y, w;
};

struct EmbeddingState {
  std::vector<EmbeddingTuple> tuples;
  FiniteWord left;   // w_s y_s v_s ... w_0 y_0 v_0
  FiniteWord right;  // u_0 x_0 w_0 ... u_s x_s w_s, starting at position 0
  OracleBits bits;
  FiniteWord word() const { return left + right; }
};

/// Needs a regular, recurrent (conditions a-c) and non-periodic (no
/// determining word) language.
EmbeddingState embed_oracle(const Language& lang, const OracleBits& a, std::uint64_t seed = 0);
/// Recovers the first n bits from a prefix of the right half.
OracleBits decode_oracle(const Language& lang, const FiniteWord& right_half, std::size_t n, std::uint64_t seed = 0);

}  // namespace msow
