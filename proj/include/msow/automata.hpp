// Automata over bit-track alphabets.
//
// A letter of width w is a bit vector packed into an int: bit 0 is track 0
// (the word letter), bit i is track i. Lasso automata carry one extra symbol,
// the separator, with index 2^w.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msow/words.hpp"

namespace msow {

struct Dfa {
  int width = 1;
  bool lasso = false;
  int n = 0;
  int init = 0;
  std::vector<int> delta;  // n * symbols()
  std::vector<char> acc;

  int symbols() const { return (1 << width) + (lasso ? 1 : 0); }
  int separator() const { return 1 << width; }
  int next(int q, int a) const { return delta[static_cast<std::size_t>(q) * symbols() + a]; }
  int run(int q, const std::vector<int>& word) const;
  bool accepts(const std::vector<int>& word) const;
};

struct NondetAutomaton {
  int width = 1;
  bool lasso = false;
  int n = 0;
  std::vector<std::vector<int>> delta;  // n * symbols() successor lists
  std::vector<int> init;
  std::vector<char> acc;

  int symbols() const { return (1 << width) + (lasso ? 1 : 0); }
  const std::vector<int>& succ(int q, int a) const { return delta[static_cast<std::size_t>(q) * symbols() + a]; }
  std::vector<int>& succ(int q, int a) { return delta[static_cast<std::size_t>(q) * symbols() + a]; }
  int add_state(bool accepting);
  void add_edge(int p, int a, int q);
};

struct Nfa : NondetAutomaton {};
/// Nondeterministic Buchi automaton.
struct Nba : NondetAutomaton {};

/// Words over the binary alphabet as symbol vectors.
std::vector<int> symbols_of(const FiniteWord& w);

// ---- DFA / NFA closure operations

enum class BoolOp { And, Or, Diff, Xor };

Dfa dfa_product(const Dfa& a, const Dfa& b, BoolOp op);
Dfa dfa_complement(const Dfa& a);
Dfa dfa_minimize(const Dfa& a);
Dfa nfa_determinize(const Nfa& a);
/// Existential projection of `track`; the result has one track fewer.
Nfa nfa_project(const Dfa& a, int track);
Nfa dfa_to_nfa(const Dfa& a);
Nfa nfa_reverse(const Nfa& a);
/// Rename tracks: track i of `a` becomes track map[i] of a width-`width` automaton.
Dfa dfa_remap(const Dfa& a, int width, const std::vector<int>& map);
Dfa dfa_empty(int width);
Dfa dfa_universal(int width);
/// All words over the alphabet in which track `t` has exactly one 1.
Dfa dfa_singleton(int width, int track);
bool dfa_is_empty(const Dfa& a);
/// Shortest accepted word, least symbol-wise among equally short ones.
std::optional<std::vector<int>> dfa_shortest_word(const Dfa& a);
/// All words of length >= 1.
Dfa dfa_nonempty(int width);
bool dfa_equivalent(const Dfa& a, const Dfa& b);
bool dfa_subset(const Dfa& a, const Dfa& b);
Dfa dfa_trim_unreachable(const Dfa& a);

// ---- transition monoid of a DFA

struct TransitionMonoid {
  std::vector<std::vector<int>> elements;  // element 0 is the identity
  std::vector<std::vector<int>> words;     // a generating word per element
  std::vector<std::vector<int>> right;     // right[m][a]: element of words[m]+a
};

TransitionMonoid transition_monoid(const Dfa& a, std::size_t cap);

// ---- factor languages (binary alphabet)

Dfa factor_automaton(const UpWord& w);
Dfa factor_automaton(const BiWord& w);
/// Factor closure of L.
Dfa factor_automaton(const Dfa& lang);
bool factorial_check(const Dfa& lang);
bool extension_check(const Dfa& lang);
bool has_nonempty_word(const Dfa& lang);

// ---- Buchi automata

/// Per-word summary: entry [p*n+q] is 0 (no path), 1 (path), 2 (path visiting
/// an accepting state, endpoints included).
struct TransitionProfile {
  int n = 0;
  std::vector<std::uint8_t> m;
  bool operator==(const TransitionProfile& o) const { return m == o.m; }
  bool operator<(const TransitionProfile& o) const { return m < o.m; }
};

TransitionProfile profile_identity(int n);
TransitionProfile profile_letter(const Nba& a, int letter);
TransitionProfile profile_of(const Nba& a, const std::vector<int>& word);
TransitionProfile profile_compose(const TransitionProfile& x, const TransitionProfile& y);
/// The idempotent power of p.
TransitionProfile profile_idempotent(const TransitionProfile& p);

bool nba_membership_up(const Nba& a, const std::vector<int>& u, const std::vector<int>& v);
bool nba_membership_up(const Nba& a, const UpWord& w);
Nba nba_complement(const Nba& a);
Nba nba_intersect(const Nba& a, const Nba& b);
Nba nba_union(const Nba& a, const Nba& b);
Nba nba_project(const Nba& a, int track);
Nba nba_remap(const Nba& a, int width, const std::vector<int>& map);
/// Drop states that cannot reach an accepting cycle or are unreachable, then
/// merge bisimilar states.
Nba nba_reduce(const Nba& a);
Nba nba_from_dfa(const Dfa& a);  // Buchi acceptance on the same graph
Nba nba_universal(int width);
Nba nba_empty(int width);

// ---- serialization

std::string to_text(const Dfa& a);
std::string to_text(const NondetAutomaton& a, const std::string& kind);
std::string to_json(const Dfa& a);
std::string to_json(const NondetAutomaton& a, const std::string& kind);
/// Reads the text format of a dfa (nfa input is determinized).
Dfa dfa_from_text(const std::string& text);
Nba nba_from_text(const std::string& text);

}  // namespace msow
