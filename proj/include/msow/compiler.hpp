// Formulas to automata.
//
// Track layout: tracks 0..letter_tracks-1 carry the word (one track for plain
// binary words, two for folded bi-infinite words), then one track per free
// variable in name order.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msow/automata.hpp"
#include "msow/formula.hpp"
#include "msow/words.hpp"

namespace msow {

struct CompileStats {
  std::size_t peak_dfa_states = 0;
  std::size_t peak_nba_states = 0;
};

struct CompiledFormula {
  Formula source;
  int letter_tracks = 1;
  std::vector<std::string> vars;  // vars[i] sits on track letter_tracks + i
  Dfa finite;
  std::optional<Nba> omega;
  CompileStats stats;

  int track_of(const std::string& var) const;
};

/// Finite-word semantics. First-order variables are singleton tracks.
CompiledFormula compile_finite(const Formula& phi, int letter_tracks = 1);
/// Omega-word semantics as a Buchi automaton; negation goes through
/// nba_complement, so deep formulas hit its cap.
CompiledFormula compile_omega(const Formula& phi, int letter_tracks = 1);

/// Lasso automaton of a sentence: accepts u$v (v nonempty) exactly when
/// u v^omega satisfies it. Quantifiers are closed under re-cutting the lasso
/// (u v^a $ v^b), which keeps every intermediate language invariant under
/// the choice of presentation.
const Dfa& compile_lasso(const Formula& sentence, int letter_tracks = 1);
bool lasso_accepts(const Dfa& lasso, const FiniteWord& u, const FiniteWord& v);

/// Encode (w, nu) on the tracks of `cf`.
std::vector<int> encode(const CompiledFormula& cf, const FiniteWord& w, const Valuation& nu);
bool accepts_finite(const CompiledFormula& cf, const FiniteWord& w, const Valuation& nu = {});

/// Direct recursive semantics on a finite word; set quantifiers range over
/// all subsets. Guarded by the configured length and rank limits.
bool brute_force_eval(const FiniteWord& w, const Formula& phi, const Valuation& nu = {});

void clear_compile_cache();

}  // namespace msow
