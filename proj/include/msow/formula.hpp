// MSO syntax over labeled linear orders: AST, parser, printer and the
// syntactic transformations used by the decision procedures.
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace msow {

enum class Kind {
  True,
  False,
  Letter,  // P(x) on letter track `track` (0 for the word, 1 for the folded left half)
  Le,
  Lt,
  Eq,
  In,  // X(x)
  Not,
  And,
  Or,
  Implies,
  ExistsFo,
  ForallFo,
  ExistsSo,
  ForallSo,
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  int track = 0;
  std::string a;  // first variable (the bound variable for quantifiers, the set for In)
  std::string b;  // second variable
  Formula left;
  Formula right;
};

bool is_quantifier(Kind k);
bool is_atom(Kind k);

// Builders. Variable case is the caller's business: first-order names are
// lowercase, set names uppercase.
Formula f_true();
Formula f_false();
Formula letter(const std::string& x, int track = 0);
Formula le(const std::string& x, const std::string& y);
Formula lt(const std::string& x, const std::string& y);
Formula eq(const std::string& x, const std::string& y);
Formula in(const std::string& set, const std::string& x);
Formula neg(Formula f);
Formula conj(Formula f, Formula g);
Formula disj(Formula f, Formula g);
Formula implies(Formula f, Formula g);
Formula iff(Formula f, Formula g);
Formula exists_fo(const std::string& x, Formula body);
Formula forall_fo(const std::string& x, Formula body);
Formula exists_so(const std::string& x, Formula body);
Formula forall_so(const std::string& x, Formula body);

/// Parse the textual grammar. `free_vars` lists names allowed to occur free;
/// any other unbound occurrence is an error. Throws SyntaxError.
Formula parse(const std::string& text, const std::set<std::string>& free_vars = {});
std::string to_string(const Formula& f);
/// Alpha-invariant key: bound variables renamed by binding depth.
std::string canonical_key(const Formula& f);
bool alpha_equal(const Formula& f, const Formula& g);

int quantifier_rank(const Formula& f);
std::set<std::string> free_fo(const Formula& f);
std::set<std::string> free_so(const Formula& f);
std::set<std::string> all_names(const Formula& f);
bool is_sentence(const Formula& f);
/// Highest letter track referenced.
int max_letter_track(const Formula& f);

// Macros; they expand to core syntax.
Formula macro_succ(const std::string& x, const std::string& z);
/// set(x - n): the position n steps left of x exists and lies in `set`.
Formula macro_set_at_minus(const std::string& set, const std::string& x, int n);
/// letter(x + n): the position n steps right of x exists and carries a 1.
Formula macro_letter_at_plus(const std::string& x, int n, int track = 0);
/// x <= y and n divides y - x. n >= 1.
Formula macro_divides(int n, const std::string& x, const std::string& y);
/// x <= y and 2^m divides y - x, via an m-bit ripple counter.
Formula macro_pow2_divides(int m, const std::string& x, const std::string& y);
/// At least n positions precede x.
Formula macro_at_least(int n, const std::string& x);

/// phi restricted to the interval [x,y]; x and y must not occur in phi.
Formula relativize(const Formula& phi, const std::string& x, const std::string& y);
/// Mirror image: order atoms have their sides swapped.
Formula reverse_formula(const Formula& phi);
/// Translate a sentence about a bi-infinite word into one about its fold,
/// a two-track omega-word (track 0: positions >= 0, track 1: positions < 0).
Formula fold_to_omega(const Formula& phi);

/// Truth assignment for free variables.
struct Valuation {
  std::map<std::string, long long> fo;
  std::map<std::string, std::set<long long>> so;
};

}  // namespace msow
