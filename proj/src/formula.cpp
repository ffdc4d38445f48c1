#include "msow/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "msow/config.hpp"

namespace msow {

bool is_quantifier(Kind k) {
  return k == Kind::ExistsFo || k == Kind::ForallFo || k == Kind::ExistsSo || k == Kind::ForallSo;
}

bool is_atom(Kind k) {
  return k == Kind::True || k == Kind::False || k == Kind::Letter || k == Kind::Le ||
         k == Kind::Lt || k == Kind::Eq || k == Kind::In;
}

namespace {

Formula make(Kind k, std::string a = {}, std::string b = {}, Formula l = nullptr,
             Formula r = nullptr, int track = 0) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  n->left = std::move(l);
  n->right = std::move(r);
  n->track = track;
  return n;
}

}  // namespace

Formula f_true() { return make(Kind::True); }
Formula f_false() { return make(Kind::False); }
Formula letter(const std::string& x, int track) { return make(Kind::Letter, x, {}, nullptr, nullptr, track); }
Formula le(const std::string& x, const std::string& y) { return make(Kind::Le, x, y); }
Formula lt(const std::string& x, const std::string& y) { return make(Kind::Lt, x, y); }
Formula eq(const std::string& x, const std::string& y) { return make(Kind::Eq, x, y); }
Formula in(const std::string& set, const std::string& x) { return make(Kind::In, set, x); }
Formula neg(Formula f) { return make(Kind::Not, {}, {}, std::move(f)); }
Formula conj(Formula f, Formula g) { return make(Kind::And, {}, {}, std::move(f), std::move(g)); }
Formula disj(Formula f, Formula g) { return make(Kind::Or, {}, {}, std::move(f), std::move(g)); }
Formula implies(Formula f, Formula g) { return make(Kind::Implies, {}, {}, std::move(f), std::move(g)); }
Formula iff(Formula f, Formula g) { return conj(implies(f, g), implies(g, f)); }
Formula exists_fo(const std::string& x, Formula body) { return make(Kind::ExistsFo, x, {}, std::move(body)); }
Formula forall_fo(const std::string& x, Formula body) { return make(Kind::ForallFo, x, {}, std::move(body)); }
Formula exists_so(const std::string& x, Formula body) { return make(Kind::ExistsSo, x, {}, std::move(body)); }
Formula forall_so(const std::string& x, Formula body) { return make(Kind::ForallSo, x, {}, std::move(body)); }

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Dot, Bang, Amp, Bar, Arrow, Le, Lt, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t col;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, s.substr(i, j - i), col});
      i = j;
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", col}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", col}); ++i; continue;
      case ',': out.push_back({Tok::Comma, ",", col}); ++i; continue;
      case '.': out.push_back({Tok::Dot, ".", col}); ++i; continue;
      case '!': out.push_back({Tok::Bang, "!", col}); ++i; continue;
      case '&': out.push_back({Tok::Amp, "&", col}); ++i; continue;
      case '|': out.push_back({Tok::Bar, "|", col}); ++i; continue;
      case '=': out.push_back({Tok::Eq, "=", col}); ++i; continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", col});
          i += 2;
          continue;
        }
        break;
      case '<':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back({Tok::Le, "<=", col});
          i += 2;
        } else {
          out.push_back({Tok::Lt, "<", col});
          ++i;
        }
        continue;
      default: break;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", col);
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "true" || s == "false" || s == "E" || s == "A" || s == "E2" || s == "A2" ||
         s == "P" || s == "P1" || s == "succ" || s == "divides";
}

bool lower_ident(const std::string& s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s[0])) && !is_keyword(s);
}
bool upper_ident(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])) && !is_keyword(s);
}

class Parser {
public:
  Parser(const std::string& text, const std::set<std::string>& free) : toks_(lex(text)) {
    for (auto& v : free) scope_.push_back(v);
  }

  Formula run() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().col); }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  std::string bound_check(const Token& t) {
    if (std::find(scope_.begin(), scope_.end(), t.text) == scope_.end())
      throw SyntaxError("unbound variable " + t.text, t.col);
    return t.text;
  }

  std::string fvar() {
    if (peek().kind != Tok::Ident || !lower_ident(peek().text)) fail("expected first-order variable");
    return bound_check(next());
  }
  std::string svar_use() {
    if (peek().kind != Tok::Ident || !upper_ident(peek().text)) fail("expected set variable");
    return bound_check(next());
  }

  Formula implication() {
    Formula l = disjunction();
    if (peek().kind == Tok::Arrow) {
      next();
      return implies(l, implication());
    }
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    while (peek().kind == Tok::Bar) {
      next();
      l = disj(l, conjunction());
    }
    return l;
  }

  Formula conjunction() {
    Formula l = unary();
    while (peek().kind == Tok::Amp) {
      next();
      l = conj(l, unary());
    }
    return l;
  }

  Formula unary() {
    if (peek().kind == Tok::Bang) {
      next();
      return neg(unary());
    }
    if (peek().kind == Tok::Ident) {
      const std::string& w = peek().text;
      if (w == "E" || w == "A" || w == "E2" || w == "A2") return quantifier();
    }
    return primary();
  }

  Formula quantifier() {
    std::string q = next().text;
    bool second = q.size() == 2;
    if (peek().kind != Tok::Ident) fail("expected variable");
    const std::string& v = peek().text;
    if (second ? !upper_ident(v) : !lower_ident(v))
      fail(second ? "expected set variable" : "expected first-order variable");
    std::string name = next().text;
    expect(Tok::Dot, "'.'");
    scope_.push_back(name);
    Formula body = implication();
    scope_.pop_back();
    if (q == "E") return exists_fo(name, body);
    if (q == "A") return forall_fo(name, body);
    if (q == "E2") return exists_so(name, body);
    return forall_so(name, body);
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      Formula f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) fail("expected formula");
    const std::string w = t.text;
    if (w == "true") { next(); return f_true(); }
    if (w == "false") { next(); return f_false(); }
    if (w == "P" || w == "P1") {
      next();
      expect(Tok::LParen, "'('");
      std::string x = fvar();
      expect(Tok::RParen, "')'");
      return letter(x, w == "P" ? 0 : 1);
    }
    if (w == "succ") {
      next();
      expect(Tok::LParen, "'('");
      std::string x = fvar();
      expect(Tok::Comma, "','");
      std::string y = fvar();
      expect(Tok::RParen, "')'");
      return macro_succ(x, y);
    }
    if (w == "divides") {
      next();
      expect(Tok::LParen, "'('");
      if (peek().kind != Tok::Number) fail("expected number");
      Token num = next();
      long long n = num.text.size() > 6 ? 1000000 : std::stoll(num.text);
      if (n < 1) throw SyntaxError("divides needs n >= 1", num.col);
      expect(Tok::Comma, "','");
      std::string x = fvar();
      expect(Tok::Comma, "','");
      std::string y = fvar();
      expect(Tok::RParen, "')'");
      return macro_divides(static_cast<int>(n), x, y);
    }
    if (upper_ident(w)) {
      std::string set = svar_use();
      expect(Tok::LParen, "'('");
      std::string x = fvar();
      expect(Tok::RParen, "')'");
      return in(set, x);
    }
    if (lower_ident(w)) {
      std::string x = fvar();
      Tok op = peek().kind;
      if (op != Tok::Le && op != Tok::Lt && op != Tok::Eq) fail("expected '<=', '<' or '='");
      next();
      std::string y = fvar();
      if (op == Tok::Le) return le(x, y);
      if (op == Tok::Lt) return lt(x, y);
      return eq(x, y);
    }
    fail("unexpected '" + w + "'");
  }
};

}  // namespace

Formula parse(const std::string& text, const std::set<std::string>& free_vars) {
  return Parser(text, free_vars).run();
}

// ---------------------------------------------------------------- printing

namespace {

int prec(Kind k) {
  switch (k) {
    case Kind::Implies: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Not: return 4;
    case Kind::ExistsFo:
    case Kind::ForallFo:
    case Kind::ExistsSo:
    case Kind::ForallSo: return 0;
    default: return 5;
  }
}

void print(const Formula& f, int ctx, std::string& out) {
  bool paren = prec(f->kind) < ctx || (is_quantifier(f->kind) && ctx > 0);
  if (paren) out += '(';
  switch (f->kind) {
    case Kind::True: out += "true"; break;
    case Kind::False: out += "false"; break;
    case Kind::Letter: out += (f->track == 0 ? "P(" : "P1(") + f->a + ")"; break;
    case Kind::Le: out += f->a + " <= " + f->b; break;
    case Kind::Lt: out += f->a + " < " + f->b; break;
    case Kind::Eq: out += f->a + " = " + f->b; break;
    case Kind::In: out += f->a + "(" + f->b + ")"; break;
    case Kind::Not:
      out += '!';
      print(f->left, 4, out);
      break;
    case Kind::And:
      print(f->left, 3, out);
      out += " & ";
      print(f->right, 4, out);
      break;
    case Kind::Or:
      print(f->left, 2, out);
      out += " | ";
      print(f->right, 3, out);
      break;
    case Kind::Implies:
      print(f->left, 2, out);
      out += " -> ";
      print(f->right, 1, out);
      break;
    case Kind::ExistsFo: out += "E " + f->a + ". "; print(f->left, 0, out); break;
    case Kind::ForallFo: out += "A " + f->a + ". "; print(f->left, 0, out); break;
    case Kind::ExistsSo: out += "E2 " + f->a + ". "; print(f->left, 0, out); break;
    case Kind::ForallSo: out += "A2 " + f->a + ". "; print(f->left, 0, out); break;
  }
  if (paren) out += ')';
}

void key(const Formula& f, std::vector<std::pair<std::string, std::string>>& env, std::string& out) {
  auto name = [&](const std::string& v) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == v) return it->second;
    return v;
  };
  switch (f->kind) {
    case Kind::True: out += 'T'; return;
    case Kind::False: out += 'F'; return;
    case Kind::Letter: out += "P" + std::to_string(f->track) + "(" + name(f->a) + ")"; return;
    case Kind::Le: out += "(" + name(f->a) + "<=" + name(f->b) + ")"; return;
    case Kind::Lt: out += "(" + name(f->a) + "<" + name(f->b) + ")"; return;
    case Kind::Eq: out += "(" + name(f->a) + "=" + name(f->b) + ")"; return;
    case Kind::In: out += name(f->a) + "[" + name(f->b) + "]"; return;
    case Kind::Not: out += '!'; key(f->left, env, out); return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      out += '(';
      key(f->left, env, out);
      out += f->kind == Kind::And ? "&" : f->kind == Kind::Or ? "|" : ">";
      key(f->right, env, out);
      out += ')';
      return;
    default: {
      std::string fresh = "#" + std::to_string(env.size());
      const char* q = f->kind == Kind::ExistsFo ? "E" : f->kind == Kind::ForallFo ? "A"
                      : f->kind == Kind::ExistsSo ? "E2" : "A2";
      out += std::string(q) + fresh + ".";
      env.emplace_back(f->a, fresh);
      key(f->left, env, out);
      env.pop_back();
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

std::string canonical_key(const Formula& f) {
  std::vector<std::pair<std::string, std::string>> env;
  std::string out;
  key(f, env, out);
  return out;
}

bool alpha_equal(const Formula& f, const Formula& g) { return canonical_key(f) == canonical_key(g); }

// ---------------------------------------------------------------- queries

int quantifier_rank(const Formula& f) {
  switch (f->kind) {
    case Kind::Not: return quantifier_rank(f->left);
    case Kind::And:
    case Kind::Or:
    case Kind::Implies: return std::max(quantifier_rank(f->left), quantifier_rank(f->right));
    case Kind::ExistsFo:
    case Kind::ForallFo:
    case Kind::ExistsSo:
    case Kind::ForallSo: return 1 + quantifier_rank(f->left);
    default: return 0;
  }
}

namespace {

void collect_free(const Formula& f, bool want_so, std::multiset<std::string>& bound,
                  std::set<std::string>& out) {
  auto use = [&](const std::string& v) {
    if (!bound.count(v)) out.insert(v);
  };
  switch (f->kind) {
    case Kind::Letter: if (!want_so) use(f->a); return;
    case Kind::Le:
    case Kind::Lt:
    case Kind::Eq:
      if (!want_so) { use(f->a); use(f->b); }
      return;
    case Kind::In:
      if (want_so) use(f->a); else use(f->b);
      return;
    case Kind::Not: collect_free(f->left, want_so, bound, out); return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      collect_free(f->left, want_so, bound, out);
      collect_free(f->right, want_so, bound, out);
      return;
    case Kind::ExistsFo:
    case Kind::ForallFo:
    case Kind::ExistsSo:
    case Kind::ForallSo: {
      bool so = f->kind == Kind::ExistsSo || f->kind == Kind::ForallSo;
      if (so == want_so) {
        auto it = bound.insert(f->a);
        collect_free(f->left, want_so, bound, out);
        bound.erase(it);
      } else {
        collect_free(f->left, want_so, bound, out);
      }
      return;
    }
    default: return;
  }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (!f->a.empty()) out.insert(f->a);
  if (!f->b.empty()) out.insert(f->b);
  if (f->left) collect_names(f->left, out);
  if (f->right) collect_names(f->right, out);
}

}  // namespace

std::set<std::string> free_fo(const Formula& f) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  collect_free(f, false, bound, out);
  return out;
}

std::set<std::string> free_so(const Formula& f) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  collect_free(f, true, bound, out);
  return out;
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_fo(f).empty() && free_so(f).empty(); }

int max_letter_track(const Formula& f) {
  int m = f->kind == Kind::Letter ? f->track : 0;
  if (f->left) m = std::max(m, max_letter_track(f->left));
  if (f->right) m = std::max(m, max_letter_track(f->right));
  return m;
}

// ---------------------------------------------------------------- macros

namespace {

// A name outside `avoid`, drawn from base0, base1, ...
std::string fresh(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 0;; ++i) {
    std::string s = base + std::to_string(i);
    if (!avoid.count(s)) return s;
  }
}

// body(c) where c is n positions left of x (n successor steps).
Formula chain_left(const std::string& x, int n, const std::function<Formula(const std::string&)>& body) {
  if (n == 0) return body(x);
  std::string c = fresh("t", {x});
  return exists_fo(c, conj(macro_succ(c, x), chain_left(c, n - 1, body)));
}

Formula chain_right(const std::string& x, int n, const std::function<Formula(const std::string&)>& body) {
  if (n == 0) return body(x);
  std::string c = fresh("t", {x});
  return exists_fo(c, conj(macro_succ(x, c), chain_right(c, n - 1, body)));
}

}  // namespace

Formula macro_succ(const std::string& x, const std::string& z) {
  std::string y = fresh("s", {x, z});
  return conj(lt(x, z), neg(exists_fo(y, conj(lt(x, y), lt(y, z)))));
}

Formula macro_set_at_minus(const std::string& set, const std::string& x, int n) {
  return chain_left(x, n, [&](const std::string& c) { return in(set, c); });
}

Formula macro_letter_at_plus(const std::string& x, int n, int track) {
  return chain_right(x, n, [&](const std::string& c) { return letter(c, track); });
}

Formula macro_at_least(int n, const std::string& x) {
  return chain_left(x, n, [](const std::string&) { return f_true(); });
}

Formula macro_divides(int n, const std::string& x, const std::string& y) {
  if (n < 1) throw UsageError("divides: n must be positive");
  std::string z = fresh("z", {x, y});
  std::string set = "D";
  Formula step = disj(eq(z, x), conj(lt(x, z), macro_set_at_minus(set, z, n)));
  return exists_so(set, conj(forall_fo(z, iff(in(set, z), step)), in(set, y)));
}

Formula macro_pow2_divides(int m, const std::string& x, const std::string& y) {
  if (m < 0) throw UsageError("pow2_divides: negative exponent");
  if (m == 0) return le(x, y);
  std::set<std::string> avoid{x, y};
  std::string c = fresh("c", avoid), d = fresh("d", avoid);
  // Ripple counter from x to y: bit 0 flips every step, bit i flips when bit
  // i-1 falls, and all bits are clear at both ends. Each bit only looks at
  // the one below it, which keeps every subformula narrow.
  auto bit = [](int i) { return "B" + std::to_string(i); };
  Formula range = conj(conj(le(x, c), lt(c, y)), macro_succ(c, d));
  Formula inner = f_true();
  for (int i = m - 1; i >= 0; --i) {
    Formula carry = i == 0 ? f_true() : conj(in(bit(i - 1), c), neg(in(bit(i - 1), d)));
    Formula flipped = disj(conj(in(bit(i), c), neg(carry)), conj(neg(in(bit(i), c)), carry));
    Formula step = forall_fo(c, forall_fo(d, implies(range, iff(in(bit(i), d), flipped))));
    Formula ends = conj(neg(in(bit(i), x)), neg(in(bit(i), y)));
    inner = exists_so(bit(i), conj(ends, conj(step, inner)));
  }
  return conj(le(x, y), inner);
}

// ---------------------------------------------------------------- transforms

namespace {

Formula relativize_rec(const Formula& f, const std::string& x, const std::string& y) {
  switch (f->kind) {
    case Kind::Not: return neg(relativize_rec(f->left, x, y));
    case Kind::And: return conj(relativize_rec(f->left, x, y), relativize_rec(f->right, x, y));
    case Kind::Or: return disj(relativize_rec(f->left, x, y), relativize_rec(f->right, x, y));
    case Kind::Implies: return implies(relativize_rec(f->left, x, y), relativize_rec(f->right, x, y));
    case Kind::ExistsFo: {
      Formula range = conj(le(x, f->a), le(f->a, y));
      return exists_fo(f->a, conj(range, relativize_rec(f->left, x, y)));
    }
    case Kind::ForallFo: {
      Formula range = conj(le(x, f->a), le(f->a, y));
      return forall_fo(f->a, implies(range, relativize_rec(f->left, x, y)));
    }
    // Every first-order variable ends up inside [x,y], so set quantifiers need no guard.
    case Kind::ExistsSo: return exists_so(f->a, relativize_rec(f->left, x, y));
    case Kind::ForallSo: return forall_so(f->a, relativize_rec(f->left, x, y));
    default: return f;
  }
}

}  // namespace

Formula relativize(const Formula& phi, const std::string& x, const std::string& y) {
  auto names = all_names(phi);
  if (names.count(x) || names.count(y) || x == y)
    throw UsageError("relativize: interval variables must be fresh and distinct");
  return relativize_rec(phi, x, y);
}

Formula reverse_formula(const Formula& f) {
  switch (f->kind) {
    case Kind::Le: return le(f->b, f->a);
    case Kind::Lt: return lt(f->b, f->a);
    case Kind::Not: return neg(reverse_formula(f->left));
    case Kind::And: return conj(reverse_formula(f->left), reverse_formula(f->right));
    case Kind::Or: return disj(reverse_formula(f->left), reverse_formula(f->right));
    case Kind::Implies: return implies(reverse_formula(f->left), reverse_formula(f->right));
    case Kind::ExistsFo: return exists_fo(f->a, reverse_formula(f->left));
    case Kind::ForallFo: return forall_fo(f->a, reverse_formula(f->left));
    case Kind::ExistsSo: return exists_so(f->a, reverse_formula(f->left));
    case Kind::ForallSo: return forall_so(f->a, reverse_formula(f->left));
    default: return f;
  }
}

namespace {

struct FoldEnv {
  std::vector<std::pair<std::string, bool>> fo;  // name, on the left half
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>> so;
  std::set<std::string> used;

  bool side(const std::string& v) const {
    for (auto it = fo.rbegin(); it != fo.rend(); ++it)
      if (it->first == v) return it->second;
    throw UsageError("fold_to_omega: free variable " + v);
  }
  const std::pair<std::string, std::string>& halves(const std::string& v) const {
    for (auto it = so.rbegin(); it != so.rend(); ++it)
      if (it->first == v) return it->second;
    throw UsageError("fold_to_omega: free variable " + v);
  }
};

Formula fold_rec(const Formula& f, FoldEnv& env) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False: return f;
    case Kind::Letter:
      if (f->track != 0) throw UsageError("fold_to_omega: input must use a single letter track");
      return letter(f->a, env.side(f->a) ? 1 : 0);
    case Kind::Le:
    case Kind::Lt: {
      bool la = env.side(f->a), lb = env.side(f->b);
      if (la != lb) return la ? f_true() : f_false();
      if (!la) return f;
      return f->kind == Kind::Le ? le(f->b, f->a) : lt(f->b, f->a);
    }
    case Kind::Eq:
      if (env.side(f->a) != env.side(f->b)) return f_false();
      return f;
    case Kind::In: {
      auto& h = env.halves(f->a);
      return in(env.side(f->b) ? h.second : h.first, f->b);
    }
    case Kind::Not: return neg(fold_rec(f->left, env));
    case Kind::And: return conj(fold_rec(f->left, env), fold_rec(f->right, env));
    case Kind::Or: return disj(fold_rec(f->left, env), fold_rec(f->right, env));
    case Kind::Implies: return implies(fold_rec(f->left, env), fold_rec(f->right, env));
    case Kind::ExistsFo:
    case Kind::ForallFo: {
      env.fo.emplace_back(f->a, false);
      Formula right = fold_rec(f->left, env);
      env.fo.back().second = true;
      Formula left = fold_rec(f->left, env);
      env.fo.pop_back();
      if (f->kind == Kind::ExistsFo) return disj(exists_fo(f->a, right), exists_fo(f->a, left));
      return conj(forall_fo(f->a, right), forall_fo(f->a, left));
    }
    case Kind::ExistsSo:
    case Kind::ForallSo: {
      auto pick = [&](const std::string& suffix) {
        std::string n = f->a + suffix;
        while (env.used.count(n)) n += "_";
        env.used.insert(n);
        return n;
      };
      std::string r = pick("_r"), l = pick("_l");
      env.so.push_back({f->a, {r, l}});
      Formula body = fold_rec(f->left, env);
      env.so.pop_back();
      if (f->kind == Kind::ExistsSo) return exists_so(r, exists_so(l, body));
      return forall_so(r, forall_so(l, body));
    }
  }
  return f;
}

}  // namespace

Formula fold_to_omega(const Formula& phi) {
  if (!is_sentence(phi)) throw UsageError("fold_to_omega: sentence expected");
  FoldEnv env;
  env.used = all_names(phi);
  return fold_rec(phi, env);
}

}  // namespace msow
