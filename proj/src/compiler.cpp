#include "msow/compiler.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>

#include "msow/config.hpp"

namespace msow {

namespace {

using Vars = std::vector<std::string>;

bool is_set_name(const std::string& v) { return !v.empty() && std::isupper(static_cast<unsigned char>(v[0])); }

Vars sorted_free(const Formula& f) {
  std::set<std::string> s = free_fo(f);
  for (const auto& v : free_so(f)) s.insert(v);
  return Vars(s.begin(), s.end());
}

int index_of(const Vars& vars, const std::string& v) {
  auto it = std::find(vars.begin(), vars.end(), v);
  if (it == vars.end()) throw UsageError("variable " + v + " has no track");
  return static_cast<int>(it - vars.begin());
}

Vars merge(const Vars& a, const Vars& b) {
  Vars r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

// Track map that moves an automaton over (L, from) onto (L, to).
std::vector<int> track_map(int L, const Vars& from, const Vars& to) {
  std::vector<int> m(L + from.size());
  for (int i = 0; i < L; ++i) m[i] = i;
  for (std::size_t i = 0; i < from.size(); ++i) m[L + i] = L + index_of(to, from[i]);
  return m;
}

Formula neg_core(Formula g) { return g->kind == Kind::Not ? g->left : neg(std::move(g)); }

// Rewrites implications and universal quantifiers; drops double negations.
Formula core(const Formula& f) {
  switch (f->kind) {
    case Kind::Not: return neg_core(core(f->left));
    case Kind::And: return conj(core(f->left), core(f->right));
    case Kind::Or: return disj(core(f->left), core(f->right));
    case Kind::Implies: return disj(neg_core(core(f->left)), core(f->right));
    case Kind::ExistsFo: return exists_fo(f->a, core(f->left));
    case Kind::ExistsSo: return exists_so(f->a, core(f->left));
    case Kind::ForallFo: return neg(exists_fo(f->a, neg_core(core(f->left))));
    case Kind::ForallSo: return neg(exists_so(f->a, neg_core(core(f->left))));
    default: return f;
  }
}

// ---------------------------------------------------------------- atoms
//
// Atom automata scan left to right and fall into absorbing accept / reject
// sinks, so the same graph serves finite-word and Buchi acceptance as long as
// the first-order tracks are singletons.

constexpr int Start = 0, Seen = 1, Acc = 2, Rej = 3;

Dfa atom_dfa(int width, bool lasso, const std::function<int(int state, int letter)>& step) {
  Dfa d;
  d.width = width;
  d.lasso = lasso;
  d.n = 4;
  d.init = Start;
  int S = d.symbols();
  d.delta.resize(4 * S);
  for (int q = 0; q < 4; ++q)
    for (int s = 0; s < S; ++s) {
      int t;
      if (q == Acc || q == Rej) t = q;
      else if (lasso && s == d.separator()) t = q;
      else t = step(q, s);
      d.delta[q * S + s] = t;
    }
  d.acc = {0, 0, 1, 0};
  return d;
}

Dfa compile_atom(const Formula& f, int L, const Vars& vars, bool lasso) {
  int width = L + static_cast<int>(vars.size());
  auto bit = [](int s, int t) { return (s >> t & 1) != 0; };
  switch (f->kind) {
    case Kind::True: {
      Dfa d = atom_dfa(width, lasso, [](int, int) { return Acc; });
      d.acc[Start] = 1;
      return d;
    }
    case Kind::False: return atom_dfa(width, lasso, [](int, int) { return Rej; });
    case Kind::Letter: {
      int x = L + index_of(vars, f->a), t = f->track;
      if (t >= L) throw UsageError("letter track " + std::to_string(t) + " not available");
      return atom_dfa(width, lasso, [=](int q, int s) {
        if (bit(s, x)) return bit(s, t) ? Acc : Rej;
        return q;
      });
    }
    case Kind::In: {
      int X = L + index_of(vars, f->a), x = L + index_of(vars, f->b);
      return atom_dfa(width, lasso, [=](int q, int s) {
        if (bit(s, x)) return bit(s, X) ? Acc : Rej;
        return q;
      });
    }
    case Kind::Le:
    case Kind::Lt:
    case Kind::Eq: {
      if (f->a == f->b) {
        bool truth = f->kind != Kind::Lt;
        return compile_atom(truth ? f_true() : f_false(), L, vars, lasso);
      }
      int x = L + index_of(vars, f->a), y = L + index_of(vars, f->b);
      Kind k = f->kind;
      return atom_dfa(width, lasso, [=](int q, int s) {
        bool bx = bit(s, x), by = bit(s, y);
        if (q == Start) {
          if (bx && by) return k == Kind::Lt ? Rej : Acc;
          if (bx) return k == Kind::Eq ? Rej : Seen;
          if (by) return Rej;
          return Start;
        }
        return by ? Acc : Seen;  // q == Seen
      });
    }
    default: throw UsageError("not an atom");
  }
}

// ---------------------------------------------------------------- finite

struct Cache {
  std::mutex mu;
  std::unordered_map<std::string, Dfa> finite;
  std::unordered_map<std::string, Dfa> lasso;
  std::unordered_map<std::string, Nba> omega;
};

Cache& cache() {
  static Cache c;
  return c;
}

std::string memo_key(const Formula& f, int L) { return std::to_string(L) + "|" + canonical_key(f); }

void note(CompileStats* st, const Dfa& d) {
  if (st) st->peak_dfa_states = std::max(st->peak_dfa_states, static_cast<std::size_t>(d.n));
}

void note(CompileStats* st, const Nba& d) {
  if (st) st->peak_nba_states = std::max(st->peak_nba_states, static_cast<std::size_t>(d.n));
}

template <class A>
bool cache_get(std::unordered_map<std::string, A>& m, const std::string& k, A& out) {
  std::lock_guard<std::mutex> lock(cache().mu);
  auto it = m.find(k);
  if (it == m.end()) return false;
  out = it->second;
  return true;
}

template <class A>
void cache_put(std::unordered_map<std::string, A>& m, const std::string& k, const A& a) {
  std::lock_guard<std::mutex> lock(cache().mu);
  m[k] = a;
}

// Rethrow with the offending subformula attached (innermost one wins).
[[noreturn]] void blame(const ResourceError& e, const Formula& f) {
  std::string msg = e.what();
  if (msg.find("[subformula ") != std::string::npos) throw e;
  msg = msg.substr(e.stage().size() + 2);
  throw ResourceError(e.stage(), msg + " [subformula " + to_string(f) + "]");
}

// Language over tracks (L, sorted_free(f)).
Dfa finite_rec(const Formula& f, int L, CompileStats* st) {
  std::string k = memo_key(f, L);
  Dfa out;
  if (cache_get(cache().finite, k, out)) return out;
  Vars vars = sorted_free(f);
  int width = L + static_cast<int>(vars.size());
  if (width > config().track_width_cap)
    throw ResourceError("track_width_cap", "subformula needs " + std::to_string(width) + " tracks: " + to_string(f));
  try {
    switch (f->kind) {
      case Kind::Not: out = dfa_complement(finite_rec(f->left, L, st)); break;
      case Kind::And:
      case Kind::Or: {
        Vars lv = sorted_free(f->left), rv = sorted_free(f->right);
        Dfa a = dfa_remap(finite_rec(f->left, L, st), width, track_map(L, lv, vars));
        Dfa b = dfa_remap(finite_rec(f->right, L, st), width, track_map(L, rv, vars));
        out = dfa_minimize(dfa_product(a, b, f->kind == Kind::And ? BoolOp::And : BoolOp::Or));
        break;
      }
      case Kind::ExistsFo:
      case Kind::ExistsSo: {
        Vars bv = sorted_free(f->left);
        Vars inner = merge(vars, {f->a});
        Dfa body = dfa_remap(finite_rec(f->left, L, st), L + static_cast<int>(inner.size()), track_map(L, bv, inner));
        int t = L + index_of(inner, f->a);
        if (f->kind == Kind::ExistsFo)
          body = dfa_product(body, dfa_singleton(body.width, t), BoolOp::And);
        note(st, body);
        out = dfa_minimize(nfa_determinize(nfa_project(body, t)));
        break;
      }
      default: out = dfa_minimize(compile_atom(f, L, vars, false));
    }
  } catch (const ResourceError& e) {
    blame(e, f);
  }
  note(st, out);
  cache_put(cache().finite, k, out);
  return out;
}

// ---------------------------------------------------------------- lasso

// u$v with v nonempty, each first-order track a single 1 inside u.
Dfa valid_lasso(int L, const Vars& vars) {
  int width = L + static_cast<int>(vars.size());
  Dfa base;
  base.width = width;
  base.lasso = true;
  base.n = 4;  // 0: in u, 1: just read $, 2: in nonempty v, 3: dead
  int S = base.symbols();
  base.delta.resize(4 * S);
  for (int s = 0; s < S; ++s) {
    bool sep = s == base.separator();
    base.delta[0 * S + s] = sep ? 1 : 0;
    base.delta[1 * S + s] = sep ? 3 : 2;
    base.delta[2 * S + s] = sep ? 3 : 2;
    base.delta[3 * S + s] = 3;
  }
  base.acc = {0, 0, 1, 0};
  Dfa r = base;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (is_set_name(vars[i])) continue;
    int t = L + static_cast<int>(i);
    Dfa one;
    one.width = width;
    one.lasso = true;
    one.n = 4;  // 0: none yet, 1: one in u, 2: after $, 3: dead
    one.delta.resize(4 * S);
    for (int s = 0; s < S; ++s) {
      bool sep = s == one.separator();
      bool b = !sep && (s >> t & 1);
      one.delta[0 * S + s] = sep ? 3 : (b ? 1 : 0);
      one.delta[1 * S + s] = sep ? 2 : (b ? 3 : 1);
      one.delta[2 * S + s] = sep ? 3 : (b ? 3 : 2);
      one.delta[3 * S + s] = 3;
    }
    one.acc = {0, 0, 1, 0};
    r = dfa_product(r, one, BoolOp::And);
  }
  return dfa_minimize(r);
}

// Close a lasso language under re-cutting after a projection.
// first_order: accept u$v iff u v^a $ v is accepted for some a >= 0.
// otherwise:   accept u$v iff u v^a $ v^b is accepted for some a >= 0, b >= 1.
Dfa saturate(const Dfa& d, bool first_order) {
  int Q = d.n;
  int letters = 1 << d.width;
  TransitionMonoid m;
  {
    Dfa plain;
    plain.width = d.width;
    plain.n = d.n;
    plain.init = d.init;
    plain.acc = d.acc;
    plain.delta.resize(static_cast<std::size_t>(Q) * letters);
    for (int q = 0; q < Q; ++q)
      for (int s = 0; s < letters; ++s) plain.delta[static_cast<std::size_t>(q) * letters + s] = d.next(q, s);
    m = transition_monoid(plain, config().monoid_cap);
  }
  int sep = d.separator();
  auto accept = [&](int q, const std::vector<int>& tau) {
    std::vector<char> seen(Q, 0);
    for (int r = q; !seen[r]; r = tau[r]) {
      seen[r] = 1;
      int s = d.next(r, sep);
      if (first_order) {
        if (d.acc[tau[s]]) return true;
      } else {
        std::vector<char> seen2(Q, 0);
        for (int x = tau[s]; !seen2[x]; x = tau[x]) {
          seen2[x] = 1;
          if (d.acc[x]) return true;
        }
      }
    }
    return false;
  };
  // After $ only the monoid element of the loop read so far matters. For each
  // state reached at $ that is a Cayley automaton of the monoid; it is
  // minimized on its own and shared between states with the same verdicts.
  Dfa r;
  r.width = d.width;
  r.lasso = true;
  int S = r.symbols();
  int dead = Q;
  const int E = static_cast<int>(m.elements.size());
  std::vector<int> delta(static_cast<std::size_t>(Q + 1) * S);
  std::vector<char> acc(Q + 1, 0);
  for (int q = 0; q < Q; ++q)
    for (int s = 0; s < letters; ++s) delta[static_cast<std::size_t>(q) * S + s] = d.next(q, s);
  for (int s = 0; s < S; ++s) delta[static_cast<std::size_t>(dead) * S + s] = dead;
  std::map<std::vector<char>, int> shared;
  for (int q = 0; q < Q; ++q) {
    std::vector<char> verdict(E);
    for (int e = 0; e < E; ++e) verdict[e] = accept(q, m.elements[e]);
    auto it = shared.find(verdict);
    if (it == shared.end()) {
      Dfa cayley;
      cayley.width = d.width;
      cayley.n = E;
      cayley.init = 0;
      cayley.delta.resize(static_cast<std::size_t>(E) * letters);
      for (int e = 0; e < E; ++e)
        for (int s = 0; s < letters; ++s) cayley.delta[static_cast<std::size_t>(e) * letters + s] = m.right[e][s];
      cayley.acc = verdict;
      Dfa mini = dfa_minimize(cayley);
      int base = static_cast<int>(acc.size());
      if (static_cast<std::size_t>(base + mini.n) >= config().dfa_state_cap)
        throw ResourceError("dfa_state_cap", "lasso saturation exceeds the state cap");
      for (int i = 0; i < mini.n; ++i) {
        for (int s = 0; s < letters; ++s) delta.push_back(base + mini.next(i, s));
        delta.push_back(dead);
        acc.push_back(mini.acc[i]);
      }
      it = shared.emplace(std::move(verdict), base + mini.init).first;
    }
    delta[static_cast<std::size_t>(q) * S + sep] = it->second;
  }
  r.n = static_cast<int>(acc.size());
  r.init = d.init;
  r.delta = std::move(delta);
  r.acc = std::move(acc);
  return dfa_minimize(r);
}

Dfa lasso_rec(const Formula& f, int L, CompileStats* st) {
  std::string k = memo_key(f, L);
  Dfa out;
  if (cache_get(cache().lasso, k, out)) return out;
  Vars vars = sorted_free(f);
  int width = L + static_cast<int>(vars.size());
  if (width > config().track_width_cap)
    throw ResourceError("track_width_cap", "subformula needs " + std::to_string(width) + " tracks: " + to_string(f));
  try {
    switch (f->kind) {
      case Kind::Not:
        out = dfa_minimize(dfa_product(valid_lasso(L, vars), lasso_rec(f->left, L, st), BoolOp::Diff));
        break;
      case Kind::And:
      case Kind::Or: {
        Vars lv = sorted_free(f->left), rv = sorted_free(f->right);
        Dfa a = dfa_remap(lasso_rec(f->left, L, st), width, track_map(L, lv, vars));
        Dfa b = dfa_remap(lasso_rec(f->right, L, st), width, track_map(L, rv, vars));
        Dfa p = dfa_product(a, b, f->kind == Kind::And ? BoolOp::And : BoolOp::Or);
        out = dfa_minimize(dfa_product(p, valid_lasso(L, vars), BoolOp::And));
        break;
      }
      case Kind::ExistsFo:
      case Kind::ExistsSo: {
        Vars bv = sorted_free(f->left);
        Vars inner = merge(vars, {f->a});
        int iw = L + static_cast<int>(inner.size());
        Dfa body = dfa_remap(lasso_rec(f->left, L, st), iw, track_map(L, bv, inner));
        body = dfa_product(body, valid_lasso(L, inner), BoolOp::And);
        note(st, body);
        Dfa proj = dfa_minimize(nfa_determinize(nfa_project(body, L + index_of(inner, f->a))));
        note(st, proj);
        out = saturate(proj, f->kind == Kind::ExistsFo);
        break;
      }
      default:
        out = dfa_minimize(dfa_product(compile_atom(f, L, vars, true), valid_lasso(L, vars), BoolOp::And));
    }
  } catch (const ResourceError& e) {
    blame(e, f);
  }
  note(st, out);
  cache_put(cache().lasso, k, out);
  return out;
}

// ---------------------------------------------------------------- omega

Nba nba_singleton(int width, int track) {
  Nba r;
  r.width = width;
  r.add_state(false);
  r.add_state(true);
  for (int s = 0; s < r.symbols(); ++s) {
    if (s >> track & 1) r.add_edge(0, s, 1);
    else {
      r.add_edge(0, s, 0);
      r.add_edge(1, s, 1);
    }
  }
  r.init = {0};
  return r;
}

Nba omega_rec(const Formula& f, int L, CompileStats* st) {
  std::string k = memo_key(f, L);
  Nba out;
  if (cache_get(cache().omega, k, out)) return out;
  Vars vars = sorted_free(f);
  int width = L + static_cast<int>(vars.size());
  if (width > config().track_width_cap)
    throw ResourceError("track_width_cap", "subformula needs " + std::to_string(width) + " tracks: " + to_string(f));
  try {
    if (quantifier_rank(f) == 0) {
      // Once every singleton track has been read, the finite-word verdict of a
      // quantifier-free formula no longer changes, so Buchi acceptance on the
      // same graph agrees with it.
      out = nba_reduce(nba_from_dfa(finite_rec(f, L, st)));
      note(st, out);
      cache_put(cache().omega, k, out);
      return out;
    }
    switch (f->kind) {
      case Kind::Not: out = nba_complement(omega_rec(f->left, L, st)); break;
      case Kind::And:
      case Kind::Or: {
        Vars lv = sorted_free(f->left), rv = sorted_free(f->right);
        Nba a = nba_remap(omega_rec(f->left, L, st), width, track_map(L, lv, vars));
        Nba b = nba_remap(omega_rec(f->right, L, st), width, track_map(L, rv, vars));
        out = f->kind == Kind::And ? nba_intersect(a, b) : nba_union(a, b);
        break;
      }
      case Kind::ExistsFo:
      case Kind::ExistsSo: {
        Vars bv = sorted_free(f->left);
        Vars inner = merge(vars, {f->a});
        int iw = L + static_cast<int>(inner.size());
        Nba body = nba_remap(omega_rec(f->left, L, st), iw, track_map(L, bv, inner));
        int t = L + index_of(inner, f->a);
        if (f->kind == Kind::ExistsFo) body = nba_intersect(body, nba_singleton(iw, t));
        note(st, body);
        out = nba_project(body, t);
        break;
      }
      default: out = nba_reduce(nba_from_dfa(dfa_minimize(compile_atom(f, L, vars, false))));
    }
  } catch (const ResourceError& e) {
    blame(e, f);
  }
  note(st, out);
  cache_put(cache().omega, k, out);
  return out;
}

int needed_letter_tracks(const Formula& f, int requested) {
  int need = max_letter_track(f) + 1;
  if (need > requested) throw UsageError("formula uses letter track " + std::to_string(need - 1));
  return requested;
}

}  // namespace

int CompiledFormula::track_of(const std::string& var) const { return letter_tracks + index_of(vars, var); }

CompiledFormula compile_finite(const Formula& phi, int letter_tracks) {
  CompiledFormula cf;
  cf.source = phi;
  cf.letter_tracks = needed_letter_tracks(phi, letter_tracks);
  cf.vars = sorted_free(phi);
  cf.finite = finite_rec(core(phi), cf.letter_tracks, &cf.stats);
  return cf;
}

CompiledFormula compile_omega(const Formula& phi, int letter_tracks) {
  CompiledFormula cf = compile_finite(phi, letter_tracks);
  cf.omega = omega_rec(core(phi), cf.letter_tracks, &cf.stats);
  return cf;
}

const Dfa& compile_lasso(const Formula& sentence, int letter_tracks) {
  if (!is_sentence(sentence)) throw UsageError("lasso compilation needs a sentence");
  int L = needed_letter_tracks(sentence, letter_tracks);
  std::string k = memo_key(sentence, L) + "|top";
  {
    std::lock_guard<std::mutex> lock(cache().mu);
    auto it = cache().lasso.find(k);
    if (it != cache().lasso.end()) return it->second;
  }
  Dfa d = lasso_rec(core(sentence), L, nullptr);
  std::lock_guard<std::mutex> lock(cache().mu);
  return cache().lasso.emplace(k, std::move(d)).first->second;
}

bool lasso_accepts(const Dfa& lasso, const FiniteWord& u, const FiniteWord& v) {
  if (v.empty()) throw UsageError("ultimately periodic word needs a nonempty loop");
  std::vector<int> w = symbols_of(u);
  w.push_back(lasso.separator());
  for (char c : v) w.push_back(letter_value(c));
  return lasso.accepts(w);
}

std::vector<int> encode(const CompiledFormula& cf, const FiniteWord& w, const Valuation& nu) {
  std::vector<int> out = symbols_of(w);
  for (std::size_t i = 0; i < cf.vars.size(); ++i) {
    const std::string& v = cf.vars[i];
    int bit = 1 << (cf.letter_tracks + static_cast<int>(i));
    if (is_set_name(v)) {
      auto it = nu.so.find(v);
      if (it == nu.so.end()) throw UsageError("no value for " + v);
      for (long long p : it->second)
        if (p >= 0 && p < static_cast<long long>(w.size())) out[p] |= bit;
    } else {
      auto it = nu.fo.find(v);
      if (it == nu.fo.end()) throw UsageError("no value for " + v);
      if (it->second < 0 || it->second >= static_cast<long long>(w.size())) throw UsageError(v + " outside the word");
      out[it->second] |= bit;
    }
  }
  return out;
}

bool accepts_finite(const CompiledFormula& cf, const FiniteWord& w, const Valuation& nu) {
  return cf.finite.accepts(encode(cf, w, nu));
}

void clear_compile_cache() {
  std::lock_guard<std::mutex> lock(cache().mu);
  cache().finite.clear();
  cache().lasso.clear();
  cache().omega.clear();
}

// ---------------------------------------------------------------- oracle

namespace {

bool eval(const FiniteWord& w, const Formula& f, Valuation& nu) {
  auto pos = [&](const std::string& v) {
    auto it = nu.fo.find(v);
    if (it == nu.fo.end()) throw UsageError("unbound variable " + v);
    return it->second;
  };
  long long n = static_cast<long long>(w.size());
  switch (f->kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Letter: return (letter_value(w[pos(f->a)]) >> f->track & 1) != 0;
    case Kind::Le: return pos(f->a) <= pos(f->b);
    case Kind::Lt: return pos(f->a) < pos(f->b);
    case Kind::Eq: return pos(f->a) == pos(f->b);
    case Kind::In: {
      auto it = nu.so.find(f->a);
      if (it == nu.so.end()) throw UsageError("unbound variable " + f->a);
      return it->second.count(pos(f->b)) > 0;
    }
    case Kind::Not: return !eval(w, f->left, nu);
    case Kind::And: return eval(w, f->left, nu) && eval(w, f->right, nu);
    case Kind::Or: return eval(w, f->left, nu) || eval(w, f->right, nu);
    case Kind::Implies: return !eval(w, f->left, nu) || eval(w, f->right, nu);
    case Kind::ExistsFo:
    case Kind::ForallFo: {
      bool want = f->kind == Kind::ExistsFo;
      auto old = nu.fo.find(f->a);
      bool had = old != nu.fo.end();
      long long saved = had ? old->second : 0;
      bool result = !want;
      for (long long i = 0; i < n; ++i) {
        nu.fo[f->a] = i;
        if (eval(w, f->left, nu) == want) {
          result = want;
          break;
        }
      }
      if (had) nu.fo[f->a] = saved;
      else nu.fo.erase(f->a);
      return result;
    }
    case Kind::ExistsSo:
    case Kind::ForallSo: {
      bool want = f->kind == Kind::ExistsSo;
      auto old = nu.so.find(f->a);
      std::optional<std::set<long long>> saved;
      if (old != nu.so.end()) saved = old->second;
      bool result = !want;
      for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
        std::set<long long> s;
        for (long long i = 0; i < n; ++i)
          if (mask >> i & 1) s.insert(i);
        nu.so[f->a] = std::move(s);
        if (eval(w, f->left, nu) == want) {
          result = want;
          break;
        }
      }
      if (saved) nu.so[f->a] = *saved;
      else nu.so.erase(f->a);
      return result;
    }
  }
  return false;
}

}  // namespace

bool brute_force_eval(const FiniteWord& w, const Formula& phi, const Valuation& nu) {
  if (static_cast<int>(w.size()) > config().brute_force_len)
    throw ResourceError("brute_force_len", "word of length " + std::to_string(w.size()));
  if (quantifier_rank(phi) > config().brute_force_qr)
    throw ResourceError("brute_force_qr", "quantifier rank " + std::to_string(quantifier_rank(phi)));
  Valuation v = nu;
  return eval(w, phi, v);
}

}  // namespace msow
