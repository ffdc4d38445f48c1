#include "msow/automata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "msow/config.hpp"

namespace msow {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e3779b9);
    return h;
  }
};

void check_compatible(const Dfa& a, const Dfa& b) {
  if (a.width != b.width || a.lasso != b.lasso)
    throw UsageError("alphabet mismatch: width " + std::to_string(a.width) + " vs " + std::to_string(b.width));
}

void check_compatible(const NondetAutomaton& a, const NondetAutomaton& b) {
  if (a.width != b.width || a.lasso != b.lasso)
    throw UsageError("alphabet mismatch: width " + std::to_string(a.width) + " vs " + std::to_string(b.width));
}

void check_width(int width) {
  if (width < 0 || width > config().track_width_cap)
    throw ResourceError("track_width_cap", "alphabet of width " + std::to_string(width));
}

// Old letter corresponding to new letter `b` when old track i sits at map[i].
int pull_letter(int b, const std::vector<int>& map) {
  int old = 0;
  for (std::size_t i = 0; i < map.size(); ++i)
    if (b >> map[i] & 1) old |= 1 << i;
  return old;
}

// Old letter obtained by inserting `bit` at position `track` of new letter b.
int insert_bit(int b, int track, int bit) {
  int low = b & ((1 << track) - 1);
  int high = b >> track;
  return low | (bit << track) | (high << (track + 1));
}

template <class A>
void init_nondet(A& r, int width, bool lasso) {
  check_width(width);
  r.width = width;
  r.lasso = lasso;
  r.n = 0;
  r.delta.clear();
  r.init.clear();
  r.acc.clear();
}

// Tarjan SCC, iterative. comp[v] gets the component index.
std::vector<int> scc(const NondetAutomaton& a, int& count) {
  int n = a.n, S = a.symbols();
  std::vector<std::vector<int>> adj(n);
  for (int p = 0; p < n; ++p) {
    for (int s = 0; s < S; ++s)
      for (int q : a.succ(p, s)) adj[p].push_back(q);
    std::sort(adj[p].begin(), adj[p].end());
    adj[p].erase(std::unique(adj[p].begin(), adj[p].end()), adj[p].end());
  }
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on(n, 0);
  int counter = 0;
  count = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = 1;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < adj[v].size()) {
        int w = adj[v][i++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on[w] = 0;
            comp[w] = count;
            if (w == v) break;
          }
          ++count;
        }
        int done = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      }
    }
  }
  return comp;
}

}  // namespace

int Dfa::run(int q, const std::vector<int>& word) const {
  for (int a : word) q = next(q, a);
  return q;
}

bool Dfa::accepts(const std::vector<int>& word) const { return n > 0 && acc[run(init, word)]; }

int NondetAutomaton::add_state(bool accepting) {
  acc.push_back(accepting ? 1 : 0);
  delta.resize(delta.size() + symbols());
  return n++;
}

void NondetAutomaton::add_edge(int p, int a, int q) {
  auto& v = succ(p, a);
  if (std::find(v.begin(), v.end(), q) == v.end()) v.push_back(q);
}

std::vector<int> symbols_of(const FiniteWord& w) {
  std::vector<int> r;
  r.reserve(w.size());
  for (char c : w) r.push_back(letter_value(c));
  return r;
}

// ---------------------------------------------------------------- DFA ops

Dfa dfa_product(const Dfa& a, const Dfa& b, BoolOp op) {
  check_compatible(a, b);
  Dfa r;
  r.width = a.width;
  r.lasso = a.lasso;
  int S = a.symbols();
  std::unordered_map<long long, int> id;
  std::vector<std::pair<int, int>> states;
  auto get = [&](int p, int q) {
    long long key = static_cast<long long>(p) * b.n + q;
    auto it = id.find(key);
    if (it != id.end()) return it->second;
    int k = static_cast<int>(states.size());
    if (static_cast<std::size_t>(k) >= config().dfa_state_cap)
      throw ResourceError("dfa_state_cap", "product exceeds " + std::to_string(config().dfa_state_cap) + " states");
    id.emplace(key, k);
    states.push_back({p, q});
    return k;
  };
  r.init = get(a.init, b.init);
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [p, q] = states[i];
    for (int s = 0; s < S; ++s) {
      int t = get(a.next(p, s), b.next(q, s));
      r.delta.push_back(t);
    }
  }
  r.n = static_cast<int>(states.size());
  r.acc.resize(r.n);
  for (int i = 0; i < r.n; ++i) {
    bool x = a.acc[states[i].first], y = b.acc[states[i].second];
    bool v = false;
    switch (op) {
      case BoolOp::And: v = x && y; break;
      case BoolOp::Or: v = x || y; break;
      case BoolOp::Diff: v = x && !y; break;
      case BoolOp::Xor: v = x != y; break;
    }
    r.acc[i] = v;
  }
  return r;
}

Dfa dfa_complement(const Dfa& a) {
  Dfa r = a;
  for (auto& x : r.acc) x = !x;
  return r;
}

Dfa dfa_trim_unreachable(const Dfa& a) {
  int S = a.symbols();
  std::vector<int> id(a.n, -1), order{a.init};
  id[a.init] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int s = 0; s < S; ++s) {
      int t = a.next(order[i], s);
      if (id[t] < 0) {
        id[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  Dfa r;
  r.width = a.width;
  r.lasso = a.lasso;
  r.n = static_cast<int>(order.size());
  r.init = 0;
  r.delta.resize(static_cast<std::size_t>(r.n) * S);
  r.acc.resize(r.n);
  for (int i = 0; i < r.n; ++i) {
    r.acc[i] = a.acc[order[i]];
    for (int s = 0; s < S; ++s) r.delta[static_cast<std::size_t>(i) * S + s] = id[a.next(order[i], s)];
  }
  return r;
}

// Moore partition refinement; the result is numbered in BFS order from init so
// equal languages give identical tables.
Dfa dfa_minimize(const Dfa& in) {
  Dfa a = dfa_trim_unreachable(in);
  int S = a.symbols();
  std::vector<int> cls(a.n);
  for (int i = 0; i < a.n; ++i) cls[i] = a.acc[i] ? 1 : 0;
  int count = 0;
  {
    bool any0 = false, any1 = false;
    for (int i = 0; i < a.n; ++i) (a.acc[i] ? any1 : any0) = true;
    count = (any0 ? 1 : 0) + (any1 ? 1 : 0);
  }
  while (true) {
    std::unordered_map<std::vector<int>, int, VecHash> sig;
    std::vector<int> next(a.n);
    std::vector<int> key(S + 1);
    for (int q = 0; q < a.n; ++q) {
      key[0] = cls[q];
      for (int s = 0; s < S; ++s) key[s + 1] = cls[a.next(q, s)];
      auto it = sig.find(key);
      if (it == sig.end()) it = sig.emplace(key, static_cast<int>(sig.size())).first;
      next[q] = it->second;
    }
    int c = static_cast<int>(sig.size());
    cls.swap(next);
    if (c == count) break;
    count = c;
  }
  // BFS renumbering of the quotient
  std::vector<int> rep(count, -1);
  for (int q = 0; q < a.n; ++q)
    if (rep[cls[q]] < 0) rep[cls[q]] = q;
  std::vector<int> id(count, -1), order{cls[a.init]};
  id[cls[a.init]] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int s = 0; s < S; ++s) {
      int t = cls[a.next(rep[order[i]], s)];
      if (id[t] < 0) {
        id[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  Dfa r;
  r.width = a.width;
  r.lasso = a.lasso;
  r.n = static_cast<int>(order.size());
  r.init = 0;
  r.delta.resize(static_cast<std::size_t>(r.n) * S);
  r.acc.resize(r.n);
  for (int i = 0; i < r.n; ++i) {
    int q = rep[order[i]];
    r.acc[i] = a.acc[q];
    for (int s = 0; s < S; ++s) r.delta[static_cast<std::size_t>(i) * S + s] = id[cls[a.next(q, s)]];
  }
  return r;
}

Dfa nfa_determinize(const Nfa& a) {
  int S = a.symbols();
  Dfa r;
  r.width = a.width;
  r.lasso = a.lasso;
  std::unordered_map<std::vector<int>, int, VecHash> id;
  std::vector<std::vector<int>> sets;
  auto get = [&](std::vector<int> set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    auto it = id.find(set);
    if (it != id.end()) return it->second;
    int k = static_cast<int>(sets.size());
    if (static_cast<std::size_t>(k) >= config().dfa_state_cap)
      throw ResourceError("dfa_state_cap", "subset construction exceeds " + std::to_string(config().dfa_state_cap) + " states");
    id.emplace(set, k);
    sets.push_back(std::move(set));
    return k;
  };
  r.init = get(a.init);
  std::vector<int> buf;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int s = 0; s < S; ++s) {
      buf.clear();
      for (int p : sets[i])
        for (int q : a.succ(p, s)) buf.push_back(q);
      int t = get(buf);
      r.delta.push_back(t);
    }
  }
  r.n = static_cast<int>(sets.size());
  r.acc.resize(r.n);
  for (int i = 0; i < r.n; ++i)
    for (int p : sets[i])
      if (a.acc[p]) r.acc[i] = 1;
  return r;
}

Nfa dfa_to_nfa(const Dfa& a) {
  Nfa r;
  init_nondet(r, a.width, a.lasso);
  for (int q = 0; q < a.n; ++q) r.add_state(a.acc[q]);
  for (int q = 0; q < a.n; ++q)
    for (int s = 0; s < a.symbols(); ++s) r.add_edge(q, s, a.next(q, s));
  if (a.n > 0) r.init = {a.init};
  return r;
}

Nfa nfa_project(const Dfa& a, int track) {
  if (track < 0 || track >= a.width) throw UsageError("projection track out of range");
  Nfa r;
  init_nondet(r, a.width - 1, a.lasso);
  for (int q = 0; q < a.n; ++q) r.add_state(a.acc[q]);
  int base = 1 << r.width;
  for (int q = 0; q < a.n; ++q) {
    for (int b = 0; b < base; ++b)
      for (int bit = 0; bit < 2; ++bit) r.add_edge(q, b, a.next(q, insert_bit(b, track, bit)));
    if (a.lasso) r.add_edge(q, base, a.next(q, a.separator()));
  }
  r.init = {a.init};
  return r;
}

Nfa nfa_reverse(const Nfa& a) {
  Nfa r;
  init_nondet(r, a.width, a.lasso);
  for (int q = 0; q < a.n; ++q) r.add_state(a.init.end() != std::find(a.init.begin(), a.init.end(), q));
  for (int p = 0; p < a.n; ++p)
    for (int s = 0; s < a.symbols(); ++s)
      for (int q : a.succ(p, s)) r.add_edge(q, s, p);
  for (int q = 0; q < a.n; ++q)
    if (a.acc[q]) r.init.push_back(q);
  return r;
}

Dfa dfa_remap(const Dfa& a, int width, const std::vector<int>& map) {
  check_width(width);
  if (static_cast<int>(map.size()) != a.width) throw UsageError("track map size mismatch");
  Dfa r;
  r.width = width;
  r.lasso = a.lasso;
  r.n = a.n;
  r.init = a.init;
  r.acc = a.acc;
  int S = r.symbols(), base = 1 << width;
  r.delta.resize(static_cast<std::size_t>(r.n) * S);
  std::vector<int> pulled(base);
  for (int b = 0; b < base; ++b) pulled[b] = pull_letter(b, map);
  for (int q = 0; q < a.n; ++q) {
    for (int b = 0; b < base; ++b) r.delta[static_cast<std::size_t>(q) * S + b] = a.next(q, pulled[b]);
    if (a.lasso) r.delta[static_cast<std::size_t>(q) * S + base] = a.next(q, a.separator());
  }
  return r;
}

Dfa dfa_empty(int width) {
  Dfa r;
  r.width = width;
  r.n = 1;
  r.delta.assign(r.symbols(), 0);
  r.acc = {0};
  return r;
}

Dfa dfa_universal(int width) {
  Dfa r = dfa_empty(width);
  r.acc = {1};
  return r;
}

Dfa dfa_singleton(int width, int track) {
  Dfa r;
  r.width = width;
  r.n = 3;
  int S = r.symbols();
  r.delta.resize(3 * S);
  for (int s = 0; s < S; ++s) {
    bool one = s >> track & 1;
    r.delta[s] = one ? 1 : 0;
    r.delta[S + s] = one ? 2 : 1;
    r.delta[2 * S + s] = 2;
  }
  r.acc = {0, 1, 0};
  return r;
}

bool dfa_is_empty(const Dfa& a) {
  if (a.n == 0) return true;
  Dfa t = dfa_trim_unreachable(a);
  return std::none_of(t.acc.begin(), t.acc.end(), [](char c) { return c != 0; });
}

std::optional<std::vector<int>> dfa_shortest_word(const Dfa& a) {
  if (a.n == 0) return std::nullopt;
  int S = a.symbols();
  // distance to acceptance, then walk greedily along decreasing distance
  std::vector<int> dist(a.n, -1);
  for (int q = 0; q < a.n; ++q)
    if (a.acc[q]) dist[q] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (int q = 0; q < a.n; ++q)
      for (int s = 0; s < S; ++s) {
        int d = dist[a.next(q, s)];
        if (d >= 0 && (dist[q] < 0 || d + 1 < dist[q])) {
          dist[q] = d + 1;
          changed = true;
        }
      }
  }
  if (dist[a.init] < 0) return std::nullopt;
  std::vector<int> word;
  for (int q = a.init; dist[q] > 0;) {
    for (int s = 0; s < S; ++s)
      if (dist[a.next(q, s)] == dist[q] - 1) {
        word.push_back(s);
        q = a.next(q, s);
        break;
      }
  }
  return word;
}

Dfa dfa_nonempty(int width) {
  Dfa d;
  d.width = width;
  d.n = 2;
  d.delta.assign(2 * d.symbols(), 1);
  d.acc = {0, 1};
  return d;
}

bool dfa_equivalent(const Dfa& a, const Dfa& b) { return dfa_is_empty(dfa_product(a, b, BoolOp::Xor)); }

bool dfa_subset(const Dfa& a, const Dfa& b) { return dfa_is_empty(dfa_product(a, b, BoolOp::Diff)); }

// ---------------------------------------------------------------- monoid

TransitionMonoid transition_monoid(const Dfa& a, std::size_t cap) {
  TransitionMonoid m;
  int S = a.symbols();
  std::unordered_map<std::vector<int>, int, VecHash> id;
  std::vector<int> ident(a.n);
  std::iota(ident.begin(), ident.end(), 0);
  id.emplace(ident, 0);
  m.elements.push_back(ident);
  m.words.push_back({});
  for (std::size_t i = 0; i < m.elements.size(); ++i) {
    std::vector<int> row(S);
    for (int s = 0; s < S; ++s) {
      std::vector<int> f(a.n);
      for (int q = 0; q < a.n; ++q) f[q] = a.next(m.elements[i][q], s);
      auto it = id.find(f);
      if (it == id.end()) {
        if (m.elements.size() >= cap)
          throw ResourceError("monoid_cap", "transition monoid exceeds " + std::to_string(cap) + " elements");
        it = id.emplace(f, static_cast<int>(m.elements.size())).first;
        m.elements.push_back(std::move(f));
        auto w = m.words[i];
        w.push_back(s);
        m.words.push_back(std::move(w));
      }
      row[s] = it->second;
    }
    m.right.push_back(std::move(row));
  }
  return m;
}

// ---------------------------------------------------------------- factors

namespace {

int width_of(const std::string& w, int at_least) {
  int width = at_least;
  for (char c : w)
    while (letter_value(c) >= (1 << width)) ++width;
  return width;
}

Dfa factor_dfa(Nfa& g) {
  g.init.clear();
  for (int q = 0; q < g.n; ++q) {
    g.acc[q] = 1;
    g.init.push_back(q);
  }
  if (g.n == 0) {
    Dfa eps;
    eps.width = g.width;
    eps.n = 2;
    eps.delta.assign(2 * eps.symbols(), 1);
    eps.acc = {1, 0};
    return eps;
  }
  return dfa_minimize(nfa_determinize(g));
}

}  // namespace

Dfa factor_automaton(const UpWord& w) {
  validate(w);
  FiniteWord s = w.u + w.v;
  Nfa g;
  init_nondet(g, std::max(w.width, width_of(s, 1)), false);
  int N = static_cast<int>(s.size());
  for (int i = 0; i < N; ++i) g.add_state(true);
  for (int i = 0; i < N; ++i) g.add_edge(i, letter_value(s[i]), i + 1 < N ? i + 1 : static_cast<int>(w.u.size()));
  return factor_dfa(g);
}

Dfa factor_automaton(const BiWord& w) {
  validate(w);
  Nfa g;
  init_nondet(g, width_of(w.x + w.y + w.z, 1), false);
  int nx = static_cast<int>(w.x.size()), ny = static_cast<int>(w.y.size()), nz = static_cast<int>(w.z.size());
  for (int i = 0; i < nx + ny + nz; ++i) g.add_state(true);
  int y0 = nx, z0 = nx + ny;
  int after_x = ny > 0 ? y0 : z0;
  for (int i = 0; i < nx; ++i) {
    int c = letter_value(w.x[i]);
    if (i + 1 < nx) {
      g.add_edge(i, c, i + 1);
    } else {
      g.add_edge(i, c, 0);
      g.add_edge(i, c, after_x);
    }
  }
  for (int i = 0; i < ny; ++i) g.add_edge(y0 + i, letter_value(w.y[i]), i + 1 < ny ? y0 + i + 1 : z0);
  for (int i = 0; i < nz; ++i) g.add_edge(z0 + i, letter_value(w.z[i]), i + 1 < nz ? z0 + i + 1 : z0);
  return factor_dfa(g);
}

Dfa factor_automaton(const Dfa& lang) {
  Dfa a = dfa_trim_unreachable(lang);
  int S = a.symbols();
  // co-reachability
  std::vector<char> live(a.n, 0);
  for (int q = 0; q < a.n; ++q) live[q] = a.acc[q];
  for (bool changed = true; changed;) {
    changed = false;
    for (int q = 0; q < a.n; ++q) {
      if (live[q]) continue;
      for (int s = 0; s < S; ++s)
        if (live[a.next(q, s)]) {
          live[q] = 1;
          changed = true;
          break;
        }
    }
  }
  if (!live[a.init]) return dfa_empty(a.width);
  Nfa g;
  init_nondet(g, a.width, a.lasso);
  for (int q = 0; q < a.n; ++q) g.add_state(live[q]);
  for (int q = 0; q < a.n; ++q) {
    if (!live[q]) continue;
    for (int s = 0; s < S; ++s)
      if (live[a.next(q, s)]) g.add_edge(q, s, a.next(q, s));
  }
  for (int q = 0; q < a.n; ++q)
    if (live[q]) g.init.push_back(q);
  return dfa_minimize(nfa_determinize(g));
}

bool factorial_check(const Dfa& lang) { return dfa_equivalent(lang, factor_automaton(lang)); }

bool extension_check(const Dfa& lang) {
  Dfa a = dfa_minimize(lang);
  TransitionMonoid m = transition_monoid(a, config().monoid_cap);
  std::vector<int> in_lang;
  for (std::size_t i = 0; i < m.elements.size(); ++i)
    if (a.acc[m.elements[i][a.init]]) in_lang.push_back(static_cast<int>(i));
  for (int p = 0; p < a.n; ++p) {
    if (!a.acc[p]) continue;  // p = run(u) for some u in L (all states are reachable)
    std::vector<char> reach(a.n, 0);
    for (const auto& e : m.elements) reach[e[p]] = 1;
    for (int w : in_lang) {
      bool ok = false;
      for (int r = 0; r < a.n && !ok; ++r)
        if (reach[r] && a.acc[m.elements[w][r]]) ok = true;
      if (!ok) return false;
    }
  }
  return true;
}

bool has_nonempty_word(const Dfa& lang) {
  int S = lang.symbols();
  std::vector<char> seen(lang.n, 0);
  std::vector<int> stack;
  for (int s = 0; s < S; ++s) {
    int t = lang.next(lang.init, s);
    if (!seen[t]) {
      seen[t] = 1;
      stack.push_back(t);
    }
  }
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    if (lang.acc[q]) return true;
    for (int s = 0; s < S; ++s) {
      int t = lang.next(q, s);
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------- profiles

TransitionProfile profile_identity(int n) {
  TransitionProfile p;
  p.n = n;
  p.m.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) p.m[i * n + i] = 1;
  return p;
}

TransitionProfile profile_letter(const Nba& a, int letter) {
  TransitionProfile p;
  p.n = a.n;
  p.m.assign(static_cast<std::size_t>(a.n) * a.n, 0);
  for (int q = 0; q < a.n; ++q)
    for (int r : a.succ(q, letter)) p.m[q * a.n + r] = (a.acc[q] || a.acc[r]) ? 2 : 1;
  return p;
}

TransitionProfile profile_compose(const TransitionProfile& x, const TransitionProfile& y) {
  int n = x.n;
  TransitionProfile r;
  r.n = n;
  r.m.assign(static_cast<std::size_t>(n) * n, 0);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      std::uint8_t a = x.m[p * n + q];
      if (!a) continue;
      for (int t = 0; t < n; ++t) {
        std::uint8_t b = y.m[q * n + t];
        if (!b) continue;
        std::uint8_t v = (a == 2 || b == 2) ? 2 : 1;
        if (v > r.m[p * n + t]) r.m[p * n + t] = v;
      }
    }
  return r;
}

TransitionProfile profile_of(const Nba& a, const std::vector<int>& word) {
  if (word.empty()) {
    // The empty path visits its single state.
    TransitionProfile p = profile_identity(a.n);
    for (int i = 0; i < a.n; ++i)
      if (a.acc[i]) p.m[i * a.n + i] = 2;
    return p;
  }
  TransitionProfile p = profile_letter(a, word[0]);
  for (std::size_t i = 1; i < word.size(); ++i) p = profile_compose(p, profile_letter(a, word[i]));
  return p;
}

TransitionProfile profile_idempotent(const TransitionProfile& p) {
  std::vector<TransitionProfile> powers{p};  // powers[i] = p^{i+1}
  std::map<TransitionProfile, std::size_t> seen{{p, 0}};
  std::size_t index = 0, period = 0;
  while (true) {
    TransitionProfile nx = profile_compose(powers.back(), p);
    auto it = seen.find(nx);
    if (it != seen.end()) {
      index = it->second + 1;
      period = powers.size() + 1 - index;
      break;
    }
    seen.emplace(nx, powers.size());
    powers.push_back(std::move(nx));
  }
  std::size_t k = period;
  while (k < index) k += period;
  return powers[k - 1];
}

bool nba_membership_up(const Nba& a, const std::vector<int>& u, const std::vector<int>& v) {
  if (v.empty()) throw UsageError("ultimately periodic word needs a nonempty loop");
  int n = a.n;
  if (n == 0) return false;
  std::vector<char> cur(n, 0);
  for (int q : a.init) cur[q] = 1;
  for (int s : u) {
    std::vector<char> nx(n, 0);
    for (int q = 0; q < n; ++q)
      if (cur[q])
        for (int r : a.succ(q, s)) nx[r] = 1;
    cur.swap(nx);
  }
  TransitionProfile V = profile_of(a, v);
  // close under v-blocks
  std::vector<int> stack;
  for (int q = 0; q < n; ++q)
    if (cur[q]) stack.push_back(q);
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int r = 0; r < n; ++r)
      if (V.m[q * n + r] && !cur[r]) {
        cur[r] = 1;
        stack.push_back(r);
      }
  }
  TransitionProfile E = profile_idempotent(V);
  for (int q = 0; q < n; ++q)
    if (cur[q] && E.m[q * n + q] == 2) return true;
  return false;
}

bool nba_membership_up(const Nba& a, const UpWord& w) {
  validate(w);
  return nba_membership_up(a, symbols_of(w.u), symbols_of(w.v));
}

Nba nba_empty(int width) {
  Nba r;
  init_nondet(r, width, false);
  return r;
}

Nba nba_universal(int width) {
  Nba r;
  init_nondet(r, width, false);
  r.add_state(true);
  for (int s = 0; s < r.symbols(); ++s) r.add_edge(0, s, 0);
  r.init = {0};
  return r;
}

Nba nba_from_dfa(const Dfa& a) {
  Nba r;
  init_nondet(r, a.width, false);
  for (int q = 0; q < a.n; ++q) r.add_state(a.acc[q]);
  for (int q = 0; q < a.n; ++q)
    for (int s = 0; s < r.symbols(); ++s) r.add_edge(q, s, a.next(q, s));
  if (a.n) r.init = {a.init};
  return r;
}

Nba nba_reduce(const Nba& a) {
  int n = a.n, S = a.symbols();
  if (n == 0) return a;
  // reachable
  std::vector<char> reach(n, 0);
  std::vector<int> stack(a.init.begin(), a.init.end());
  for (int q : stack) reach[q] = 1;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int s = 0; s < S; ++s)
      for (int r : a.succ(q, s))
        if (!reach[r]) {
          reach[r] = 1;
          stack.push_back(r);
        }
  }
  // accepting states on a cycle
  int ncomp = 0;
  std::vector<int> comp = scc(a, ncomp);
  std::vector<int> comp_size(ncomp, 0);
  for (int q = 0; q < n; ++q) comp_size[comp[q]]++;
  std::vector<char> good(n, 0);
  for (int q = 0; q < n; ++q) {
    if (!a.acc[q]) continue;
    bool cyc = comp_size[comp[q]] > 1;
    for (int s = 0; s < S && !cyc; ++s)
      for (int r : a.succ(q, s))
        if (r == q) cyc = true;
    good[q] = cyc;
  }
  // backward closure
  std::vector<std::vector<int>> pred(n);
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < S; ++s)
      for (int r : a.succ(p, s)) pred[r].push_back(p);
  std::vector<char> live(n, 0);
  for (int q = 0; q < n; ++q)
    if (good[q]) {
      live[q] = 1;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int p : pred[q])
      if (!live[p]) {
        live[p] = 1;
        stack.push_back(p);
      }
  }
  std::vector<int> keep;
  for (int q = 0; q < n; ++q)
    if (reach[q] && live[q]) keep.push_back(q);
  if (keep.empty()) return nba_empty(a.width);
  std::vector<int> idx(n, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) idx[keep[i]] = static_cast<int>(i);
  // forward bisimulation on kept states
  int k = static_cast<int>(keep.size());
  std::vector<int> cls(k);
  for (int i = 0; i < k; ++i) cls[i] = a.acc[keep[i]] ? 1 : 0;
  int count = -1;
  while (true) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> nx(k);
    for (int i = 0; i < k; ++i) {
      std::vector<int> key{cls[i]};
      for (int s = 0; s < S; ++s) {
        std::vector<int> targets;
        for (int r : a.succ(keep[i], s))
          if (idx[r] >= 0) targets.push_back(cls[idx[r]]);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        key.push_back(-1 - s);
        key.insert(key.end(), targets.begin(), targets.end());
      }
      auto it = sig.emplace(key, static_cast<int>(sig.size())).first;
      nx[i] = it->second;
    }
    int c = static_cast<int>(sig.size());
    cls.swap(nx);
    if (c == count) break;
    count = c;
  }
  Nba r;
  init_nondet(r, a.width, a.lasso);
  for (int c = 0; c < count; ++c) r.add_state(false);
  for (int i = 0; i < k; ++i) {
    if (a.acc[keep[i]]) r.acc[cls[i]] = 1;
    for (int s = 0; s < S; ++s)
      for (int t : a.succ(keep[i], s))
        if (idx[t] >= 0) r.add_edge(cls[i], s, cls[idx[t]]);
  }
  for (int q : a.init)
    if (idx[q] >= 0 && std::find(r.init.begin(), r.init.end(), cls[idx[q]]) == r.init.end())
      r.init.push_back(cls[idx[q]]);
  return r;
}

Nba nba_complement(const Nba& in) {
  if (in.n > config().nba_complement_cap)
    throw ResourceError("nba_complement_cap", "input has " + std::to_string(in.n) + " states, cap is " +
                                                  std::to_string(config().nba_complement_cap));
  const Nba& a = in;
  int S = a.symbols();
  int n = a.n;
  // monoid of profiles of nonempty words
  std::map<TransitionProfile, int> id;
  std::vector<TransitionProfile> elems;
  std::vector<std::vector<int>> right;
  std::vector<TransitionProfile> letters;
  for (int s = 0; s < S; ++s) letters.push_back(profile_letter(a, s));
  auto get = [&](TransitionProfile p) {
    auto it = id.find(p);
    if (it != id.end()) return it->second;
    if (elems.size() >= config().monoid_cap)
      throw ResourceError("monoid_cap", "profile monoid exceeds " + std::to_string(config().monoid_cap) + " elements");
    int k = static_cast<int>(elems.size());
    id.emplace(p, k);
    elems.push_back(std::move(p));
    return k;
  };
  std::vector<int> letter_elem(S);
  for (int s = 0; s < S; ++s) letter_elem[s] = get(letters[s]);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::vector<int> row(S);
    for (int s = 0; s < S; ++s) row[s] = get(profile_compose(elems[i], letters[s]));
    right.push_back(std::move(row));
  }
  int M = static_cast<int>(elems.size());
  std::vector<int> idem;
  for (int e = 0; e < M; ++e)
    if (profile_compose(elems[e], elems[e]) == elems[e]) idem.push_back(e);
  // rejecting[s] = list of idempotent slots e with (s, e) rejecting
  std::vector<std::vector<int>> rejecting(M);
  std::vector<char> used(idem.size(), 0);
  for (int s = 0; s < M; ++s)
    for (std::size_t j = 0; j < idem.size(); ++j) {
      const auto& E = elems[idem[j]];
      if (!(profile_compose(elems[s], E) == elems[s])) continue;
      bool accepted = false;
      for (int i : a.init)
        for (int q = 0; q < n && !accepted; ++q)
          if (elems[s].m[i * n + q] && E.m[q * n + q] == 2) accepted = true;
      if (!accepted) {
        rejecting[s].push_back(static_cast<int>(j));
        used[j] = 1;
      }
    }
  Nba r;
  init_nondet(r, a.width, false);
  int start = r.add_state(false);
  std::vector<int> A(M);
  for (int m = 0; m < M; ++m) A[m] = r.add_state(false);
  // B part per used idempotent: reset state plus one state per element
  std::vector<int> reset(idem.size(), -1);
  std::vector<std::vector<int>> B(idem.size());
  for (std::size_t j = 0; j < idem.size(); ++j) {
    if (!used[j]) continue;
    reset[j] = r.add_state(true);
    B[j].resize(M);
    for (int m = 0; m < M; ++m) B[j][m] = r.add_state(false);
  }
  for (int s = 0; s < S; ++s) {
    int t = letter_elem[s];
    r.add_edge(start, s, A[t]);
    for (int j : rejecting[t]) r.add_edge(start, s, reset[j]);
  }
  for (int m = 0; m < M; ++m)
    for (int s = 0; s < S; ++s) {
      int t = right[m][s];
      r.add_edge(A[m], s, A[t]);
      for (int j : rejecting[t]) r.add_edge(A[m], s, reset[j]);
    }
  for (std::size_t j = 0; j < idem.size(); ++j) {
    if (!used[j]) continue;
    int e = idem[j];
    for (int s = 0; s < S; ++s) {
      int t = letter_elem[s];
      r.add_edge(reset[j], s, B[j][t]);
      if (t == e) r.add_edge(reset[j], s, reset[j]);
    }
    for (int m = 0; m < M; ++m)
      for (int s = 0; s < S; ++s) {
        int t = right[m][s];
        r.add_edge(B[j][m], s, B[j][t]);
        if (t == e) r.add_edge(B[j][m], s, reset[j]);
      }
  }
  r.init = {start};
  return nba_reduce(r);
}

Nba nba_intersect(const Nba& a, const Nba& b) {
  check_compatible(a, b);
  int S = a.symbols();
  Nba r;
  init_nondet(r, a.width, false);
  std::map<std::tuple<int, int, int>, int> id;
  std::vector<std::tuple<int, int, int>> states;
  auto get = [&](int p, int q, int f) {
    auto key = std::make_tuple(p, q, f);
    auto it = id.find(key);
    if (it != id.end()) return it->second;
    int k = r.add_state(f == 0 && a.acc[p]);
    id.emplace(key, k);
    states.push_back(key);
    return k;
  };
  for (int p : a.init)
    for (int q : b.init) r.init.push_back(get(p, q, 0));
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [p, q, f] = states[i];
    int g = f;
    if (f == 0 && a.acc[p]) g = 1;
    else if (f == 1 && b.acc[q]) g = 0;
    for (int s = 0; s < S; ++s)
      for (int p2 : a.succ(p, s))
        for (int q2 : b.succ(q, s)) {
          int t = get(p2, q2, g);
          r.add_edge(static_cast<int>(i), s, t);
        }
  }
  return nba_reduce(r);
}

Nba nba_union(const Nba& a, const Nba& b) {
  check_compatible(a, b);
  Nba r;
  init_nondet(r, a.width, false);
  for (int q = 0; q < a.n; ++q) r.add_state(a.acc[q]);
  for (int q = 0; q < b.n; ++q) r.add_state(b.acc[q]);
  for (int q = 0; q < a.n; ++q)
    for (int s = 0; s < a.symbols(); ++s)
      for (int t : a.succ(q, s)) r.add_edge(q, s, t);
  for (int q = 0; q < b.n; ++q)
    for (int s = 0; s < b.symbols(); ++s)
      for (int t : b.succ(q, s)) r.add_edge(a.n + q, s, a.n + t);
  r.init = a.init;
  for (int q : b.init) r.init.push_back(a.n + q);
  return nba_reduce(r);
}

Nba nba_project(const Nba& a, int track) {
  if (track < 0 || track >= a.width) throw UsageError("projection track out of range");
  Nba r;
  init_nondet(r, a.width - 1, false);
  for (int q = 0; q < a.n; ++q) r.add_state(a.acc[q]);
  for (int q = 0; q < a.n; ++q)
    for (int b = 0; b < r.symbols(); ++b)
      for (int bit = 0; bit < 2; ++bit)
        for (int t : a.succ(q, insert_bit(b, track, bit))) r.add_edge(q, b, t);
  r.init = a.init;
  return nba_reduce(r);
}

Nba nba_remap(const Nba& a, int width, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != a.width) throw UsageError("track map size mismatch");
  Nba r;
  init_nondet(r, width, false);
  for (int q = 0; q < a.n; ++q) r.add_state(a.acc[q]);
  for (int q = 0; q < a.n; ++q)
    for (int b = 0; b < r.symbols(); ++b) r.succ(q, b) = a.succ(q, pull_letter(b, map));
  r.init = a.init;
  return r;
}

// ---------------------------------------------------------------- serialization

namespace {

std::string letter_bits(int s, int width, bool lasso) {
  if (lasso && s == (1 << width)) return "$";
  std::string b;
  for (int i = 0; i < width; ++i) b += (s >> i & 1) ? '1' : '0';
  return b.empty() ? "-" : b;
}

int parse_bits(const std::string& b, int width, bool lasso) {
  if (b == "$" && lasso) return 1 << width;
  if (width == 0 && b == "-") return 0;
  if (static_cast<int>(b.size()) != width) throw UsageError("letter '" + b + "' does not match width");
  int s = 0;
  for (int i = 0; i < width; ++i) {
    if (b[i] == '1') s |= 1 << i;
    else if (b[i] != '0') throw UsageError("bad letter '" + b + "'");
  }
  return s;
}

struct Parsed {
  std::string kind;
  int width = 1;
  int n = 0;
  std::vector<std::tuple<int, int, int>> edges;
  std::vector<int> init, acc;
};

Parsed parse_text(const std::string& text) {
  Parsed p;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!header) {
      p.kind = first;
      if (p.kind != "dfa" && p.kind != "nfa" && p.kind != "nba") throw UsageError("unknown automaton kind " + first);
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("bad header field " + kv);
        std::string k = kv.substr(0, eq);
        int v = std::stoi(kv.substr(eq + 1));
        if (k == "width") p.width = v;
        else if (k == "states") p.n = v;
        else throw UsageError("bad header field " + kv);
      }
      header = true;
      continue;
    }
    if (first == "init:" || first == "acc:") {
      auto& dst = first == "init:" ? p.init : p.acc;
      int q;
      while (ls >> q) dst.push_back(q);
      continue;
    }
    std::string bits;
    int dst;
    if (!(ls >> bits >> dst)) throw UsageError("bad transition line: " + line);
    int src = std::stoi(first);
    p.edges.emplace_back(src, parse_bits(bits, p.width, false), dst);
  }
  if (!header) throw UsageError("missing automaton header");
  auto in_range = [&](int q) {
    if (q < 0 || q >= p.n) throw UsageError("state " + std::to_string(q) + " out of range");
  };
  for (auto& [s, a, d] : p.edges) {
    in_range(s);
    in_range(d);
    (void)a;
  }
  for (int q : p.init) in_range(q);
  for (int q : p.acc) in_range(q);
  return p;
}

template <class A>
A build_nondet(const Parsed& p) {
  A r;
  init_nondet(r, p.width, false);
  for (int q = 0; q < p.n; ++q) r.add_state(false);
  for (int q : p.acc) r.acc[q] = 1;
  for (auto& [s, a, d] : p.edges) r.add_edge(s, a, d);
  r.init = p.init;
  return r;
}

}  // namespace

std::string to_text(const Dfa& a) {
  std::ostringstream o;
  o << "dfa width=" << a.width << " states=" << a.n << "\n";
  for (int q = 0; q < a.n; ++q)
    for (int s = 0; s < a.symbols(); ++s) o << q << ' ' << letter_bits(s, a.width, a.lasso) << ' ' << a.next(q, s) << "\n";
  o << "init: " << a.init << "\n";
  o << "acc:";
  for (int q = 0; q < a.n; ++q)
    if (a.acc[q]) o << ' ' << q;
  o << "\n";
  return o.str();
}

std::string to_text(const NondetAutomaton& a, const std::string& kind) {
  std::ostringstream o;
  o << kind << " width=" << a.width << " states=" << a.n << "\n";
  for (int q = 0; q < a.n; ++q)
    for (int s = 0; s < a.symbols(); ++s)
      for (int t : a.succ(q, s)) o << q << ' ' << letter_bits(s, a.width, a.lasso) << ' ' << t << "\n";
  o << "init:";
  for (int q : a.init) o << ' ' << q;
  o << "\nacc:";
  for (int q = 0; q < a.n; ++q)
    if (a.acc[q]) o << ' ' << q;
  o << "\n";
  return o.str();
}

std::string to_json(const Dfa& a) {
  nlohmann::json j;
  j["kind"] = "dfa";
  j["width"] = a.width;
  j["states"] = a.n;
  auto tr = nlohmann::json::array();
  for (int q = 0; q < a.n; ++q)
    for (int s = 0; s < a.symbols(); ++s) tr.push_back({q, letter_bits(s, a.width, a.lasso), a.next(q, s)});
  j["transitions"] = tr;
  j["init"] = {a.init};
  auto acc = nlohmann::json::array();
  for (int q = 0; q < a.n; ++q)
    if (a.acc[q]) acc.push_back(q);
  j["acc"] = acc;
  return j.dump();
}

std::string to_json(const NondetAutomaton& a, const std::string& kind) {
  nlohmann::json j;
  j["kind"] = kind;
  j["width"] = a.width;
  j["states"] = a.n;
  auto tr = nlohmann::json::array();
  for (int q = 0; q < a.n; ++q)
    for (int s = 0; s < a.symbols(); ++s)
      for (int t : a.succ(q, s)) tr.push_back({q, letter_bits(s, a.width, a.lasso), t});
  j["transitions"] = tr;
  j["init"] = a.init;
  auto acc = nlohmann::json::array();
  for (int q = 0; q < a.n; ++q)
    if (a.acc[q]) acc.push_back(q);
  j["acc"] = acc;
  return j.dump();
}

Dfa dfa_from_text(const std::string& text) {
  Parsed p = parse_text(text);
  if (p.kind == "nba") throw UsageError("expected a dfa or nfa, got nba");
  Nfa n = build_nondet<Nfa>(p);
  Dfa d = nfa_determinize(n);
  return p.kind == "dfa" ? dfa_trim_unreachable(d) : dfa_minimize(d);
}

Nba nba_from_text(const std::string& text) {
  Parsed p = parse_text(text);
  if (p.kind != "nba") throw UsageError("expected an nba");
  return build_nondet<Nba>(p);
}

}  // namespace msow
