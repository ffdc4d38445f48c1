// Independent reference computations used to check the library.
#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "msow/automata.hpp"
#include "msow/words.hpp"

namespace oracle {

/// Random Buchi automaton over the binary alphabet.
inline msow::Nba random_nba(std::mt19937& rng, int max_states) {
  msow::Nba a;
  a.width = 1;
  a.n = 1 + static_cast<int>(rng() % max_states);
  a.delta.assign(static_cast<std::size_t>(a.n) * 2, {});
  a.acc.assign(a.n, 0);
  for (int q = 0; q < a.n; ++q) {
    a.acc[q] = rng() % 3 == 0;
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < a.n; ++t)
        if (rng() % 3 == 0) a.succ(q, s).push_back(t);
  }
  a.init.push_back(0);
  if (a.n > 1 && rng() % 2) a.init.push_back(1);
  return a;
}

inline msow::UpWord random_up(std::mt19937& rng, int max_u, int max_v) {
  msow::UpWord w;
  int nu = static_cast<int>(rng() % (max_u + 1)), nv = 1 + static_cast<int>(rng() % max_v);
  for (int i = 0; i < nu; ++i) w.u += msow::letter_char(static_cast<int>(rng() % 2));
  for (int i = 0; i < nv; ++i) w.v += msow::letter_char(static_cast<int>(rng() % 2));
  return w;
}

/// u v^omega in L(a): some state/offset pair reachable after u lies on a cycle
/// of the product with the loop that passes an accepting state.
inline bool nba_accepts_lasso(const msow::Nba& a, const msow::UpWord& w) {
  std::set<int> cur(a.init.begin(), a.init.end());
  for (char c : w.u) {
    std::set<int> next;
    for (int q : cur)
      for (int t : a.succ(q, msow::letter_value(c))) next.insert(t);
    cur = next;
  }
  const int m = static_cast<int>(w.v.size());
  auto node = [&](int q, int i) { return q * m + i; };
  const int total = a.n * m;
  std::vector<std::vector<int>> edges(total);
  for (int q = 0; q < a.n; ++q)
    for (int i = 0; i < m; ++i)
      for (int t : a.succ(q, msow::letter_value(w.v[i]))) edges[node(q, i)].push_back(node(t, (i + 1) % m));
  auto reach = [&](std::vector<int> from) {
    std::vector<char> seen(total, 0);
    while (!from.empty()) {
      int x = from.back();
      from.pop_back();
      for (int y : edges[x])
        if (!seen[y]) {
          seen[y] = 1;
          from.push_back(y);
        }
    }
    return seen;
  };
  std::vector<int> start;
  for (int q : cur) start.push_back(node(q, 0));
  std::vector<char> reachable = reach(start);
  for (int q : cur) reachable[node(q, 0)] = 1;
  for (int x = 0; x < total; ++x) {
    if (!reachable[x] || !a.acc[x / m]) continue;
    if (reach({x})[x]) return true;
  }
  return false;
}

/// Factors of a window long enough to contain every factor up to `len`.
inline std::set<std::string> factors_of(const std::string& window, std::size_t len) {
  std::set<std::string> out;
  for (std::size_t i = 0; i <= window.size(); ++i)
    for (std::size_t l = 0; l <= len && i + l <= window.size(); ++l) out.insert(window.substr(i, l));
  return out;
}

inline bool dfa_member(const msow::Dfa& d, const std::string& w) { return d.accepts(msow::symbols_of(w)); }

/// x^{omega*} y z^omega, positions [from, to).
inline std::string window_of(const msow::BiWord& w, long long from, long long to) {
  std::string out;
  for (long long i = from; i < to; ++i) out += msow::letter_at(w, i);
  return out;
}

/// Minimal p in 1..bound with the word equal to its p-shift on [-span, span).
inline long long window_period(const msow::BiWord& w, long long bound, long long span) {
  for (long long p = 1; p <= bound; ++p) {
    bool ok = true;
    for (long long i = -span; i < span && ok; ++i) ok = msow::letter_at(w, i) == msow::letter_at(w, i + p);
    if (ok) return p;
  }
  return 0;
}

}  // namespace oracle
