#include "msow/types.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "msow/config.hpp"

namespace msow {

namespace {

struct TypeNode {
  int rank = 0;
  int ncols = 0;
  unsigned somask = 0;      // bit j set: column j is a set column
  std::vector<int> atoms;   // per column (order rank, letter, set-membership mask); -1s when absent
  int absent = -1;          // extension by an empty first-order column
  std::vector<int> fo, so;  // sorted extension types
};

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e3779b9);
    return h;
  }
};

struct Store {
  std::recursive_mutex mu;
  std::vector<TypeNode> nodes;
  std::unordered_map<std::vector<int>, int, VecHash> index;
  std::unordered_map<unsigned long long, int> composed;
  std::map<std::tuple<int, int, unsigned, unsigned, int>, int> singles;
  std::map<std::tuple<int, unsigned, int>, int> empties;
};

Store& store() {
  static Store s;
  return s;
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Nodes and memoized compositions both count against the cap.
void check_table_room(const Store& s) {
  if (s.nodes.size() + s.composed.size() >= config().type_table_cap)
    throw ResourceError("type_table_cap", "more than " + std::to_string(config().type_table_cap) + " table entries");
}

int intern(TypeNode n) {
  Store& s = store();
  std::vector<int> key{n.rank, n.ncols, static_cast<int>(n.somask)};
  key.insert(key.end(), n.atoms.begin(), n.atoms.end());
  key.push_back(n.absent);
  key.push_back(static_cast<int>(n.fo.size()));
  key.insert(key.end(), n.fo.begin(), n.fo.end());
  key.insert(key.end(), n.so.begin(), n.so.end());
  auto it = s.index.find(key);
  if (it != s.index.end()) return it->second;
  check_table_room(s);
  int id = static_cast<int>(s.nodes.size());
  s.nodes.push_back(std::move(n));
  s.index.emplace(std::move(key), id);
  return id;
}

bool is_set_col(unsigned somask, int j) { return (somask >> j & 1) != 0; }

// One-letter word; `bits` marks the columns containing position 0.
int single(int letter, int ncols, unsigned somask, unsigned bits, int k) {
  Store& s = store();
  auto key = std::make_tuple(letter, ncols, somask, bits, k);
  auto it = s.singles.find(key);
  if (it != s.singles.end()) return it->second;
  TypeNode n;
  n.rank = k;
  n.ncols = ncols;
  n.somask = somask;
  for (int j = 0; j < ncols; ++j) {
    if (is_set_col(somask, j)) n.atoms.insert(n.atoms.end(), {0, 0, 0});
    else if (bits >> j & 1) n.atoms.insert(n.atoms.end(), {0, letter, static_cast<int>(bits & somask)});
    else n.atoms.insert(n.atoms.end(), {-1, -1, -1});
  }
  if (k > 0) {
    unsigned nb = 1u << ncols;
    n.absent = single(letter, ncols + 1, somask, bits, k - 1);
    n.fo = {single(letter, ncols + 1, somask, bits | nb, k - 1)};
    n.so = {single(letter, ncols + 1, somask | nb, bits, k - 1), single(letter, ncols + 1, somask | nb, bits | nb, k - 1)};
    sort_unique(n.so);
  }
  int id = intern(std::move(n));
  s.singles.emplace(key, id);
  return id;
}

int empty_node(int ncols, unsigned somask, int k) {
  Store& s = store();
  auto key = std::make_tuple(ncols, somask, k);
  auto it = s.empties.find(key);
  if (it != s.empties.end()) return it->second;
  TypeNode n;
  n.rank = k;
  n.ncols = ncols;
  n.somask = somask;
  for (int j = 0; j < ncols; ++j) {
    if (is_set_col(somask, j)) n.atoms.insert(n.atoms.end(), {0, 0, 0});
    else n.atoms.insert(n.atoms.end(), {-1, -1, -1});
  }
  if (k > 0) {
    n.absent = empty_node(ncols + 1, somask, k - 1);
    n.so = {empty_node(ncols + 1, somask | (1u << ncols), k - 1)};
  }
  int id = intern(std::move(n));
  s.empties.emplace(key, id);
  return id;
}

int distinct_positions(const TypeNode& n) {
  int m = 0;
  for (int j = 0; j < n.ncols; ++j)
    if (!is_set_col(n.somask, j) && n.atoms[3 * j] >= 0) m = std::max(m, n.atoms[3 * j] + 1);
  return m;
}

int compose_ids(int a, int b) {
  Store& s = store();
  unsigned long long key = static_cast<unsigned long long>(a) << 32 | static_cast<unsigned>(b);
  auto it = s.composed.find(key);
  if (it != s.composed.end()) return it->second;
  check_table_room(s);
  // copies: recursive calls may grow the node vector
  TypeNode A = s.nodes[a], B = s.nodes[b];
  if (A.rank != B.rank || A.ncols != B.ncols || A.somask != B.somask) throw UsageError("composing unlike types");
  TypeNode n;
  n.rank = A.rank;
  n.ncols = A.ncols;
  n.somask = A.somask;
  int shift = distinct_positions(A);
  for (int j = 0; j < A.ncols; ++j) {
    const int* x = &A.atoms[3 * j];
    const int* y = &B.atoms[3 * j];
    if (is_set_col(A.somask, j)) n.atoms.insert(n.atoms.end(), {0, 0, 0});
    else if (x[0] >= 0 && y[0] >= 0) throw UsageError("first-order column occupied on both sides");
    else if (x[0] >= 0) n.atoms.insert(n.atoms.end(), {x[0], x[1], x[2]});
    else if (y[0] >= 0) n.atoms.insert(n.atoms.end(), {y[0] + shift, y[1], y[2]});
    else n.atoms.insert(n.atoms.end(), {-1, -1, -1});
  }
  if (n.rank > 0) {
    n.absent = compose_ids(A.absent, B.absent);
    for (int t : A.fo) n.fo.push_back(compose_ids(t, B.absent));
    for (int t : B.fo) n.fo.push_back(compose_ids(A.absent, t));
    sort_unique(n.fo);
    n.so.reserve(A.so.size() * B.so.size());
    for (int x : A.so)
      for (int y : B.so) n.so.push_back(compose_ids(x, y));
    sort_unique(n.so);
  }
  int id = intern(std::move(n));
  s.composed.emplace(key, id);
  return id;
}

// ---------------------------------------------------------------- brute force

struct Column {
  bool set = false;
  std::vector<char> in;
};

int brute(const FiniteWord& w, std::vector<Column>& cols, int k) {
  int ncols = static_cast<int>(cols.size());
  int len = static_cast<int>(w.size());
  TypeNode n;
  n.rank = k;
  n.ncols = ncols;
  for (int j = 0; j < ncols; ++j)
    if (cols[j].set) n.somask |= 1u << j;
  std::vector<int> used;
  for (const auto& c : cols)
    if (!c.set)
      for (int p = 0; p < len; ++p)
        if (c.in[p]) used.push_back(p);
  sort_unique(used);
  for (int j = 0; j < ncols; ++j) {
    if (cols[j].set) {
      n.atoms.insert(n.atoms.end(), {0, 0, 0});
      continue;
    }
    int p = -1;
    for (int i = 0; i < len; ++i)
      if (cols[j].in[i]) p = i;
    if (p < 0) {
      n.atoms.insert(n.atoms.end(), {-1, -1, -1});
      continue;
    }
    int r = static_cast<int>(std::lower_bound(used.begin(), used.end(), p) - used.begin());
    unsigned mask = 0;
    for (int i = 0; i < ncols; ++i)
      if (cols[i].set && cols[i].in[p]) mask |= 1u << i;
    n.atoms.insert(n.atoms.end(), {r, letter_value(w[p]), static_cast<int>(mask)});
  }
  if (k > 0) {
    cols.push_back(Column{false, std::vector<char>(len, 0)});
    n.absent = brute(w, cols, k - 1);
    for (int p = 0; p < len; ++p) {
      cols.back().in.assign(len, 0);
      cols.back().in[p] = 1;
      n.fo.push_back(brute(w, cols, k - 1));
    }
    cols.back().set = true;
    for (unsigned long long m = 0; m < (1ULL << len); ++m) {
      for (int p = 0; p < len; ++p) cols.back().in[p] = (m >> p & 1) ? 1 : 0;
      n.so.push_back(brute(w, cols, k - 1));
    }
    cols.pop_back();
    sort_unique(n.fo);
    sort_unique(n.so);
  }
  return intern(std::move(n));
}

std::vector<Column> columns_of(const FiniteWord& w, const Valuation& nu) {
  std::map<std::string, Column> byname;
  for (const auto& [name, p] : nu.fo) {
    if (p < 0 || p >= static_cast<long long>(w.size())) throw UsageError(name + " outside the word");
    Column c{false, std::vector<char>(w.size(), 0)};
    c.in[p] = 1;
    byname[name] = c;
  }
  for (const auto& [name, set] : nu.so) {
    if (byname.count(name)) throw UsageError(name + " valued twice");
    Column c{true, std::vector<char>(w.size(), 0)};
    for (long long p : set)
      if (p >= 0 && p < static_cast<long long>(w.size())) c.in[p] = 1;
    byname[name] = c;
  }
  std::vector<Column> cols;
  for (auto& [name, c] : byname) cols.push_back(std::move(c));
  return cols;
}

int budget_len(int k) {
  if (k <= 2) return config().ktype_len_k2;
  if (k == 3) return config().ktype_len_k3;
  return 3;
}

KType power_type(KType t, long long n, int k) {
  KType r = empty_type(k);
  for (long long i = 0; i < n; ++i) r = compose(r, t);
  return r;
}

FiniteWord slice(const UpWord& a, long long from, long long to) {
  FiniteWord s;
  for (long long i = from; i < to; ++i) s += letter_at(a, i);
  return s;
}

}  // namespace

KType compose(KType a, KType b) {
  std::lock_guard<std::recursive_mutex> lock(store().mu);
  if (a.rank != b.rank) throw UsageError("composing types of different rank");
  return KType{a.rank, compose_ids(a.id, b.id)};
}

KType empty_type(int k) {
  std::lock_guard<std::recursive_mutex> lock(store().mu);
  return KType{k, empty_node(0, 0, k)};
}

KType ktype(const FiniteWord& w, const Valuation& nu, int k) {
  if (k < 0) throw UsageError("negative rank");
  if (static_cast<int>(w.size()) > budget_len(k))
    throw ResourceError("ktype_budget", "brute-force rank-" + std::to_string(k) + " type of a word of length " +
                                            std::to_string(w.size()) + " (limit " + std::to_string(budget_len(k)) + ")");
  std::lock_guard<std::recursive_mutex> lock(store().mu);
  std::vector<Column> cols = columns_of(w, nu);
  return KType{k, brute(w, cols, k)};
}

KType ktype_composed(const FiniteWord& w, const Valuation& nu, int k) {
  if (k < 0) throw UsageError("negative rank");
  std::lock_guard<std::recursive_mutex> lock(store().mu);
  std::vector<Column> cols = columns_of(w, nu);
  int ncols = static_cast<int>(cols.size());
  unsigned somask = 0;
  for (int j = 0; j < ncols; ++j)
    if (cols[j].set) somask |= 1u << j;
  int t = empty_node(ncols, somask, k);
  for (std::size_t i = 0; i < w.size(); ++i) {
    unsigned bits = 0;
    for (int j = 0; j < ncols; ++j)
      if (cols[j].in[i]) bits |= 1u << j;
    t = compose_ids(t, single(letter_value(w[i]), ncols, somask, bits, k));
  }
  return KType{k, t};
}

KType ktype_composed(const FiniteWord& w, int k) { return ktype_composed(w, Valuation{}, k); }

bool equiv_k(const FiniteWord& u, const FiniteWord& v, int k) { return ktype_composed(u, k) == ktype_composed(v, k); }

bool equiv_k_bruteforce(const FiniteWord& u, const FiniteWord& v, int k) {
  return ktype(u, {}, k) == ktype(v, {}, k);
}

std::size_t type_store_size() {
  std::lock_guard<std::recursive_mutex> lock(store().mu);
  return store().nodes.size() + store().composed.size();
}

std::string describe(KType t) {
  std::lock_guard<std::recursive_mutex> lock(store().mu);
  const TypeNode& n = store().nodes.at(t.id);
  std::string s = "rank " + std::to_string(n.rank) + " id " + std::to_string(t.id);
  if (n.rank > 0)
    s += ", " + std::to_string(n.fo.size()) + " point extensions, " + std::to_string(n.so.size()) + " set extensions";
  return s;
}

UnaryClassification unary_classify(int k) {
  KType zero = ktype_composed("0", k);
  std::map<int, long long> seen;
  KType cur = empty_type(k);
  for (long long n = 0; n <= config().unary_search_cap; ++n) {
    auto it = seen.find(cur.id);
    if (it != seen.end()) {
      UnaryClassification c;
      c.k = k;
      c.t = std::max<long long>(it->second, 1);
      c.p = n - it->second;
      c.l = c.t * c.p;
      if (power_type(zero, c.l, k) != power_type(zero, 2 * c.l, k))
        throw PropertyError("unary classification failed its idempotency check");
      return c;
    }
    seen.emplace(cur.id, n);
    cur = compose(cur, zero);
  }
  throw ResourceError("unary_search_cap", "no repetition among 0^n for n <= " + std::to_string(config().unary_search_cap));
}

long long idempotent_exponent(const FiniteWord& v, int k) {
  if (v.empty()) throw UsageError("empty loop");
  KType t = ktype_composed(v, k);
  KType p = t;
  for (long long b = 1; b <= config().unary_search_cap; ++b) {
    if (compose(p, p) == p) return b;
    p = compose(p, t);
  }
  throw ResourceError("unary_search_cap", "no idempotent power of " + v + " up to " +
                                              std::to_string(config().unary_search_cap));
}

bool check_representative_up(const RepresentativeUp& r, int k) {
  KType x = ktype_composed(r.x, k), y = ktype_composed(r.y, k);
  return !r.x.empty() && !r.y.empty() && compose(x, y) == x && compose(y, y) == y;
}

bool check_representative_bi(const RepresentativeBi& r, int k) {
  KType x = ktype_composed(r.x, k), y = ktype_composed(r.y, k), z = ktype_composed(r.z, k);
  return !r.x.empty() && !r.y.empty() && !r.z.empty() && compose(x, y) == y && compose(y, z) == y &&
         compose(x, x) == x && compose(z, z) == z;
}

RepresentativeUp representative_up(const UpWord& a, int k) {
  validate(a);
  RepresentativeUp r;
  r.exponent = idempotent_exponent(a.v, k);
  r.y = power(a.v, r.exponent);
  r.x = a.u + r.y;
  if (!check_representative_up(r, k)) throw PropertyError("representative failed its checks");
  return r;
}

RepresentativeBi representative_bi(const BiWord& a, int k) {
  validate(a);
  RepresentativeBi r;
  r.left_exponent = idempotent_exponent(a.x, k);
  r.right_exponent = idempotent_exponent(a.z, k);
  r.x = power(a.x, r.left_exponent);
  r.z = power(a.z, r.right_exponent);
  r.y = r.x + a.y + r.z;
  if (!check_representative_bi(r, k)) throw PropertyError("representative failed its checks");
  return r;
}

// h_i = |u| + |v| (i+1) prod_{j<=min(i,K)} b_j: the factor (i+1) keeps the
// positions strictly increasing when exponents are 1, and the product makes the
// gaps from index k on multiples of b_k. Rank K+1 is never needed.
HomogeneousUp uniformly_homogeneous_up(const UpWord& a, int K) {
  validate(a);
  HomogeneousUp h;
  long long prod = 1;
  for (int i = 0; i <= K + 1; ++i) {
    if (i <= K) {
      long long b = idempotent_exponent(a.v, i);
      h.exponents.push_back(b);
      prod *= b;
    }
    h.positions.push_back(static_cast<long long>(a.u.size()) + static_cast<long long>(a.v.size()) * (i + 1) * prod);
  }
  for (int k = 0; k <= K; ++k)
    h.witness.emplace_back(ktype_composed(slice(a, 0, h.positions[k]), k),
                           ktype_composed(slice(a, h.positions[k], h.positions[k + 1]), k));
  if (!verify_homogeneous_up(a, h.positions, K)) throw PropertyError("homogeneous set failed verification");
  return h;
}

bool verify_homogeneous_up(const UpWord& a, const std::vector<long long>& h, int K) {
  if (h.empty() || h[0] < 1) return false;
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i] <= h[i - 1]) return false;
  for (int k = 0; k <= K && k < static_cast<int>(h.size()); ++k) {
    KType pre = ktype_composed(slice(a, 0, h[k]), k);
    for (std::size_t i = k + 1; i < h.size(); ++i)
      if (ktype_composed(slice(a, 0, h[i]), k) != pre) return false;
    if (static_cast<std::size_t>(k) + 1 >= h.size()) continue;
    KType seg = ktype_composed(slice(a, h[k], h[k + 1]), k);
    for (std::size_t i = k; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j)
        if (ktype_composed(slice(a, h[i], h[j]), k) != seg) return false;
  }
  return true;
}

HomogeneousBi uniformly_homogeneous_bi(const BiWord& a, int K) {
  validate(a);
  HomogeneousBi h;
  long long px = 1, pz = 1;
  long long end = a.origin + static_cast<long long>(a.y.size());
  for (int i = 0; i <= K + 1; ++i) {
    if (i <= K) {
      long long b = idempotent_exponent(a.x, i), c = idempotent_exponent(a.z, i);
      h.left_exponents.push_back(b);
      h.right_exponents.push_back(c);
      px *= b;
      pz *= c;
    }
    h.left.push_back(a.origin - static_cast<long long>(a.x.size()) * (i + 1) * px);
    h.right.push_back(end + static_cast<long long>(a.z.size()) * (i + 1) * pz);
  }
  for (int k = 0; k <= K; ++k)
    h.witness.emplace_back(ktype_composed(window(a, h.left[k + 1], h.left[k]), k),
                           ktype_composed(window(a, h.left[k], h.right[k]), k),
                           ktype_composed(window(a, h.right[k], h.right[k + 1]), k));
  if (!verify_homogeneous_bi(a, h.left, h.right, K)) throw PropertyError("homogeneous pair failed verification");
  return h;
}

bool verify_homogeneous_bi(const BiWord& a, const std::vector<long long>& left, const std::vector<long long>& right,
                           int K) {
  if (left.empty() || right.empty()) return false;
  for (std::size_t i = 1; i < left.size(); ++i)
    if (left[i] >= left[i - 1]) return false;
  for (std::size_t i = 1; i < right.size(); ++i)
    if (right[i] <= right[i - 1]) return false;
  if (left[0] >= right[0]) return false;
  for (int k = 0; k <= K; ++k) {
    std::vector<KType> ls, ms, rs;
    for (std::size_t i = k; i < left.size(); ++i)
      for (std::size_t j = i + 1; j < left.size(); ++j) ls.push_back(ktype_composed(window(a, left[j], left[i]), k));
    for (std::size_t i = k; i < left.size(); ++i)
      for (std::size_t j = k; j < right.size(); ++j) ms.push_back(ktype_composed(window(a, left[i], right[j]), k));
    for (std::size_t i = k; i < right.size(); ++i)
      for (std::size_t j = i + 1; j < right.size(); ++j) rs.push_back(ktype_composed(window(a, right[i], right[j]), k));
    for (auto* v : {&ls, &ms, &rs})
      for (const auto& t : *v)
        if (t != v->front()) return false;
  }
  return true;
}

TypeFunctionUp type_function_up(const UpWord& a) {
  validate(a);
  return [a](int k) {
    RepresentativeUp r = representative_up(a, k);
    return std::make_pair(r.x, r.y);
  };
}

TypeFunctionBi type_function_bi(const BiWord& a) {
  validate(a);
  return [a](int k) {
    RepresentativeBi r = representative_bi(a, k);
    return std::make_tuple(r.x, r.y, r.z);
  };
}

}  // namespace msow
