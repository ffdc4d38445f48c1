#include "msow/biinf.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "msow/config.hpp"

namespace msow {

namespace {

FiniteWord word_of(const std::vector<int>& symbols) {
  FiniteWord w;
  for (int s : symbols) w += letter_char(s);
  return w;
}

Dfa periodic_factors(const FiniteWord& loop) { return factor_automaton(UpWord{"", loop, 1}); }

std::optional<Dfa> recurrent_factors(const Presentation& p) {
  if (const auto* d = std::get_if<Dfa>(&p)) return dfa_minimize(*d);
  const BiWord& b = std::get<BiWord>(p);
  if (!is_recurrent(b)) return std::nullopt;
  return factor_automaton(b);
}

int run_from(const Dfa& d, int q, const FiniteWord& w) {
  for (char c : w) q = d.next(q, letter_value(c));
  return q;
}

// States from which reading `w` ends in an accepting state.
std::vector<char> accepting_before(const Dfa& d, const FiniteWord& w) {
  std::vector<char> out(d.n, 0);
  for (int q = 0; q < d.n; ++q) out[q] = d.acc[run_from(d, q, w)];
  return out;
}

// Following the unique accepting successor from q never branches or stops.
bool unique_future(const Dfa& d, int q) {
  if (!d.acc[q]) return false;
  std::vector<char> seen(d.n, 0);
  while (!seen[q]) {
    seen[q] = 1;
    int next = -1, count = 0;
    for (int a = 0; a < 2; ++a)
      if (d.acc[d.next(q, a)]) {
        next = d.next(q, a);
        ++count;
      }
    if (count != 1) return false;
    q = next;
  }
  return true;
}

Dfa reversed(const Dfa& d) { return dfa_minimize(nfa_determinize(nfa_reverse(dfa_to_nfa(d)))); }

void require_factorial(const Dfa& lang) {
  if (lang.width != 1 || lang.lasso) throw UsageError("a plain binary language is required");
  if (!factorial_check(lang)) throw PropertyError("language is not factorial");
}

// Shortest word leading from `from` into a state with `good`, least first.
std::optional<FiniteWord> shortest_path(const Dfa& d, int from, const std::function<bool(int)>& good) {
  std::vector<int> parent(d.n, -2), via(d.n, -1);
  std::queue<int> queue;
  parent[from] = -1;
  queue.push(from);
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop();
    if (good(q)) {
      FiniteWord w;
      for (int s = q; parent[s] >= 0; s = parent[s]) w += letter_char(via[s]);
      return reverse(w);
    }
    for (int a = 0; a < 2; ++a) {
      int t = d.next(q, a);
      if (parent[t] == -2 && d.acc[t]) {
        parent[t] = q;
        via[t] = a;
        queue.push(t);
      }
    }
  }
  return std::nullopt;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

FiniteWord binary(std::uint64_t value, std::size_t len) {
  FiniteWord w(len, '0');
  for (std::size_t i = 0; i < len; ++i)
    if (value >> (len - 1 - i) & 1) w[i] = '1';
  return w;
}

// ---------------------------------------------------------------- searches

// The first `count` words x of length `len`, in enumeration order, for which
// the full word (x placed at `at` inside a word of length `total`) is in L.
// DFA mode walks from `start` and needs to end in `target`; otherwise `ok`
// tests candidates one by one.
struct MiddleSearch {
  const Enumeration* f = nullptr;
  std::size_t at = 0;
  std::size_t outer = 0;  // letters outside x
  const Dfa* dfa = nullptr;
  int start = 0;
  std::vector<char> target;
  std::function<bool(const FiniteWord&)> ok;

  std::vector<FiniteWord> first(std::size_t len, std::size_t count) const {
    std::vector<FiniteWord> out;
    std::size_t total = outer + len;
    auto letter_rank = [&](std::size_t i, int r) { return r ^ (f->mask_bit(total, at + i) ? 1 : 0); };
    if (dfa) {
      // viable[r]: states that reach target in exactly r letters
      std::vector<std::vector<char>> viable(len + 1, std::vector<char>(dfa->n, 0));
      viable[0] = target;
      for (std::size_t r = 1; r <= len; ++r)
        for (int q = 0; q < dfa->n; ++q)
          viable[r][q] = viable[r - 1][dfa->next(q, 0)] || viable[r - 1][dfa->next(q, 1)];
      if (!viable[len][start]) return out;
      FiniteWord x(len, '0');
      std::function<void(std::size_t, int)> dfs = [&](std::size_t i, int q) {
        if (out.size() >= count) return;
        if (i == len) {
          out.push_back(x);
          return;
        }
        for (int r = 0; r < 2; ++r) {
          int a = letter_rank(i, r);
          int t = dfa->next(q, a);
          if (!viable[len - i - 1][t]) continue;
          x[i] = letter_char(a);
          dfs(i + 1, t);
        }
      };
      dfs(0, start);
      return out;
    }
    if (len > 22) throw ResourceError("extension_len_cap", "membership search beyond length 22");
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << len) && out.size() < count; ++k) {
      FiniteWord x(len, '0');
      for (std::size_t i = 0; i < len; ++i) x[i] = letter_char(letter_rank(i, static_cast<int>(k >> (len - 1 - i) & 1)));
      if (ok(x)) out.push_back(x);
    }
    return out;
  }

  FiniteWord least() const {
    for (int len = 0; len <= config().extension_len_cap; ++len) {
      auto w = first(static_cast<std::size_t>(len), 1);
      if (!w.empty()) return w.front();
    }
    throw ResourceError("extension_len_cap", "no extension within " + std::to_string(config().extension_len_cap) +
                                                 " letters");
  }

  std::pair<FiniteWord, FiniteWord> least_pair() const {
    for (int len = 1; len <= config().extension_len_cap; ++len) {
      auto w = first(static_cast<std::size_t>(len), 2);
      if (w.size() == 2) return {w[0], w[1]};
    }
    throw ResourceError("extension_len_cap", "no branching extension within " +
                                                 std::to_string(config().extension_len_cap) + " letters");
  }
};

// ---------------------------------------------------------------- embedding

class Embedder {
public:
  Embedder(const Language& lang, std::uint64_t seed) : f_(lang, seed), d_(*lang.dfa) {
    FiniteWord w0 = f_(0);
    MiddleSearch s = search(w0.size(), w0.size() * 2);
    s.start = run_from(d_, d_.init, w0);
    s.target = accepting_before(d_, w0);
    FiniteWord y0 = s.least();
    state_.tuples.push_back(EmbeddingTuple{"", "", "", y0, w0});
    state_.left = w0 + y0;
    state_.right = w0;
  }

  void advance(bool in_set) {
    const std::size_t s = state_.tuples.size() - 1;
    FiniteWord z = state_.word();
    FiniteWord w = f_(s + 1);
    EmbeddingTuple t;
    t.w = w;
    {
      MiddleSearch m = search(z.size(), z.size());
      m.start = run_from(d_, d_.init, z);
      m.target = d_.acc;
      auto [k, l] = m.least_pair();
      t.u = in_set ? k : l;
    }
    {
      MiddleSearch m = search(z.size() + t.u.size(), z.size() + t.u.size() + w.size());
      m.start = run_from(d_, d_.init, z + t.u);
      m.target = accepting_before(d_, w);
      t.x = m.least();
    }
    FiniteWord zr = z + t.u + t.x + w;
    {
      MiddleSearch m = search(0, zr.size());
      m.start = d_.init;
      m.target = accepting_before(d_, zr);
      auto [k, l] = m.least_pair();
      t.v = in_set ? k : l;
    }
    {
      MiddleSearch m = search(w.size(), w.size() + t.v.size() + zr.size());
      m.start = run_from(d_, d_.init, w);
      m.target = accepting_before(d_, t.v + zr);
      t.y = m.least();
    }
    state_.left = w + t.y + t.v + state_.left;
    state_.right += t.u + t.x + w;
    state_.bits += in_set ? '1' : '0';
    state_.tuples.push_back(t);
  }

  const EmbeddingState& state() const { return state_; }
  void reset(EmbeddingState s) { state_ = std::move(s); }

private:
  MiddleSearch search(std::size_t at, std::size_t outer) {
    MiddleSearch m;
    m.f = &f_;
    m.at = at;
    m.outer = outer;
    m.dfa = &d_;
    return m;
  }

  Enumeration f_;
  Dfa d_;
  EmbeddingState state_;
};

void require_embeddable(const Language& lang) {
  if (!lang.dfa) throw UsageError("oracle embedding needs a regular language");
  LanguageConditions c = check_conditions(lang);
  if (!c.all()) throw PropertyError("not the factor language of a recurrent word: " + c.first_failure());
  if (auto w = has_determining_word(*lang.dfa))
    throw PropertyError("language has the determining word " + *w + ", so its recurrent words are periodic");
}

}  // namespace

// ---------------------------------------------------------------- basic analysis

bool is_recurrent(const BiWord& a) {
  validate(a);
  Dfa f = factor_automaton(a);
  return dfa_subset(f, periodic_factors(a.x)) && dfa_subset(f, periodic_factors(a.z));
}

std::optional<long long> period(const BiWord& a) {
  validate(a);
  long long n = static_cast<long long>(a.x.size());
  if (!equal_bi(shift(a, n), a)) return std::nullopt;
  for (long long d = 1; d <= n; ++d)
    if (n % d == 0 && equal_bi(shift(a, d), a)) return d;
  return n;
}

long long shift_search_bound(const BiWord& a, const BiWord& b) {
  auto len = [](const FiniteWord& w) { return static_cast<long long>(w.size()); };
  return len(a.y) + len(b.y) + lcm_len(len(a.x), len(b.x)) + lcm_len(len(a.z), len(b.z)) + std::llabs(a.origin) +
         std::llabs(b.origin);
}

std::optional<long long> shift_equivalent(const BiWord& a, const BiWord& b) {
  validate(a);
  validate(b);
  long long bound = shift_search_bound(a, b);
  for (long long d = 0; d <= bound; ++d) {
    if (equal_bi(shift(a, d), b)) return d;
    if (d > 0 && equal_bi(shift(a, -d), b)) return -d;
  }
  return std::nullopt;
}

bool mso_equivalent(const Presentation& a, const Presentation& b) {
  if (std::holds_alternative<BiWord>(a) && std::holds_alternative<BiWord>(b) &&
      shift_equivalent(std::get<BiWord>(a), std::get<BiWord>(b)))
    return true;
  auto fa = recurrent_factors(a), fb = recurrent_factors(b);
  return fa && fb && dfa_equivalent(*fa, *fb);
}

std::string EquivalenceClassReport::describe() const {
  switch (kind) {
    case ClassKind::Periodic:
      return "periodic (period " + std::to_string(period) + "); class cardinality " + cardinality;
    case ClassKind::NonRecurrent: return "non-recurrent; class cardinality " + cardinality;
    case ClassKind::RecurrentNonPeriodic: return "recurrent, not periodic; class cardinality " + cardinality;
  }
  return "";
}

EquivalenceClassReport classify(const Presentation& p) {
  EquivalenceClassReport r;
  if (const auto* b = std::get_if<BiWord>(&p)) {
    if (is_recurrent(*b)) {
      auto per = period(*b);
      if (!per) throw PropertyError("recurrent ultimately periodic word without a period: " + to_string(*b));
      r.kind = ClassKind::Periodic;
      r.period = *per;
      r.cardinality = std::to_string(*per);
      return r;
    }
    r.kind = ClassKind::NonRecurrent;
    r.cardinality = "aleph0";
    Dfa f = factor_automaton(*b);
    for (const FiniteWord* loop : {&b->x, &b->z}) {
      auto w = dfa_shortest_word(dfa_product(f, periodic_factors(*loop), BoolOp::Diff));
      if (w && (!r.witness || w->size() < r.witness->size())) r.witness = word_of(*w);
    }
    return r;
  }
  const Dfa lang = dfa_minimize(std::get<Dfa>(p));
  LanguageConditions c = check_conditions(language_of(lang, "L"));
  if (!c.all()) throw PropertyError("not the factor language of a recurrent word: " + c.first_failure());
  auto u = has_determining_word(lang);
  if (!u) {
    r.kind = ClassKind::RecurrentNonPeriodic;
    r.cardinality = "continuum";
    return r;
  }
  // the unique right extension of a determining word runs into the period
  int q = run_from(lang, lang.init, *u);
  std::vector<int> first_seen(lang.n, -1);
  FiniteWord letters;
  while (first_seen[q] < 0) {
    first_seen[q] = static_cast<int>(letters.size());
    int a = lang.acc[lang.next(q, 0)] ? 0 : 1;
    letters += letter_char(a);
    q = lang.next(q, a);
  }
  FiniteWord cycle = letters.substr(first_seen[q]);
  long long n = static_cast<long long>(cycle.size()), per = n;
  for (long long d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (long long i = 0; i < n && ok; ++i) ok = cycle[i] == cycle[(i + d) % n];
    if (ok) {
      per = d;
      break;
    }
  }
  r.kind = ClassKind::Periodic;
  r.period = per;
  r.cardinality = std::to_string(per);
  r.witness = u;
  return r;
}

std::vector<BiWord> enumerate_class(const BiWord& a) {
  auto p = period(a);
  if (!p) throw UsageError("enumerate_class needs a periodic word");
  std::vector<BiWord> out;
  for (long long i = 0; i < *p; ++i) out.push_back(normalize(shift(a, i)));
  return out;
}

std::string to_string(Determining d) {
  switch (d) {
    case Determining::Neither: return "neither";
    case Determining::Left: return "left";
    case Determining::Right: return "right";
    case Determining::Both: return "both";
  }
  return "";
}

Determining determining_check(const Dfa& lang, const FiniteWord& u) {
  require_factorial(lang);
  Dfa m = dfa_minimize(lang);
  Dfa r = reversed(m);
  bool right = unique_future(m, run_from(m, m.init, u));
  bool left = unique_future(r, run_from(r, r.init, reverse(u)));
  if (left && right) return Determining::Both;
  if (left) return Determining::Left;
  if (right) return Determining::Right;
  return Determining::Neither;
}

std::optional<FiniteWord> has_determining_word(const Dfa& lang) {
  require_factorial(lang);
  Dfa m = dfa_minimize(lang);
  Dfa r = reversed(m);
  auto right = shortest_path(m, m.init, [&](int q) { return unique_future(m, q); });
  auto left_rev = shortest_path(r, r.init, [&](int q) { return unique_future(r, q); });
  if (!right || !left_rev) return std::nullopt;
  FiniteWord left = reverse(*left_rev);
  std::vector<char> before = accepting_before(m, *right);
  auto link = shortest_path(m, run_from(m, m.init, left), [&](int q) { return before[q] != 0; });
  if (!link) return std::nullopt;
  FiniteWord u = left + *link + *right;
  if (determining_check(m, u) != Determining::Both) return std::nullopt;
  return u;
}

// ---------------------------------------------------------------- languages

Language language_of(const Dfa& d, const std::string& name) {
  if (d.width != 1 || d.lasso) throw UsageError("a plain binary language is required");
  Language l;
  l.name = name;
  Dfa m = dfa_minimize(d);
  l.dfa = m;
  l.member = [m](const FiniteWord& w) { return m.accepts(symbols_of(w)); };
  return l;
}

Language all_words() { return language_of(dfa_universal(1), "all"); }

Language golden_mean() {
  Dfa d;
  d.width = 1;
  d.n = 3;
  d.delta = {0, 1, 0, 2, 2, 2};
  d.acc = {1, 1, 0};
  return language_of(d, "golden-mean");
}

Language alternating_factors() { return language_of(periodic_factors("01"), "alternating"); }

Language gap_pair_language(std::function<std::uint64_t(std::uint64_t)> f, const std::string& name) {
  Language l;
  l.name = name;
  l.local_ones = 3;
  l.member = [f](const FiniteWord& w) {
    std::vector<std::size_t> ones;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] == '1') ones.push_back(i);
    for (std::size_t k = 0; k + 2 < ones.size(); ++k) {
      std::size_t a = ones[k + 1] - ones[k] - 1, b = ones[k + 2] - ones[k + 1] - 1;
      if (a % 2 == 1 && b % 2 == 0 && f((a - 1) / 2) != b / 2) return false;
    }
    return true;
  };
  return l;
}

Formula pair_block_sentence(std::uint64_t j) {
  int last = static_cast<int>(2 * j + 1);
  Formula gap_free = forall_fo("z", implies(conj(lt("x", "z"), lt("z", "y")), neg(letter("z"))));
  Formula body = conj(letter("x"), conj(lt("x", "y"), conj(letter("y"), gap_free)));
  body = conj(body, exists_fo("w", conj(macro_succ("x", "w"), neg(macro_divides(2, "w", "y")))));
  for (int k = 1; k < last; ++k) body = conj(body, neg(macro_letter_at_plus("y", k)));
  body = conj(body, macro_letter_at_plus("y", last));
  return exists_fo("x", exists_fo("y", body));
}

std::string LanguageConditions::first_failure() const {
  if (!nonempty_word) return "(a) no nonempty word";
  if (!factorial) return "(b) not closed under factors";
  if (!extendable) return "(c) extension condition fails";
  return "none";
}

LanguageConditions check_conditions(const Language& lang) {
  LanguageConditions c;
  if (lang.dfa) {
    c.exact = true;
    c.nonempty_word = has_nonempty_word(*lang.dfa);
    c.factorial = factorial_check(*lang.dfa);
    c.extendable = c.factorial && extension_check(*lang.dfa);
    return c;
  }
  // bounded checks for languages given by membership only
  std::vector<FiniteWord> members;
  c.factorial = true;
  for (std::size_t len = 0; len <= 10; ++len)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << len); ++k) {
      FiniteWord w = binary(k, len);
      if (!lang.member(w)) continue;
      if (len > 0) {
        c.nonempty_word = true;
        if (!lang.member(w.substr(1)) || !lang.member(w.substr(0, len - 1))) c.factorial = false;
      }
      if (len <= 4) members.push_back(w);
    }
  c.extendable = true;
  for (const auto& u : members)
    for (const auto& w : members) {
      bool ok = false;
      for (std::size_t len = 0; len <= 8 && !ok; ++len)
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << len) && !ok; ++k) ok = lang.member(u + binary(k, len) + w);
      if (!ok) c.extendable = false;
    }
  return c;
}

Enumeration::Enumeration(Language lang, std::uint64_t seed) : lang_(std::move(lang)), seed_(seed) {}

bool Enumeration::mask_bit(std::size_t len, std::size_t pos) const {
  if (seed_ == 0) return false;
  return (splitmix(seed_ ^ splitmix(len * 0x100000001b3ULL + pos)) & 1) != 0;
}

const FiniteWord& Enumeration::operator()(std::size_t i) {
  const auto& d = lang_.dfa;
  if (d && live_.empty()) {
    live_ = d->acc;
    for (bool grew = true; grew;) {
      grew = false;
      for (int q = 0; q < d->n; ++q)
        if (!live_[q] && (live_[d->next(q, 0)] || live_[d->next(q, 1)])) live_[q] = grew = true;
    }
    if (live_[d->init]) frontier_.emplace_back("", d->init);
  }
  while (words_.size() <= i) {
    std::size_t len = next_len_++;
    std::vector<std::pair<FiniteWord, FiniteWord>> block;  // (order key, word)
    auto add = [&](const FiniteWord& w) {
      FiniteWord key = w;
      for (std::size_t p = 0; p < len; ++p)
        if (mask_bit(len, p)) key[p] = key[p] == '0' ? '1' : '0';
      block.emplace_back(std::move(key), w);
    };
    if (d) {
      if (frontier_.empty()) throw ResourceError("enumeration", "language " + lang_.name + " is finite");
      if (len > 0) {
        std::vector<std::pair<FiniteWord, int>> next;
        for (const auto& [w, q] : frontier_)
          for (int a = 0; a < 2; ++a)
            if (int r = d->next(q, a); live_[r]) next.emplace_back(w + static_cast<char>('0' + a), r);
        frontier_ = std::move(next);
      }
      for (const auto& [w, q] : frontier_)
        if (d->acc[q]) add(w);
    } else {
      if (len > 40) throw ResourceError("enumeration", "language " + lang_.name + " has fewer words than requested");
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << len); ++k) {
        FiniteWord w = binary(k, len);
        if (lang_.member(w)) add(w);
      }
    }
    std::sort(block.begin(), block.end());
    for (auto& kw : block) words_.push_back(std::move(kw.second));
  }
  return words_[i];
}

// ---------------------------------------------------------------- realizer

RealizerStream::RealizerStream(Language lang, std::uint64_t seed) : f_(std::move(lang), seed) {
  LanguageConditions c = check_conditions(f_.language());
  if (!c.all()) throw PropertyError("language " + f_.language().name + " fails " + c.first_failure());
  right_ = f_(0);
  if (const auto& d = f_.language().dfa) {
    transform_.resize(d->n);
    for (int q = 0; q < d->n; ++q) transform_[q] = run_from(*d, q, right_);
  }
}

FiniteWord RealizerStream::head(std::size_t ones) const {
  FiniteWord out;
  std::size_t seen = 0;
  auto take = [&](char c) {
    if (seen >= ones) return false;
    out += c;
    if (c == '1') ++seen;
    return true;
  };
  for (auto it = left_.rbegin(); it != left_.rend(); ++it)
    if (!take(*it)) return out;
  for (char c : right_)
    if (!take(c)) return out;
  return out;
}

FiniteWord RealizerStream::tail(std::size_t ones) const {
  FiniteWord out;
  std::size_t seen = 0;
  auto take = [&](char c) {
    if (seen >= ones) return false;
    out += c;
    if (c == '1') ++seen;
    return true;
  };
  bool done = false;
  for (auto it = right_.rbegin(); it != right_.rend() && !done; ++it) done = !take(*it);
  for (auto it = left_.begin(); it != left_.end() && !done; ++it) done = !take(*it);
  return reverse(out);
}

BiPrefix RealizerStream::current() const { return BiPrefix{reverse(left_) + right_, static_cast<long long>(left_.size())}; }

void RealizerStream::step() {
  const Language& lang = f_.language();
  FiniteWord u = f_(steps_ + 1);
  std::size_t wlen = length();
  std::size_t ones = static_cast<std::size_t>(lang.local_ones);

  MiddleSearch left;
  left.f = &f_;
  left.at = u.size();
  left.outer = u.size() + wlen;
  if (lang.dfa) {
    const Dfa& d = *lang.dfa;
    left.dfa = &d;
    left.start = run_from(d, d.init, u);
    left.target.assign(d.n, 0);
    for (int q = 0; q < d.n; ++q) left.target[q] = d.acc[transform_[q]];
  } else if (ones > 0) {
    FiniteWord h = head(ones);
    left.ok = [&, h](const FiniteWord& x) { return lang.member(u + x + h); };
  } else {
    BiPrefix cur = current();
    left.ok = [&, cur](const FiniteWord& x) { return lang.member(u + x + cur.word); };
  }
  FiniteWord x = left.least();
  left_ += reverse(u + x);

  MiddleSearch right;
  right.f = &f_;
  right.at = length();
  right.outer = length() + u.size();
  if (lang.dfa) {
    const Dfa& d = *lang.dfa;
    right.dfa = &d;
    right.start = transform_[run_from(d, d.init, u + x)];
    right.target = accepting_before(d, u);
  } else if (ones > 0) {
    FiniteWord t = tail(ones);
    right.ok = [&, t](const FiniteWord& y) { return lang.member(t + y + u); };
  } else {
    BiPrefix cur = current();
    right.ok = [&, cur](const FiniteWord& y) { return lang.member(cur.word + y + u); };
  }
  FiniteWord y = right.least();
  right_ += y + u;

  if (lang.dfa) {
    const Dfa& d = *lang.dfa;
    std::vector<int> next(d.n);
    for (int q = 0; q < d.n; ++q) next[q] = run_from(d, transform_[run_from(d, q, u + x)], y + u);
    transform_ = std::move(next);
  }
  ++steps_;
}

// ---------------------------------------------------------------- rich words

FiniteWord rich_segment(std::size_t i) {
  std::size_t len = 0;
  while (i + 1 >= (std::size_t{2} << len)) ++len;
  return binary(i + 1 - (std::size_t{1} << len), len);
}

BiPrefix rich_word_prefix(std::size_t s) {
  BiPrefix p;
  FiniteWord right;
  for (std::size_t i = s; i >= 1; --i) p.word += rich_segment(i);
  for (std::size_t i = 0; i <= s; ++i) right += rich_segment(i);
  p.origin = static_cast<long long>(p.word.size());
  p.word += right;
  return p;
}

FiniteWord interleave_with_oracle(const OracleBits& a, std::size_t segments) {
  FiniteWord beta;
  for (std::size_t i = 0; i < segments; ++i) {
    beta += i < a.size() ? a[i] : '0';
    beta += rich_segment(i);
  }
  return beta;
}

OracleBits decode_interleaved(const FiniteWord& beta, std::size_t n) {
  OracleBits out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pos >= beta.size()) throw UsageError("interleaved word too short");
    out += beta[pos];
    pos += 1 + rich_segment(i).size();
  }
  return out;
}

// ---------------------------------------------------------------- oracle embedding

EmbeddingState embed_oracle(const Language& lang, const OracleBits& a, std::uint64_t seed) {
  require_embeddable(lang);
  Embedder e(lang, seed);
  for (char c : a) e.advance(c == '1');
  return e.state();
}

OracleBits decode_oracle(const Language& lang, const FiniteWord& right_half, std::size_t n, std::uint64_t seed) {
  require_embeddable(lang);
  Embedder e(lang, seed);
  OracleBits out;
  for (std::size_t s = 0; s < n; ++s) {
    EmbeddingState before = e.state();
    e.advance(true);
    const FiniteWord& guess = e.state().right;
    if (guess.size() <= right_half.size() && right_half.compare(0, guess.size(), guess) == 0) {
      out += '1';
      continue;
    }
    e.reset(before);
    e.advance(false);
    if (e.state().right.size() > right_half.size() ||
        right_half.compare(0, e.state().right.size(), e.state().right) != 0)
      throw UsageError("stream does not follow the embedding construction at step " + std::to_string(s));
    out += '0';
  }
  return out;
}

}  // namespace msow
