#include "msow/words.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "msow/config.hpp"

namespace msow {

namespace {

void check_letters(const FiniteWord& w, int width, const char* what) {
  for (char c : w)
    if (c < '0' || letter_value(c) >= (1 << width))
      throw UsageError(std::string(what) + ": bad letter '" + c + "'");
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

long long lcm_len(long long a, long long b) { return std::lcm(a, b); }

void validate(const UpWord& w) {
  if (w.v.empty()) throw UsageError("omega-word loop must be nonempty");
  check_letters(w.u, w.width, "word");
  check_letters(w.v, w.width, "word");
}

void validate(const BiWord& w) {
  if (w.x.empty() || w.z.empty()) throw UsageError("bi-infinite loops must be nonempty");
  check_letters(w.x, 1, "word");
  check_letters(w.y, 1, "word");
  check_letters(w.z, 1, "word");
}

char letter_at(const FiniteWord& w, long long i) {
  if (i < 0 || i >= static_cast<long long>(w.size())) throw UsageError("position out of range");
  return w[static_cast<std::size_t>(i)];
}

char letter_at(const UpWord& w, long long i) {
  if (i < 0) throw UsageError("omega-word positions are natural numbers");
  long long nu = static_cast<long long>(w.u.size());
  if (i < nu) return w.u[static_cast<std::size_t>(i)];
  return w.v[static_cast<std::size_t>((i - nu) % static_cast<long long>(w.v.size()))];
}

char letter_at(const BiWord& w, long long i) {
  long long ny = static_cast<long long>(w.y.size());
  if (i >= w.origin + ny)
    return w.z[static_cast<std::size_t>((i - w.origin - ny) % static_cast<long long>(w.z.size()))];
  if (i < w.origin) {
    long long nx = static_cast<long long>(w.x.size());
    long long d = w.origin - i;  // >= 1
    return w.x[static_cast<std::size_t>(nx - 1 - (d - 1) % nx)];
  }
  return w.y[static_cast<std::size_t>(i - w.origin)];
}

char letter_at(const GapWord& w, std::uint64_t i) {
  std::uint64_t start = 0;
  for (std::uint64_t k = 0;; ++k) {
    if (i == start) return '1';
    std::uint64_t next = sat_add(sat_add(start, 1), w.gap(k));
    if (i < next) return '0';
    start = next;
  }
}

FiniteWord power(const FiniteWord& w, std::size_t n) {
  FiniteWord out;
  out.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i) out += w;
  return out;
}

FiniteWord prefix(const UpWord& w, std::size_t n) {
  FiniteWord out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out += letter_at(w, static_cast<long long>(i));
  return out;
}

FiniteWord window(const BiWord& w, long long from, long long to) {
  FiniteWord out;
  for (long long i = from; i < to; ++i) out += letter_at(w, i);
  return out;
}

UpWord fold_word(const BiWord& w) {
  validate(w);
  long long n = std::max({w.origin + static_cast<long long>(w.y.size()), -w.origin, 0LL});
  long long period = lcm_len(static_cast<long long>(w.x.size()), static_cast<long long>(w.z.size()));
  auto at = [&](long long i) {
    int right = letter_value(letter_at(w, i));
    int left = letter_value(letter_at(w, -i - 1));
    return letter_char(right | (left << 1));
  };
  UpWord out;
  out.width = 2;
  for (long long i = 0; i < n; ++i) out.u += at(i);
  for (long long i = n; i < n + period; ++i) out.v += at(i);
  return out;
}

BiWord normalize(const BiWord& in) {
  BiWord w = in;
  while (w.origin > 0) {
    w.y.insert(w.y.begin(), w.x.back());
    w.x = w.x.back() + w.x.substr(0, w.x.size() - 1);
    --w.origin;
  }
  // absorb y letters that merely continue the loops
  while (!w.y.empty() && w.origin < 0 && w.y.front() == w.x.front()) {
    w.x = w.x.substr(1) + w.x.front();
    w.y.erase(w.y.begin());
    ++w.origin;
  }
  while (!w.y.empty() && w.y.back() == w.z.back()) {
    w.z = w.z.back() + w.z.substr(0, w.z.size() - 1);
    w.y.pop_back();
  }
  return w;
}

BiWord shift(const BiWord& w, long long p) {
  BiWord out = w;
  out.origin = w.origin - p;
  return normalize(out);
}

FiniteWord reverse(const FiniteWord& w) { return FiniteWord(w.rbegin(), w.rend()); }

BiWord reverse(const BiWord& w) {
  BiWord out;
  out.x = reverse(w.z);
  out.z = reverse(w.x);
  out.y = reverse(w.y);
  out.origin = -w.origin - static_cast<long long>(w.y.size()) + 1;
  return normalize(out);
}

UpWord suffix(const UpWord& w, std::size_t n) {
  UpWord out;
  out.width = w.width;
  std::size_t start = std::max(n, w.u.size());
  for (std::size_t i = n; i < start; ++i) out.u += letter_at(w, static_cast<long long>(i));
  for (std::size_t i = start; i < start + w.v.size(); ++i) out.v += letter_at(w, static_cast<long long>(i));
  return out;
}

UpWord right_half(const BiWord& w, long long n) {
  UpWord out;
  long long start = std::max(n, w.origin + static_cast<long long>(w.y.size()));
  for (long long i = n; i < start; ++i) out.u += letter_at(w, i);
  for (long long i = start; i < start + static_cast<long long>(w.z.size()); ++i) out.v += letter_at(w, i);
  return out;
}

UpWord left_half_reversed(const BiWord& w, long long n) {
  UpWord out;
  long long steps = std::max(0LL, n - w.origin + 1);
  for (long long i = 0; i < steps; ++i) out.u += letter_at(w, n - i);
  for (long long i = steps; i < steps + static_cast<long long>(w.x.size()); ++i) out.v += letter_at(w, n - i);
  return out;
}

bool equal_up(const UpWord& a, const UpWord& b) {
  std::size_t n = std::max(a.u.size(), b.u.size()) +
                  static_cast<std::size_t>(lcm_len(static_cast<long long>(a.v.size()), static_cast<long long>(b.v.size())));
  for (std::size_t i = 0; i < n; ++i)
    if (letter_at(a, static_cast<long long>(i)) != letter_at(b, static_cast<long long>(i))) return false;
  return true;
}

bool equal_bi(const BiWord& a, const BiWord& b) {
  long long lo = std::min(a.origin, b.origin) -
                 lcm_len(static_cast<long long>(a.x.size()), static_cast<long long>(b.x.size()));
  long long hi = std::max(a.origin + static_cast<long long>(a.y.size()), b.origin + static_cast<long long>(b.y.size())) +
                 lcm_len(static_cast<long long>(a.z.size()), static_cast<long long>(b.z.size()));
  for (long long i = lo; i < hi; ++i)
    if (letter_at(a, i) != letter_at(b, i)) return false;
  return true;
}

// ---------------------------------------------------------------- gap words

std::uint64_t alpha_e_phi(const std::function<bool(std::uint64_t)>& member, std::uint64_t i) {
  std::uint64_t seen = 0;
  for (std::uint64_t a = 0;; ++a) {
    if (member(a)) {
      if (seen == i) return 2 * a;
      ++seen;
    }
    if (seen == i) return 2 * a + 1;
    ++seen;
  }
}

GapWord alpha_e_word(std::function<bool(std::uint64_t)> member, const std::string& name) {
  auto phi_cache = std::make_shared<std::vector<std::uint64_t>>();
  auto phi = [member, phi_cache](std::uint64_t i) {
    auto& c = *phi_cache;
    if (c.empty() || c.size() <= i) {
      // regenerate the stage sequence up to index i
      c.clear();
      for (std::uint64_t a = 0; c.size() <= i; ++a) {
        if (member(a)) c.push_back(2 * a);
        c.push_back(2 * a + 1);
      }
    }
    return c[i];
  };
  GapWord g;
  g.name = name;
  g.gap = [phi](std::uint64_t i) {
    std::uint64_t e = phi(i);
    std::uint64_t v = e >= 64 ? kSaturated : (std::uint64_t{1} << e);
    for (std::uint64_t j = 0; j <= i && v != kSaturated; ++j) v = sat_mul(v, 2 * j + 1);
    return v;
  };
  g.gap_mod = [phi](std::uint64_t i, std::uint64_t m) {
    std::uint64_t r = pow_mod(2, phi(i), m);
    for (std::uint64_t j = 0; j <= i; ++j) r = mul_mod(r, (2 * j + 1) % m, m);
    return r;
  };
  return g;
}

GapWord factorial_word() {
  GapWord g;
  g.name = "factorial";
  g.gap = [](std::uint64_t n) {
    std::uint64_t v = 1;
    for (std::uint64_t j = 2; j <= n && v != kSaturated; ++j) v = sat_mul(v, j);
    return v;
  };
  g.gap_mod = [](std::uint64_t n, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    for (std::uint64_t j = 2; j <= n && r != 0; ++j) r = mul_mod(r, j % m, m);
    return r;
  };
  return g;
}

GapWord pow2_word() {
  GapWord g;
  g.name = "pow2";
  g.gap = [](std::uint64_t n) { return n >= 64 ? kSaturated : (std::uint64_t{1} << n); };
  g.gap_mod = [](std::uint64_t n, std::uint64_t m) { return pow_mod(2, n, m); };
  return g;
}

GapWord constant_gap_word(std::uint64_t c) {
  GapWord g;
  g.name = "const:" + std::to_string(c);
  g.gap = [c](std::uint64_t) { return c; };
  g.gap_mod = [c](std::uint64_t, std::uint64_t m) { return c % m; };
  g.certificate = GapCertificate{0, 1};
  return g;
}

GapWord listed_gap_word(std::vector<std::uint64_t> head, std::vector<std::uint64_t> loop) {
  if (loop.empty()) throw UsageError("gap loop must be nonempty");
  GapWord g;
  g.name = "listed";
  auto at = [head, loop](std::uint64_t n) {
    if (n < head.size()) return head[n];
    return loop[(n - head.size()) % loop.size()];
  };
  g.gap = at;
  g.gap_mod = [at](std::uint64_t n, std::uint64_t m) { return at(n) % m; };
  g.certificate = GapCertificate{head.size(), loop.size()};
  return g;
}

std::function<bool(std::uint64_t)> named_predicate(const std::string& name) {
  if (name == "evens") return [](std::uint64_t a) { return a % 2 == 0; };
  if (name == "odds") return [](std::uint64_t a) { return a % 2 == 1; };
  if (name == "all") return [](std::uint64_t) { return true; };
  if (name == "none") return [](std::uint64_t) { return false; };
  if (name == "squares")
    return [](std::uint64_t a) {
      std::uint64_t r = 0;
      while (r * r < a) ++r;
      return r * r == a;
    };
  throw UsageError("unknown predicate " + name);
}

// ---------------------------------------------------------------- literals

namespace {

std::map<std::string, std::string> fields(const std::string& body, char sep) {
  std::map<std::string, std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, sep)) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("word literal: expected key=value in '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

}  // namespace

WordLiteral parse_word(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("word literal needs a kind prefix: " + text);
  std::string kind = text.substr(0, colon);
  std::string body = text.substr(colon + 1);
  if (kind == "fin") {
    check_letters(body, 1, "fin");
    return FiniteWord(body);
  }
  if (kind == "up") {
    auto f = fields(body, ',');
    UpWord w{f["u"], f["v"], 1};
    if (!f.count("v")) throw UsageError("up: missing v");
    validate(w);
    return w;
  }
  if (kind == "bi") {
    auto f = fields(body, '|');
    if (!f.count("x") || !f.count("z")) throw UsageError("bi: missing x or z");
    BiWord w{f["x"], f["y"], f["z"], 0};
    if (f.count("o")) w.origin = std::stoll(f["o"]);
    validate(w);
    return w;
  }
  if (kind == "gap") {
    if (body == "factorial") return factorial_word();
    if (body == "pow2") return pow2_word();
    if (body.rfind("alpha_e:", 0) == 0) {
      std::string pred = body.substr(8);
      return alpha_e_word(named_predicate(pred), "alpha_e:" + pred);
    }
    if (body.rfind("const:", 0) == 0) return constant_gap_word(std::stoull(body.substr(6)));
    throw UsageError("unknown gap word " + body);
  }
  throw UsageError("unknown word kind " + kind);
}

std::string to_string(const UpWord& w) { return "up:u=" + w.u + ",v=" + w.v; }

std::string to_string(const BiWord& w) {
  std::string s = "bi:x=" + w.x + "|y=" + w.y + "|z=" + w.z;
  if (w.origin != 0) s += "|o=" + std::to_string(w.origin);
  return s;
}

}  // namespace msow
