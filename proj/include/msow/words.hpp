// Finitely presented words over bit-vector letters.
//
// Letters are stored as characters '0' + bits; for the plain binary alphabet
// that is just '0'/'1'. Folded words use width 2 ('0'..'3', bit 0 is the
// right half, bit 1 the left half).
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace msow {

using FiniteWord = std::string;
using OracleBits = std::string;

inline int letter_value(char c) { return c - '0'; }
inline char letter_char(int v) { return static_cast<char>('0' + v); }

/// u v^omega
struct UpWord {
  FiniteWord u;
  FiniteWord v;
  int width = 1;
};

/// x^{omega*} y z^omega with y occupying [origin, origin+|y|).
/// The usual presentation has origin 0; shifts and reversals may produce a
/// negative origin when the letters left of 0 are not x-periodic.
struct BiWord {
  FiniteWord x;
  FiniteWord y;
  FiniteWord z;
  long long origin = 0;
};

struct GapCertificate {
  std::uint64_t n0 = 0;
  std::uint64_t q = 1;
};

/// 1 0^{g(0)} 1 0^{g(1)} ...  Gap values saturate at UINT64_MAX; residues
/// are always exact.
struct GapWord {
  std::string name;
  std::function<std::uint64_t(std::uint64_t)> gap;
  std::function<std::uint64_t(std::uint64_t, std::uint64_t)> gap_mod;
  std::optional<GapCertificate> certificate;
};

using WordLiteral = std::variant<FiniteWord, UpWord, BiWord, GapWord>;

constexpr std::uint64_t kSaturated = UINT64_MAX;

void validate(const UpWord& w);
void validate(const BiWord& w);

char letter_at(const FiniteWord& w, long long i);
char letter_at(const UpWord& w, long long i);
char letter_at(const BiWord& w, long long i);
char letter_at(const GapWord& w, std::uint64_t i);

/// Two-track omega-word n -> (xi(n), xi(-n-1)).
UpWord fold_word(const BiWord& w);
BiWord shift(const BiWord& w, long long p);
/// Re-cut so that origin <= 0 and the periodic parts absorb what they can.
BiWord normalize(const BiWord& w);
FiniteWord reverse(const FiniteWord& w);
BiWord reverse(const BiWord& w);
/// The suffix w[n, inf).
UpWord suffix(const UpWord& w, std::size_t n);
/// xi[n, inf) and the reversal of xi(-inf, n] as omega-words.
UpWord right_half(const BiWord& w, long long n);
UpWord left_half_reversed(const BiWord& w, long long n);
bool equal_up(const UpWord& a, const UpWord& b);
bool equal_bi(const BiWord& a, const BiWord& b);
FiniteWord window(const BiWord& w, long long from, long long to);  // [from, to)
FiniteWord prefix(const UpWord& w, std::size_t n);
FiniteWord power(const FiniteWord& w, std::size_t n);

long long lcm_len(long long a, long long b);

/// The gap word of predicate W: Phi enumerates {2a : a in W} and the odd
/// numbers by stages (stage a: 2a if a is in W, then 2a+1) and
/// x_i = 2^{Phi(i)} * prod_{j<=i} (2j+1).
GapWord alpha_e_word(std::function<bool(std::uint64_t)> member, const std::string& name = "alpha_e");
/// The enumeration Phi used by alpha_e_word.
std::uint64_t alpha_e_phi(const std::function<bool(std::uint64_t)>& member, std::uint64_t i);
GapWord factorial_word();
GapWord pow2_word();
/// Constant gap g: 1 0^g 1 0^g ...
GapWord constant_gap_word(std::uint64_t g);
/// Gap word from an explicit eventually periodic gap list: prefix gaps then a loop of gaps.
GapWord listed_gap_word(std::vector<std::uint64_t> head, std::vector<std::uint64_t> loop);
/// Named predicates for alpha_e: evens, odds, all, none, squares.
std::function<bool(std::uint64_t)> named_predicate(const std::string& name);

/// fin:0110, up:u=01,v=10, bi:x=01|y=0|z=10, gap:factorial, gap:pow2,
/// gap:alpha_e:<predicate>, gap:const:<g>.
WordLiteral parse_word(const std::string& text);
std::string to_string(const UpWord& w);
std::string to_string(const BiWord& w);

}  // namespace msow
