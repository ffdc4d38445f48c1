// Rank-k types of finite words (Hintikka types) and what is built on them.
//
// A type node records, for a word with variable columns, the atomic diagram
// of the first-order columns and the sets of rank-(k-1) types of all one-column
// extensions. First-order columns may be empty; that only arises when a word
// is cut in two and lets types compose: type(uv) = compose(type(u), type(v)).
// Nodes are interned, so equal types have equal ids.
#pragma once

#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "msow/formula.hpp"
#include "msow/words.hpp"

namespace msow {

struct KType {
  int rank = 0;
  int id = -1;
  bool operator==(const KType& o) const { return rank == o.rank && id == o.id; }
  bool operator!=(const KType& o) const { return !(*this == o); }
};

/// Brute force: extensions enumerate every position and every subset.
/// Budget: |w| <= ktype_len_k2 for k <= 2, |w| <= ktype_len_k3 for k = 3,
/// |w| <= 3 beyond.
KType ktype(const FiniteWord& w, const Valuation& nu, int k);
/// Same type, assembled from single-letter types by composition.
KType ktype_composed(const FiniteWord& w, const Valuation& nu, int k);
KType ktype_composed(const FiniteWord& w, int k);
KType compose(KType a, KType b);
/// Type of the empty word (no columns).
KType empty_type(int k);

bool equiv_k(const FiniteWord& u, const FiniteWord& v, int k);
bool equiv_k_bruteforce(const FiniteWord& u, const FiniteWord& v, int k);
/// Interned types plus memoized compositions; bounded by type_table_cap.
std::size_t type_store_size();
/// Printable nested form of a type.
std::string describe(KType t);

struct UnaryClassification {
  int k = 0;
  long long t = 0;  // threshold
  long long p = 0;  // period
  long long l = 0;  // t * p
};

/// Smallest i, j >= 1 with 0^i equivalent to 0^{i+j} at rank k.
UnaryClassification unary_classify(int k);

/// Smallest b >= 1 with v^b equivalent to v^{2b} at rank k.
long long idempotent_exponent(const FiniteWord& v, int k);

struct RepresentativeUp {
  FiniteWord x, y;
  long long exponent = 0;
};

struct RepresentativeBi {
  FiniteWord x, y, z;
  long long left_exponent = 0, right_exponent = 0;
};

RepresentativeUp representative_up(const UpWord& a, int k);
RepresentativeBi representative_bi(const BiWord& a, int k);
bool check_representative_up(const RepresentativeUp& r, int k);
bool check_representative_bi(const RepresentativeBi& r, int k);

struct HomogeneousUp {
  std::vector<long long> positions;  // h_0 < h_1 < ... (K+2 entries)
  std::vector<long long> exponents;  // rank-k idempotent exponent of the loop, k <= K
  std::vector<std::pair<KType, KType>> witness;  // per rank: prefix type, segment type
};

struct HomogeneousBi {
  std::vector<long long> left;   // descending
  std::vector<long long> right;  // ascending
  std::vector<long long> left_exponents, right_exponents;
  std::vector<std::tuple<KType, KType, KType>> witness;  // per rank: left, middle, right segment types
};

HomogeneousUp uniformly_homogeneous_up(const UpWord& a, int K);
HomogeneousBi uniformly_homogeneous_bi(const BiWord& a, int K);
/// For every k <= K the positions from index k on cut `a` k-homogeneously.
bool verify_homogeneous_up(const UpWord& a, const std::vector<long long>& h, int K);
bool verify_homogeneous_bi(const BiWord& a, const std::vector<long long>& left, const std::vector<long long>& right,
                           int K);

using TypeFunctionUp = std::function<std::pair<FiniteWord, FiniteWord>(int)>;
using TypeFunctionBi = std::function<std::tuple<FiniteWord, FiniteWord, FiniteWord>(int)>;

TypeFunctionUp type_function_up(const UpWord& a);
TypeFunctionBi type_function_bi(const BiWord& a);

}  // namespace msow
