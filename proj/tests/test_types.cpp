#include "doctest.h"

#include "corpus.hpp"
#include "msow/compiler.hpp"
#include "msow/config.hpp"
#include "msow/decide.hpp"
#include "msow/types.hpp"

using namespace msow;

namespace {

std::string zeros(long long n) { return std::string(static_cast<std::size_t>(n), '0'); }

// Least b >= 1 with v^b and v^{2b} of the same brute-force type, or 0 once
// v^{2b} outgrows the brute-force budget.
long long brute_idempotent(const FiniteWord& v, int k) {
  std::size_t budget = k <= 2 ? config().ktype_len_k2 : config().ktype_len_k3;
  for (long long b = 1; 2 * b * static_cast<long long>(v.size()) <= static_cast<long long>(budget); ++b)
    if (equiv_k_bruteforce(power(v, b), power(v, 2 * b), k)) return b;
  return 0;
}

}  // namespace

TEST_CASE("brute-force types") {
  CHECK(ktype("0101", {}, 0) == ktype("1", {}, 0));
  CHECK(ktype("0", {}, 1) == ktype("00", {}, 1));
  CHECK(ktype("0", {}, 2) != ktype("00", {}, 2));
  CHECK(equiv_k("01", "01", 3));
  CHECK(equiv_k("0", "00", 1));
  CHECK_FALSE(equiv_k("", "0", 1));
  CHECK_FALSE(equiv_k("0", "1", 1));
  CHECK_THROWS_AS(ktype("00000000000", {}, 2), ResourceError);
  CHECK_THROWS_AS(ktype("00000000", {}, 3), ResourceError);
}

TEST_CASE("composed types match brute force") {
  auto words = corpus::binary_words(0, 5);
  for (int k = 0; k <= 2; ++k)
    for (const auto& w : words) CHECK(ktype_composed(w, k) == ktype(w, {}, k));
  for (const auto& u : corpus::binary_words(0, 3))
    for (const auto& v : corpus::binary_words(0, 3))
      CHECK(equiv_k(u, v, 3) == equiv_k_bruteforce(u, v, 3));
  Valuation nu;
  nu.fo = {{"x", 1}};
  nu.so["X"] = {0, 2};
  CHECK(ktype_composed("0110", nu, 2) == ktype("0110", nu, 2));
}

TEST_CASE("types are congruences for concatenation") {
  auto words = corpus::binary_words(1, 4);
  int pairs = 0;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (!equiv_k(words[i], words[j], 2)) continue;
      ++pairs;
      for (const auto& v : {std::string("1"), std::string("01"), std::string("10")})
        CHECK(equiv_k_bruteforce(words[i] + v, words[j] + v, 2));
    }
  CHECK(pairs > 0);
}

TEST_CASE("equal types mean equal verdicts") {
  auto words = corpus::binary_words(0, 6);
  for (int k = 1; k <= 2; ++k) {
    auto sentences = corpus::sentences(k);
    for (std::size_t i = 0; i < words.size(); i += 3)
      for (std::size_t j = i + 1; j < words.size(); j += 5) {
        if (!equiv_k(words[i], words[j], k)) continue;
        for (const auto& phi : sentences) CHECK(decide_finite(words[i], phi) == decide_finite(words[j], phi));
      }
  }
  for (const auto& v : corpus::binary_words(1, 4))
    for (const auto& w : corpus::binary_words(1, 4)) {
      if (v >= w || !equiv_k(v, w, 2)) continue;
      for (const auto& phi : corpus::sentences(2))
        CHECK(decide_up(UpWord{"", v, 1}, phi) == decide_up(UpWord{"", w, 1}, phi));
    }
}

TEST_CASE("unary classification") {
  UnaryClassification one = unary_classify(1);
  CHECK(one.t == 1);
  CHECK(one.p == 1);
  CHECK(one.l == 1);
  for (int k = 1; k <= 2; ++k) {
    UnaryClassification c = unary_classify(k);
    CHECK(equiv_k_bruteforce(zeros(c.l), zeros(2 * c.l), k));
    for (long long i = 1; i <= c.t; ++i)
      for (long long j = 1; j <= 4; ++j) {
        bool smaller = i < c.t || (i == c.t && j < c.p);
        if (smaller) CHECK_FALSE(equiv_k_bruteforce(zeros(i), zeros(i + j), k));
      }
    for (long long a = 0; a <= c.t + 2 * c.p; ++a)
      for (long long b = 0; b <= c.t + 2 * c.p; ++b) {
        bool expect = a == b || (a >= c.t && b >= c.t && (a - b) % c.p == 0);
        CHECK(equiv_k(zeros(a), zeros(b), k) == expect);
      }
  }
  UnaryClassification three = unary_classify(3);
  CHECK(equiv_k(zeros(three.l), zeros(2 * three.l), 3));
}

TEST_CASE("idempotent exponents") {
  int checked = 0;
  for (const auto& v : corpus::binary_words(1, 3))
    for (int k = 1; k <= 2; ++k) {
      long long b = brute_idempotent(v, k);
      if (b == 0) continue;
      ++checked;
      CHECK(idempotent_exponent(v, k) == b);
    }
  CHECK(checked >= 10);
}

TEST_CASE("representatives") {
  RepresentativeUp r = representative_up(UpWord{"", "0", 1}, 1);
  CHECK(r.x == "0");
  CHECK(r.y == "0");
  RepresentativeUp s = representative_up(UpWord{"1", "0", 1}, 2);
  REQUIRE(brute_idempotent("0", 2) > 0);
  CHECK(s.y == zeros(brute_idempotent("0", 2)));
  CHECK(s.x == "1" + s.y);
  for (const auto& a : corpus::up_words(2, 2))
    for (int k = 1; k <= 2; ++k) {
      RepresentativeUp rep = representative_up(a, k);
      CHECK(check_representative_up(rep, k));
      CHECK(equiv_k(rep.x + rep.y, rep.x, k));
      CHECK(equiv_k(rep.y + rep.y, rep.y, k));
    }

  RepresentativeBi b = representative_bi(BiWord{"0", "", "0", 0}, 1);
  CHECK(b.x == "0");
  CHECK(b.y == "00");
  CHECK(b.z == "0");
  RepresentativeBi c = representative_bi(BiWord{"01", "0", "10", 0}, 2);
  CHECK(check_representative_bi(c, 2));
  CHECK(equiv_k(c.x + c.x, c.x, 2));
  CHECK(equiv_k(c.z + c.z, c.z, 2));
  CHECK(equiv_k(c.x + c.y, c.y, 2));
  CHECK(equiv_k(c.y + c.z, c.y, 2));
}

TEST_CASE("uniformly homogeneous positions") {
  HomogeneousUp h = uniformly_homogeneous_up(UpWord{"", "0", 1}, 1);
  CHECK(h.positions.size() == 3);
  CHECK(verify_homogeneous_up(UpWord{"", "0", 1}, h.positions, 1));
  // independent check at rank <= 1 on the short segments
  FiniteWord w(static_cast<std::size_t>(h.positions.back()), '0');
  for (std::size_t i = 1; i + 1 < h.positions.size(); ++i) {
    FiniteWord seg_a = w.substr(h.positions[i - 1], h.positions[i] - h.positions[i - 1]);
    FiniteWord seg_b = w.substr(h.positions[i], h.positions[i + 1] - h.positions[i]);
    CHECK(equiv_k_bruteforce(seg_a, seg_b, 1));
  }

  UpWord a{"1", "01", 1};
  HomogeneousUp g = uniformly_homogeneous_up(a, 2);
  long long b1 = idempotent_exponent("01", 1), b2 = idempotent_exponent("01", 2);
  REQUIRE(g.positions.size() == 4);
  CHECK(g.positions[3] - g.positions[2] == 2 * b1 * b2);
  CHECK(verify_homogeneous_up(a, g.positions, 2));
  std::vector<long long> broken = g.positions;
  broken[3] += 1;
  CHECK_FALSE(verify_homogeneous_up(a, broken, 2));

  for (const BiWord& xi : {BiWord{"0", "", "0", 0}, BiWord{"01", "1", "10", 0}}) {
    HomogeneousBi hb = uniformly_homogeneous_bi(xi, 2);
    CHECK(verify_homogeneous_bi(xi, hb.left, hb.right, 2));
  }
  HomogeneousBi sym = uniformly_homogeneous_bi(BiWord{"0", "", "0", 0}, 1);
  for (std::size_t i = 0; i < sym.left.size(); ++i) CHECK(sym.left[i] == -sym.right[i]);
}

TEST_CASE("type functions") {
  TypeFunctionUp tf = type_function_up(UpWord{"", "0", 1});
  for (int k = 1; k <= 3; ++k) {
    auto [u, v] = tf(k);
    long long b = idempotent_exponent("0", k);
    CHECK(u == zeros(b));
    CHECK(v == zeros(b));
  }
  // the letter at k can be read off the representative for rank k + 2
  for (const auto& a : corpus::up_words(2, 2)) {
    auto [u, v] = type_function_up(a)(2);
    CHECK(letter_at(a, 0) == (u + power(v, 0)).at(0));
    if (a.v == "0") {
      auto [u3, v3] = type_function_up(a)(3);
      CHECK(letter_at(a, 1) == (u3 + v3).at(1));
    }
  }
  TypeFunctionBi tb = type_function_bi(BiWord{"01", "1", "10", 0});
  auto [x, y, z] = tb(2);
  CHECK(check_representative_bi(RepresentativeBi{x, y, z, 0, 0}, 2));

  auto gap = type_function_gap(factorial_word());
  auto [gu, gv] = gap(1);
  UnaryClassification c = unary_classify(1);
  CHECK(gv.find("1" + zeros(c.t)) != std::string::npos);
  CHECK(gu.substr(0, 1) == "1");
}
