#include <doctest.h>

#include <stdexcept>

#include "qclab/rank_parity.hpp"

using namespace qclab;

namespace {

// independent counting loop used as the oracle
Parity brute_parity(const BitString& x, const std::vector<BitString>& s) {
  std::size_t rank = 0;
  for (const BitString& y : s)
    if (y.value <= x.value) ++rank;
  return (rank % 2 == 0) ? Parity::even : Parity::odd;
}

std::vector<std::vector<BitString>> subsets_up_to(int length, std::size_t max_size) {
  const std::uint64_t space = std::uint64_t(1) << length;
  std::vector<std::vector<BitString>> out;
  std::vector<BitString> cur;
  // iterate all subsets by bitmask, keep the small ones
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << space); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > max_size) continue;
    cur.clear();
    for (std::uint64_t v = 0; v < space; ++v)
      if ((mask >> v) & 1u) cur.push_back({v, length});
    out.push_back(cur);
  }
  return out;
}

}  // namespace

TEST_CASE("rank parity answers") {
  // x = 101, S = {001, 100, 110}: rank 2, even
  BitString x{0b101, 3};
  std::vector<BitString> s{{0b001, 3}, {0b100, 3}, {0b110, 3}};
  CHECK(par_answer(x, s) == Parity::even);

  // below the minimum: rank 0
  CHECK(par_answer({0b000, 3}, s) == Parity::even);

  CHECK_THROWS_AS(par_answer({0, 2}, s), std::invalid_argument);

  // exhaustive p = 4, |S| <= 3 against the counting loop
  for (const auto& set : subsets_up_to(4, 3))
    for (std::uint64_t v = 0; v < 16; ++v)
      CHECK(par_answer({v, 4}, set) == brute_parity({v, 4}, set));
}

TEST_CASE("first-index block reduction preserves answers") {
  SUBCASE("i = 1 uses an empty prefix") {
    std::vector<BitString> xs{{0b01, 2}, {0b10, 2}};
    std::vector<BitString> s{{0b11, 2}};
    auto inst = par_reduce_a(xs, 1, s, 2);
    CHECK(inst.x.length == 4);
    CHECK(inst.s.front().value == 0b1100);  // y then zeros
    CHECK(inst.s.size() == s.size());
  }

  SUBCASE("exhaustive p = 4, k = 2, |S| <= 2") {
    const int piece = 2;
    for (std::uint64_t x1 = 0; x1 < 4; ++x1)
      for (std::uint64_t x2 = 0; x2 < 4; ++x2)
        for (const auto& s : subsets_up_to(piece, 2))
          for (std::size_t i = 1; i <= 2; ++i) {
            std::vector<BitString> xs{{x1, piece}, {x2, piece}};
            auto inst = par_reduce_a(xs, i, s, 2);
            CHECK(inst.s.size() == s.size());
            CHECK(par_answer(inst.x, inst.s) == par_answer(xs[i - 1], s));
          }
  }
}

TEST_CASE("block-tagged set reduction preserves answers and audits sizes") {
  SUBCASE("even blocks need no padding") {
    std::vector<std::vector<BitString>> sets{{{0b0, 1}, {0b1, 1}}, {}};
    auto res = par_reduce_b({0b1, 1}, 1, sets, 4);
    CHECK(res.padded_blocks == 0);
    CHECK(res.size_bound_respected);
  }

  SUBCASE("exhaustive p = 5, k = 2, q = 4") {
    // component strings have length p - log k - 1 = 3
    const int piece = 3;
    const auto small_sets = subsets_up_to(piece, 2);  // |S_j| <= q/k = 2
    for (const auto& s1 : small_sets)
      for (const auto& s2 : small_sets)
        for (std::uint64_t x = 0; x < 8; ++x)
          for (std::size_t i = 1; i <= 2; ++i) {
            auto res = par_reduce_b({x, piece}, i, {s1, s2}, 4);
            CHECK(res.size_bound_respected);
            CHECK(res.instance.x.length == 5);
            const auto& si = (i == 1) ? s1 : s2;
            CHECK(par_answer(res.instance.x, res.instance.s) ==
                  par_answer({x, piece}, si));
            // every block contributes an even count below any block-i string
            CHECK(res.instance.s.size() % 2 ==
                  (s1.size() % 2 + s2.size() % 2 + s1.size() + s2.size()) % 2);
          }
  }

  SUBCASE("parameter violations are rejected") {
    CHECK_THROWS_AS(par_reduce_b({0, 3}, 1, {{}, {}, {}}, 6), std::invalid_argument);
    CHECK_THROWS_AS(par_reduce_b({0, 3}, 1, {{}, {}}, 5), std::invalid_argument);
  }
}

TEST_CASE("block parity localises to the indexed block") {
  // cross-block contributions below x-hat come in even counts
  const int piece = 2;
  const auto sets = subsets_up_to(piece, 2);
  for (const auto& s1 : sets)
    for (const auto& s2 : sets)
      for (std::uint64_t x = 0; x < 4; ++x)
        for (std::size_t i = 1; i <= 2; ++i) {
          auto res = par_reduce_b({x, piece}, i, {s1, s2}, 4);
          // count contributions from the other block
          std::size_t cross = 0;
          for (const BitString& y : res.instance.s) {
            const std::uint64_t tag = y.value >> (piece + 1);
            if (tag != i - 1 && y <= res.instance.x) ++cross;
          }
          CHECK(cross % 2 == 0);
        }
}

TEST_CASE("greater-than self-reduction preserves comparisons") {
  SUBCASE("equal block: the ones padding dominates") {
    std::vector<BitString> xs{{0b10, 2}, {0b01, 2}};
    auto inst = gt_self_reduce(xs, 1, {0b10, 2}, 2);
    CHECK_FALSE(inst.x.value > inst.y.value);  // x_1 = y
  }
  SUBCASE("last index: no suffix padding") {
    std::vector<BitString> xs{{0b10, 2}, {0b01, 2}};
    auto inst = gt_self_reduce(xs, 2, {0b00, 2}, 2);
    CHECK(inst.y.value == 0b1000);
    CHECK(inst.x.value > inst.y.value);
  }
  SUBCASE("exhaustive n = 6, k in {2, 3}") {
    for (std::size_t k : {std::size_t(2), std::size_t(3)}) {
      const int piece = 6 / static_cast<int>(k);
      const std::uint64_t space = std::uint64_t(1) << piece;
      std::vector<BitString> xs(k);
      std::vector<std::uint64_t> vals(k, 0);
      // enumerate all tuples
      std::size_t total = 1;
      for (std::size_t j = 0; j < k; ++j) total *= space;
      for (std::size_t tuple = 0; tuple < total; ++tuple) {
        std::size_t v = tuple;
        for (std::size_t j = 0; j < k; ++j) {
          xs[j] = {v % space, piece};
          v /= space;
        }
        for (std::uint64_t y = 0; y < space; ++y)
          for (std::size_t i = 1; i <= k; ++i) {
            auto inst = gt_self_reduce(xs, i, {y, piece}, k);
            CHECK((inst.x.value > inst.y.value) == (xs[i - 1].value > y));
          }
      }
    }
  }
}
