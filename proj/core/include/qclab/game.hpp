#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qclab/rational.hpp"

namespace qclab {

// Two-party game: input sets E, F as index ranges, answer set G, total truth
// table. An optional promise restricts worst-case evaluation to the listed
// pairs (used by the composite games where Bob holds a copy of a prefix).
struct GameSpec {
  std::string name;
  std::size_t e_size = 0;
  std::size_t f_size = 0;
  std::size_t g_size = 0;
  std::vector<int> table;                        // value(x, y) = table[x * f_size + y]
  std::vector<std::pair<int, int>> promise;      // empty = every pair allowed

  int value(std::size_t x, std::size_t y) const { return table[x * f_size + y]; }
  bool has_promise() const { return !promise.empty(); }
  bool allowed(std::size_t x, std::size_t y) const;
  void validate() const;

  // Equality of `bits`-bit strings; answers {0 = unequal, 1 = equal}.
  static GameSpec equality(int bits);
  // XOR of one-bit inputs.
  static GameSpec xor_game();
  // x > y on n-bit integers; answers {0 = not greater, 1 = greater}.
  static GameSpec greater_than(int bits);
};

// Distribution on E x F with exact rational probabilities, stored densely.
struct JointDistribution {
  std::size_t e_size = 0;
  std::size_t f_size = 0;
  std::vector<Rational> p;  // p[x * f_size + y], nonnegative, sums to 1

  const Rational& prob(std::size_t x, std::size_t y) const { return p[x * f_size + y]; }
  std::vector<Rational> marginal_x() const;
  std::vector<Rational> marginal_y() const;
  void validate() const;

  static JointDistribution uniform(std::size_t e_size, std::size_t f_size);
  // Uniform over the game's allowed pairs.
  static JointDistribution uniform_allowed(const GameSpec& g);
};

// The composite game: Alice holds n strings of E, Bob holds an index
// i in [n], an input y of F and a copy of Alice's first i-1 strings; the
// answer is the base game on (x_i, y). Promise = consistent copies.
struct PowerGame {
  GameSpec game;
  GameSpec base;
  std::size_t n = 0;

  std::uint64_t encode_x(const std::vector<int>& xs) const;
  std::vector<int> decode_x(std::uint64_t v) const;
  // i is 1-based; prefix holds x_1..x_{i-1}.
  std::uint64_t encode_y(std::size_t i, int y, const std::vector<int>& prefix) const;
  struct YParts {
    std::size_t i;
    int y;
    std::vector<int> prefix;
  };
  YParts decode_y(std::uint64_t v) const;
};

PowerGame game_power(const GameSpec& base, std::size_t n);

// The distribution used to trade worst case for average case in the
// composite game: i uniform, (x_j, y_j) i.i.d. from d, y = y_i, Bob's copy
// consistent with Alice's prefix. Exact rationals.
JointDistribution build_product_distribution(const JointDistribution& d, std::size_t n,
                                             const PowerGame& pg);

}  // namespace qclab
