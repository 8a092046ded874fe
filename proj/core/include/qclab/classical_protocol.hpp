#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qclab/common.hpp"
#include "qclab/game.hpp"
#include "qclab/info.hpp"
#include "qclab/rational.hpp"

namespace qclab {

// Finite coin with exact rational outcome probabilities. An empty prob
// vector is the trivial one-outcome coin.
struct CoinSpace {
  std::vector<Rational> probs;

  std::size_t size() const { return probs.empty() ? 1 : probs.size(); }
  Rational prob(std::size_t i) const { return probs.empty() ? Rational(1) : probs[i]; }
  void validate() const;
};

// Table-driven multi-round protocol with exact rational coins. Messages of
// round r are looked up as
//   table[((input * 2^prefix + transcript) * own_coin + coin) * pub + pub_value]
// and the answer is produced by the last recipient (Bob alone for
// zero-round protocols) from (input, transcript, own coin, public coin).
// An optional abort table marks (input, public coin) pairs that are charged
// as outright errors; the round-reduced protocols use it for message draws
// that are impossible under the given input.
struct ClassicalProtocol {
  Party starter = Party::alice;
  std::size_t e_size = 0;
  std::size_t f_size = 0;
  std::size_t g_size = 0;
  std::vector<int> lengths;  // message bits per round
  CoinSpace coin_a, coin_b;
  bool has_public_coin = false;
  CoinSpace public_coin;
  std::vector<std::vector<std::uint32_t>> message_tables;
  std::vector<std::uint32_t> answer_table;
  Party abort_party = Party::alice;
  std::vector<std::uint8_t> abort_table;  // empty = no aborts

  std::size_t rounds() const { return lengths.size(); }
  Party sender(std::size_t round) const;  // 0-based
  Party answerer() const;
  int prefix_bits(std::size_t round) const;
  int total_bits() const;
  std::size_t input_size(Party p) const { return p == Party::alice ? e_size : f_size; }
  const CoinSpace& coin(Party p) const { return p == Party::alice ? coin_a : coin_b; }
  std::size_t pub_size() const { return has_public_coin ? public_coin.size() : 1; }

  std::uint32_t message(std::size_t round, std::size_t input, std::uint64_t transcript,
                        std::size_t coin, std::size_t pub) const;
  int answer(std::size_t input, std::uint64_t transcript, std::size_t coin,
             std::size_t pub) const;
  bool aborts(std::size_t input, std::size_t pub) const;

  void validate() const;
};

template <typename V>
struct ErrorGrid {
  std::size_t e_size = 0;
  std::size_t f_size = 0;
  std::vector<V> eps;

  V& at(std::size_t x, std::size_t y) { return eps[x * f_size + y]; }
  const V& at(std::size_t x, std::size_t y) const { return eps[x * f_size + y]; }
};

struct ClassicalErrorReport {
  ErrorGrid<Rational> grid;
  bool has_distribution = false;
  Rational eps_d;
  Rational eps_worst;        // max over allowed pairs
  std::vector<int> lengths;  // per-round message bits, for length audits
  long long branches = 0;
};

// Exact evaluation by full enumeration over coins. Throws CapacityError
// above the configured branch cap.
ClassicalErrorReport eval_classical(const ClassicalProtocol& p, const GameSpec& g,
                                    const JointDistribution* d = nullptr);

struct FixedCoinResult {
  ClassicalProtocol protocol;
  std::size_t coin_value = 0;
  Rational eps_d;
};

// The public-coin value minimising the distributional error; the averaging
// argument guarantees its error is at most the mixture's.
FixedCoinResult fix_public_coin(const ClassicalProtocol& p, const GameSpec& g,
                                const JointDistribution& d);

// Distribution of the starter's first message given each input value, with
// priors from the starter's marginal of d.
Encoding first_message_encoding(const ClassicalProtocol& p, const GameSpec& g,
                                const JointDistribution& d);

// As above but including zero-length first messages; backs the reduction
// internals where the public operation rejects them.
std::vector<std::vector<Rational>> first_message_table(const ClassicalProtocol& p);

}  // namespace qclab
