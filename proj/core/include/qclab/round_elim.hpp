#pragma once

#include <string>
#include <vector>

#include "qclab/classical_protocol.hpp"
#include "qclab/quantum_protocol.hpp"

namespace qclab {

// Records one reduction step: signatures, errors, the information term and
// the lemma bound with its slack. Classical steps carry exact rationals.
struct EliminationCertificate {
  std::string kind;
  std::string input_signature;
  std::string output_signature;
  double eps_before = 0;
  double eps_after = 0;
  double information = 0;  // I(X : first message)
  double bound = 0;
  double slack = 0;  // bound - eps_after
  bool exact = false;
  Rational eps_before_exact;
  Rational eps_after_exact;
};

// Exposes the merged public-coin structure of a classical reduction for
// auditing: value index -> (message, threshold interval).
struct ReductionCoinValue {
  std::uint32_t message = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t scale = 1;  // common denominator of the message's draw table
};

struct ClassicalReduction {
  ClassicalProtocol protocol;
  EliminationCertificate certificate;
  std::vector<ReductionCoinValue> coin_values;
  std::vector<std::vector<Rational>> message_given_input;  // sigma(m | x)
  std::vector<Rational> message_average;                   // sigma(m)
};

// Removes the first message of a private-coin protocol, moving it onto a
// public coin together with the draw that re-selects the old private coin.
// Message draws impossible under the actual input are charged as errors.
ClassicalReduction classical_round_reduce(const ClassicalProtocol& p, const GameSpec& g,
                                          const JointDistribution& d);

struct EliminationLedger {
  EliminationCertificate certificate;  // worst-case view
  double eps_dstar_in = 0;             // fixed protocol under the product distribution
  double eps_d_out = 0;                // output under the base distribution
  double bound_d = 0;                  // provable distributional bound
  double slack_d = 0;
  double info_budget = 0;    // (2 l_1 / n) quantum, (l_1 / n) classical
  double info_measured = 0;  // average conditional information over the pieces
  double additivity_residual = 0;
  double averaging_residual = 0;
  std::size_t pieces = 0;
};

struct ClassicalElimination {
  ClassicalProtocol protocol;
  EliminationLedger ledger;
};

// Removes the first message of a public-coin protocol for the composite
// game, producing a protocol for the base game with one less round. The
// construction fixes the public coin against the product distribution of d
// (uniform when not given), reduces each (index, prefix) piece and mixes
// the pieces into one public coin with the product distribution's weights.
ClassicalElimination classical_round_eliminate(const ClassicalProtocol& p, const GameSpec& g,
                                               std::size_t n,
                                               const JointDistribution* base_d = nullptr);

struct QuantumReduction {
  QuantumSafeProtocol protocol;
  EliminationCertificate certificate;
};

// The quantum analogue: the receiver prepares the canonical purification of
// the average first message and sends the purifying half as a safe
// overhead; the sender repairs the state with a local unitary controlled on
// a secure copy of her input. Requires a safe, secure, coinless protocol.
QuantumReduction quantum_round_reduce(const QuantumSafeProtocol& p, const GameSpec& g,
                                      const JointDistribution& d);

struct QuantumElimination {
  QuantumSafeProtocol protocol;
  EliminationLedger ledger;
};

QuantumElimination quantum_round_eliminate(const QuantumSafeProtocol& p, const GameSpec& g,
                                           std::size_t n,
                                           const JointDistribution* base_d = nullptr);

// Builds the composite-game piece protocol: Bob's index and copy fixed,
// Alice's other strings replaced by private samples (classical) or fixed
// superpositions (quantum) of the marginal of d.
ClassicalProtocol restrict_to_piece(const ClassicalProtocol& p, const PowerGame& pg,
                                    std::size_t i, const std::vector<int>& prefix,
                                    const JointDistribution& d);
QuantumSafeProtocol restrict_to_piece(const QuantumSafeProtocol& p, const PowerGame& pg,
                                      std::size_t i, const std::vector<int>& prefix,
                                      const JointDistribution& d);

}  // namespace qclab
