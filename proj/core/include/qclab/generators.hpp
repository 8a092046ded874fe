#pragma once

#include "qclab/classical_protocol.hpp"
#include "qclab/quantum_protocol.hpp"
#include "qclab/sampling.hpp"

namespace qclab {

struct ClassicalProtocolOptions {
  std::size_t e_size = 2;
  std::size_t f_size = 2;
  std::size_t g_size = 2;
  std::size_t rounds = 2;
  int max_len = 2;
  std::size_t coin_values = 2;
  std::int64_t coin_denominator = 8;
  bool public_coin = false;
  std::size_t public_values = 2;
  Party starter = Party::alice;
};

// Random table-driven protocol; coins are exact rational distributions.
ClassicalProtocol random_classical_protocol(Rng& rng, const ClassicalProtocolOptions& opt);

JointDistribution random_joint_distribution(Rng& rng, std::size_t e_size, std::size_t f_size,
                                            std::int64_t denominator = 16);

// Monte-Carlo estimate of the error on one input pair; the sampling oracle
// used to cross-check the exact enumeration.
double sample_classical_error(const ClassicalProtocol& p, const GameSpec& g, std::size_t x,
                              std::size_t y, std::size_t trials, Rng& rng);

struct QuantumProtocolOptions {
  std::size_t rounds = 2;      // t
  int safe_qubits = 0;         // c
  int first_main_qubits = 1;   // l_1
  int reply_qubits = 1;        // l_2.. (per later round)
  int alice_work_qubits = 0;   // extra work on Alice's side beyond the message
  Party starter = Party::alice;
};

// Random safe, secure, coinless protocol for a 1-bit game: unitaries are
// controlled on the input registers, the safe overhead is prepared by a
// fixed input-independent unitary.
QuantumSafeProtocol random_quantum_protocol(Rng& rng, const QuantumProtocolOptions& opt);

// Random safe, secure protocol for the composite game of a 1-bit base game
// (n strings on Alice's side), suitable for round elimination.
QuantumSafeProtocol random_power_game_protocol(Rng& rng, const PowerGame& pg, int first_main_qubits,
                                               int safe_qubits);

// Embeds a deterministic classical protocol as permutation unitaries.
// Coins are not supported; the protocol must be coinless.
QuantumSafeProtocol embed_classical_protocol(const ClassicalProtocol& p, const GameSpec& g);

}  // namespace qclab
