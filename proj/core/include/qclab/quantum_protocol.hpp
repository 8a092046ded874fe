#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qclab/classical_protocol.hpp"
#include "qclab/game.hpp"
#include "qclab/info.hpp"
#include "qclab/quantum_state.hpp"

namespace qclab {

struct Gate {
  ComplexMatrix matrix;
  std::vector<std::string> regs;  // ordered targets, first = most significant
};

// Fixed, input-independent preparation of a register group from |0..0>.
struct StateInit {
  std::vector<std::string> regs;
  std::vector<cd> amps;
};

// Which registers hold a party's input and how input indices map to basis
// values of those registers (concatenated, first register most significant).
struct InputSpec {
  std::vector<std::string> regs;
  std::vector<std::uint64_t> embed;
};

struct QuantumRound {
  std::vector<Gate> gates;            // applied in order by the sender
  std::vector<std::string> transfer;  // registers handed over afterwards
};

struct Measurement {
  std::vector<std::string> regs;       // in layout order
  std::vector<int> outcome_to_answer;  // 2^(answer qubits) entries
};

struct QuantumProtocolBody {
  RegisterLayout layout;  // initial ownership recorded per register
  InputSpec input_a, input_b;
  std::vector<StateInit> inits;
  std::vector<QuantumRound> round_list;
  std::vector<Gate> final_gates;  // applied by the answerer before measuring
  Measurement measurement;
  std::vector<std::string> safe_regs;  // c qubits inside the first transfer
};

// [t, c, l_1..l_t] with a starter. The first message is l_1 + c qubits, its
// safe overhead c qubits; message i >= 2 is l_i qubits.
struct SafeSignature {
  Party starter = Party::alice;
  int safe_qubits = 0;
  std::vector<int> lengths;

  std::size_t rounds() const { return lengths.size(); }
  std::string str() const;
  friend bool operator==(const SafeSignature& a, const SafeSignature& b) {
    return a.starter == b.starter && a.safe_qubits == b.safe_qubits && a.lengths == b.lengths;
  }
};

// Safe quantum protocol: a public-coin mixture of coinless bodies sharing
// one signature. A single unit-weight branch is the coinless case.
struct QuantumSafeProtocol {
  SafeSignature sig;
  std::size_t e_size = 0;
  std::size_t f_size = 0;
  std::size_t g_size = 0;
  std::vector<std::pair<Rational, QuantumProtocolBody>> branches;

  bool is_coinless() const { return branches.size() == 1; }
  const QuantumProtocolBody& body() const;  // coinless accessor
  void validate() const;
};

Party quantum_sender(const SafeSignature& sig, std::size_t round);
Party quantum_answerer(const SafeSignature& sig);

struct QuantumErrorReport {
  ErrorGrid<double> grid;
  bool has_distribution = false;
  double eps_d = 0;
  double eps_worst = 0;
  std::vector<int> lengths;
  int total_qubits = 0;
};

QuantumErrorReport eval_quantum(const QuantumSafeProtocol& p, const GameSpec& g,
                                const JointDistribution* d = nullptr);

// Initial state of a body: inputs embedded as basis states (overridable by
// an extra init covering the input registers), ancillas |0>, preparations
// applied.
PureState initial_state(const QuantumProtocolBody& b, std::optional<std::uint64_t> x,
                        std::optional<std::uint64_t> y,
                        const std::vector<StateInit>& extra_inits = {});

// State after the first `upto` rounds' gates (no measurement).
PureState run_rounds(const QuantumProtocolBody& b, const PureState& start, std::size_t upto);

struct VerifyReport {
  bool pass = false;
  double max_deviation = 0;
  std::string detail;
};

// The reduced state of the safe overhead at send time must not depend on
// either input; compares every input pair against the first, per branch.
VerifyReport verify_safe(const QuantumSafeProtocol& p);

// Input registers are never sent, never measured and their reduced state
// stays the initial basis state after every round.
VerifyReport verify_secure(const QuantumSafeProtocol& p);

// Density of the starter's first message (main part plus overhead) for each
// input value, averaged over the public coin; priors from d.
Encoding first_message_encoding(const QuantumSafeProtocol& p, const GameSpec& g,
                                const JointDistribution& d);

struct FixedQuantumCoin {
  QuantumSafeProtocol protocol;
  std::size_t coin_value = 0;
  double eps_d = 0;
};

FixedQuantumCoin fix_public_coin(const QuantumSafeProtocol& p, const GameSpec& g,
                                 const JointDistribution& d);

// Appends one round to a coinless protocol: [t, c, l_1..l_t] becomes
// [t+1, c, l_1..l_{t+1}]. The new round's sender is the previous answerer;
// the answer moves to the new recipient using the provided measurement.
QuantumSafeProtocol append_round(const QuantumSafeProtocol& p, const QuantumRound& round,
                                 const Measurement& new_measurement);

// Block-diagonal unitary sum_c |c><c| (x) blocks[c] over `control_qubits`
// control qubits (missing blocks default to identity).
ComplexMatrix controlled_unitary(int control_qubits, const std::vector<ComplexMatrix>& blocks);

// |c>|t> -> |c>|t xor c> on 2k qubits (control half first).
ComplexMatrix xor_copy_gate(int qubits);

}  // namespace qclab
