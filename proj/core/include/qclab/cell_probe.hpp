#pragma once

#include <cstdint>
#include <vector>

#include "qclab/classical_protocol.hpp"
#include "qclab/quantum_protocol.hpp"

namespace qclab {

// Classical (s, w, t) cell probe scheme with explicit decision tables: the
// r-th probe address depends on the query and the cells read so far.
struct ClassicalCellScheme {
  std::size_t s = 0;  // cells
  int w = 0;          // bits per cell
  std::size_t t = 0;  // probes
  std::size_t q_size = 0;
  std::size_t a_size = 0;
  std::vector<std::vector<std::uint64_t>> tables;  // data -> stored table (s cells)
  // addr[r][(q << (w r)) | contents] -> cell index
  std::vector<std::vector<std::uint32_t>> addr;
  // answers[(q << (w t)) | contents] -> answer
  std::vector<std::uint32_t> answers;

  void validate() const;
  int run(std::size_t d, std::size_t q) const;
};

// Quantum (s, w, t) cell probe scheme: unitaries U_0..U_t on the address,
// data and work registers, alternating with the table oracle
// |j, b, z> -> |j, b xor T_d[j], z>. The query starts in the work register.
struct QuantumCellScheme {
  std::size_t s = 0;
  int w = 0;
  std::size_t t = 0;
  std::size_t q_size = 0;
  std::size_t a_size = 0;
  int work_qubits = 0;
  std::vector<std::vector<std::uint64_t>> tables;
  std::vector<ComplexMatrix> unitaries;  // t + 1 of them, on (addr, data, work)
  // Answer read from a computational-basis measurement: which of the query
  // registers (in the order addr, data, work) and the outcome map.
  std::vector<std::string> answer_regs;
  std::vector<int> outcome_to_answer;
  bool address_only = false;
  std::vector<std::vector<cd>> probe_data_states;  // declared per-probe data states

  int addr_qubits() const;
  void validate() const;
  // Outcome distribution of the answer registers for (d, q).
  std::vector<double> run(std::size_t d, std::size_t q) const;
  double error(std::size_t d, std::size_t q, int want) const;
};

struct AddressOnlyReport {
  bool pass = false;
  double max_residual = 0;  // trace distance to the declared data state
  std::vector<std::vector<cd>> found_states;  // dominant data state per probe
};

// Verifies the pre-oracle state always factors with the declared fixed
// data-register state, for every query and datum.
AddressOnlyReport check_address_only(const QuantumCellScheme& scheme);

// (2t)-round protocol simulating the scheme; Alice holds the query, Bob the
// datum. Addresses go one way, address plus data come back. Error preserved.
ClassicalProtocol compile_cellprobe(const ClassicalCellScheme& scheme, const GameSpec& g);

// Address-only schemes compile with Alice's messages of log s qubits: Bob
// keeps one prepared data register per probe and runs the oracle on it.
// Schemes flagged address-only that fail the check are rejected.
QuantumSafeProtocol compile_cellprobe(const QuantumCellScheme& scheme, const GameSpec& g);

// The textbook search instance: four cells of one bit, a single marked
// cell, one probe; finds the mark with certainty.
QuantumCellScheme grover_search_scheme();
GameSpec grover_search_game();

// Sorted-array predecessor lookups with two probes on four 2-bit cells;
// tables are the sorted 4-tuples over {0..3} starting at 0.
ClassicalCellScheme binary_search_scheme();
GameSpec binary_search_game();

}  // namespace qclab
