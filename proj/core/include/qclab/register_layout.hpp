#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qclab/common.hpp"

namespace qclab {

struct Register {
  std::string name;
  int qubits = 1;
  Party owner = Party::alice;

  friend bool operator==(const Register& a, const Register& b) {
    return a.name == b.name && a.qubits == b.qubits && a.owner == b.owner;
  }
};

// Ordered, named, party-owned qubit registers. The first register holds the
// most significant bits of a basis index. Ownership recorded here is the
// initial one; protocols reassign it round by round as qubits are sent.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> regs);

  int total_qubits() const { return total_; }
  std::uint64_t dim() const { return std::uint64_t(1) << total_; }
  std::size_t size() const { return regs_.size(); }
  const std::vector<Register>& registers() const { return regs_; }
  const Register& reg(std::size_t i) const { return regs_[i]; }

  bool contains(const std::string& name) const;
  const Register& reg(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;

  // Absolute qubit positions of a register, most significant first.
  // Position k carries weight 2^(total-1-k) in a basis index.
  std::vector<int> qubit_positions(const std::string& name) const;

  RegisterLayout concat(const RegisterLayout& other) const;
  // Sub-layout with the named registers, in their original order.
  RegisterLayout keep(const std::set<std::string>& names) const;

  friend bool operator==(const RegisterLayout& a, const RegisterLayout& b) {
    return a.regs_ == b.regs_;
  }

 private:
  std::vector<Register> regs_;
  int total_ = 0;
};

}  // namespace qclab
