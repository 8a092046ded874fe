#include "qclab/register_layout.hpp"

#include <algorithm>

namespace qclab {

RegisterLayout::RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
  std::set<std::string> seen;
  total_ = 0;
  for (const Register& r : regs_) {
    if (r.name.empty()) throw std::invalid_argument("register with empty name");
    if (r.qubits < 1) throw std::invalid_argument("register '" + r.name + "' needs >= 1 qubit");
    if (!seen.insert(r.name).second)
      throw std::invalid_argument("duplicate register name '" + r.name + "'");
    total_ += r.qubits;
  }
  if (total_ > config::max_qubits())
    throw CapacityError("layout of " + std::to_string(total_) + " qubits exceeds cap of " +
                        std::to_string(config::max_qubits()));
}

bool RegisterLayout::contains(const std::string& name) const {
  return std::any_of(regs_.begin(), regs_.end(), [&](const Register& r) { return r.name == name; });
}

std::size_t RegisterLayout::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < regs_.size(); ++i)
    if (regs_[i].name == name) return i;
  throw std::invalid_argument("unknown register '" + name + "'");
}

const Register& RegisterLayout::reg(const std::string& name) const { return regs_[index_of(name)]; }

std::vector<int> RegisterLayout::qubit_positions(const std::string& name) const {
  int pos = 0;
  for (const Register& r : regs_) {
    if (r.name == name) {
      std::vector<int> out(r.qubits);
      for (int k = 0; k < r.qubits; ++k) out[k] = pos + k;
      return out;
    }
    pos += r.qubits;
  }
  throw std::invalid_argument("unknown register '" + name + "'");
}

RegisterLayout RegisterLayout::concat(const RegisterLayout& other) const {
  std::vector<Register> regs = regs_;
  regs.insert(regs.end(), other.regs_.begin(), other.regs_.end());
  return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::keep(const std::set<std::string>& names) const {
  for (const std::string& n : names)
    if (!contains(n)) throw std::invalid_argument("unknown register '" + n + "'");
  std::vector<Register> regs;
  for (const Register& r : regs_)
    if (names.count(r.name)) regs.push_back(r);
  return RegisterLayout(std::move(regs));
}

}  // namespace qclab
