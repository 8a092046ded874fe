#pragma once

#include <set>
#include <string>
#include <vector>

#include "qclab/complex_matrix.hpp"
#include "qclab/register_layout.hpp"

namespace qclab {

// State vector over a register layout. Unit norm within 1e-9; global phase
// is normalised so the first nonzero amplitude is real nonnegative, which
// makes state comparisons deterministic.
class PureState {
 public:
  PureState(RegisterLayout layout, std::vector<cd> amps);
  static PureState basis(RegisterLayout layout, std::uint64_t value);

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<cd>& amps() const { return amps_; }
  std::vector<cd>& amps() { return amps_; }
  std::uint64_t dim() const { return amps_.size(); }

  double norm() const;
  void renormalize();
  void normalize_phase();

  cd inner(const PureState& other) const;

 private:
  RegisterLayout layout_;
  std::vector<cd> amps_;
};

// Density matrix over a register layout: Hermitian, PSD and unit trace
// within 1e-9 (PSD verified by eigendecomposition up to dimension 64).
class DensityMatrix {
 public:
  DensityMatrix(RegisterLayout layout, ComplexMatrix m);
  explicit DensityMatrix(const PureState& psi);

  const RegisterLayout& layout() const { return layout_; }
  const ComplexMatrix& matrix() const { return m_; }
  std::uint64_t dim() const { return m_.rows(); }

 private:
  RegisterLayout layout_;
  ComplexMatrix m_;
};

PureState tensor_product(const PureState& a, const PureState& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// Reduced density matrix on the kept registers; trace preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::string>& keep);
// Same, computed directly from a pure state without forming the full
// density matrix.
DensityMatrix reduced_density(const PureState& psi, const std::set<std::string>& keep);

// Canonical purification sum_i sqrt(l_i) |e_i>|i> on H (x) K with
// dim K = dim H. The purifying register is appended with the given name.
PureState purify(const DensityMatrix& rho, const std::string& k_name = "k",
                 Party owner = Party::alice);

// Applies a unitary to the listed registers (order of the list gives the
// qubit order of u, first register most significant). Identity elsewhere.
PureState apply_gate(const PureState& state, const ComplexMatrix& u,
                     const std::vector<std::string>& targets);

struct LocalUnitaryResult {
  ComplexMatrix u;  // acts on the local registers in layout order
  double overlap;
};

// Unitary on the local (K) registers maximising |<phi1|(I (x) U)|phi2>|.
// The achieved overlap equals the Uhlmann fidelity of the reduced states on
// the complement when dim K is large enough.
LocalUnitaryResult max_overlap_local_unitary(const PureState& phi1, const PureState& phi2,
                                             const std::set<std::string>& local);

// Marginal probability distribution of the named registers' computational
// basis values (register order = layout order of the named set).
std::vector<double> basis_marginal(const PureState& psi, const std::set<std::string>& regs);

}  // namespace qclab
