#include "qclab/quantum_state.hpp"

#include <algorithm>
#include <cmath>

#include "qclab/linalg.hpp"

namespace qclab {

namespace {

// Bit-spreading helper: maps a compact k-bit value onto absolute qubit
// positions (MSB of the compact value -> first listed position).
struct BitSpreader {
  std::vector<std::uint64_t> weights;  // weight of compact bit j (MSB first)

  BitSpreader(const std::vector<int>& positions, int total) {
    weights.resize(positions.size());
    for (std::size_t j = 0; j < positions.size(); ++j)
      weights[j] = std::uint64_t(1) << (total - 1 - positions[j]);
  }
  std::size_t bits() const { return weights.size(); }
  std::uint64_t spread(std::uint64_t compact) const {
    std::uint64_t out = 0;
    const std::size_t k = weights.size();
    for (std::size_t j = 0; j < k; ++j)
      if ((compact >> (k - 1 - j)) & 1u) out |= weights[j];
    return out;
  }
};

std::vector<int> positions_of(const RegisterLayout& layout, const std::vector<std::string>& regs) {
  std::vector<int> pos;
  for (const std::string& name : regs) {
    const auto p = layout.qubit_positions(name);
    pos.insert(pos.end(), p.begin(), p.end());
  }
  return pos;
}

std::vector<int> complement_positions(const RegisterLayout& layout, const std::vector<int>& taken) {
  std::vector<bool> used(layout.total_qubits(), false);
  for (int p : taken) used[p] = true;
  std::vector<int> out;
  for (int p = 0; p < layout.total_qubits(); ++p)
    if (!used[p]) out.push_back(p);
  return out;
}

std::vector<std::string> ordered_names(const RegisterLayout& layout,
                                       const std::set<std::string>& names) {
  std::vector<std::string> out;
  for (const Register& r : layout.registers())
    if (names.count(r.name)) out.push_back(r.name);
  if (out.size() != names.size()) {
    for (const std::string& n : names)
      if (!layout.contains(n)) throw std::invalid_argument("unknown register '" + n + "'");
  }
  return out;
}

}  // namespace

PureState::PureState(RegisterLayout layout, std::vector<cd> amps)
    : layout_(std::move(layout)), amps_(std::move(amps)) {
  if (amps_.size() != layout_.dim())
    throw std::invalid_argument("amplitude vector size does not match layout");
  const double n = norm();
  if (std::abs(n - 1.0) > 1e-9)
    throw std::invalid_argument("state not normalised (norm " + std::to_string(n) + ")");
  normalize_phase();
}

PureState PureState::basis(RegisterLayout layout, std::uint64_t value) {
  if (value >= layout.dim()) throw std::invalid_argument("basis value out of range");
  std::vector<cd> amps(layout.dim(), cd(0, 0));
  amps[value] = 1.0;
  return PureState(std::move(layout), std::move(amps));
}

double PureState::norm() const {
  double s = 0;
  for (const cd& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void PureState::renormalize() {
  const double n = norm();
  if (n <= 0) throw std::runtime_error("cannot renormalise zero state");
  for (cd& a : amps_) a /= n;
}

void PureState::normalize_phase() {
  for (const cd& a : amps_) {
    const double m = std::abs(a);
    if (m > 1e-12) {
      const cd rot = std::conj(a) / m;
      if (std::abs(rot - cd(1, 0)) > 1e-15)
        for (cd& b : amps_) b *= rot;
      return;
    }
  }
}

cd PureState::inner(const PureState& other) const {
  if (!(layout_ == other.layout_)) throw std::invalid_argument("inner: layout mismatch");
  cd s = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
  return s;
}

DensityMatrix::DensityMatrix(RegisterLayout layout, ComplexMatrix m)
    : layout_(std::move(layout)), m_(std::move(m)) {
  if (m_.rows() != layout_.dim() || m_.cols() != layout_.dim())
    throw std::invalid_argument("density matrix size does not match layout");
  if (!m_.all_finite()) throw std::invalid_argument("density matrix with non-finite entries");
  if (!m_.is_hermitian(1e-9)) throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > 1e-9 || std::abs(m_.trace().imag()) > 1e-9)
    throw std::invalid_argument("density matrix trace != 1");
  if (m_.rows() <= 64) {
    const EigResult e = hermitian_eig(m_);
    if (!e.values.empty() && e.values.back() < -1e-9)
      throw std::invalid_argument("density matrix not PSD (min eigenvalue " +
                                  std::to_string(e.values.back()) + ")");
  }
}

DensityMatrix::DensityMatrix(const PureState& psi) : layout_(psi.layout()) {
  const auto& a = psi.amps();
  m_ = ComplexMatrix(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == cd(0, 0)) continue;
    for (std::size_t j = 0; j < a.size(); ++j) m_(i, j) = a[i] * std::conj(a[j]);
  }
}

PureState tensor_product(const PureState& a, const PureState& b) {
  return PureState(a.layout().concat(b.layout()), kron(a.amps(), b.amps()));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.layout().concat(b.layout()), kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::string>& keep) {
  const RegisterLayout out_layout = rho.layout().keep(keep);
  const auto keep_names = ordered_names(rho.layout(), keep);
  const int total = rho.layout().total_qubits();
  const BitSpreader ks(positions_of(rho.layout(), keep_names), total);
  const BitSpreader es(complement_positions(rho.layout(), positions_of(rho.layout(), keep_names)),
                       total);
  const std::uint64_t dk = std::uint64_t(1) << ks.bits();
  const std::uint64_t de = std::uint64_t(1) << es.bits();
  ComplexMatrix out(dk, dk);
  for (std::uint64_t e = 0; e < de; ++e) {
    const std::uint64_t eb = es.spread(e);
    for (std::uint64_t i = 0; i < dk; ++i) {
      const std::uint64_t ib = ks.spread(i) | eb;
      for (std::uint64_t j = 0; j < dk; ++j) out(i, j) += rho.matrix()(ib, ks.spread(j) | eb);
    }
  }
  return DensityMatrix(out_layout, std::move(out));
}

DensityMatrix reduced_density(const PureState& psi, const std::set<std::string>& keep) {
  const RegisterLayout out_layout = psi.layout().keep(keep);
  const auto keep_names = ordered_names(psi.layout(), keep);
  const int total = psi.layout().total_qubits();
  const BitSpreader ks(positions_of(psi.layout(), keep_names), total);
  const BitSpreader es(complement_positions(psi.layout(), positions_of(psi.layout(), keep_names)),
                       total);
  const std::uint64_t dk = std::uint64_t(1) << ks.bits();
  const std::uint64_t de = std::uint64_t(1) << es.bits();
  ComplexMatrix out(dk, dk);
  std::vector<cd> slice(dk);
  for (std::uint64_t e = 0; e < de; ++e) {
    const std::uint64_t eb = es.spread(e);
    for (std::uint64_t i = 0; i < dk; ++i) slice[i] = psi.amps()[ks.spread(i) | eb];
    for (std::uint64_t i = 0; i < dk; ++i) {
      if (slice[i] == cd(0, 0)) continue;
      for (std::uint64_t j = 0; j < dk; ++j) out(i, j) += slice[i] * std::conj(slice[j]);
    }
  }
  return DensityMatrix(out_layout, std::move(out));
}

PureState purify(const DensityMatrix& rho, const std::string& k_name, Party owner) {
  if (rho.layout().contains(k_name))
    throw std::invalid_argument("purifying register name '" + k_name + "' already in layout");
  const EigResult e = hermitian_eig(rho.matrix());
  const std::uint64_t d = rho.dim();
  std::vector<Register> regs = rho.layout().registers();
  regs.push_back({k_name, rho.layout().total_qubits(), owner});
  RegisterLayout layout(std::move(regs));
  std::vector<cd> amps(d * d, cd(0, 0));
  for (std::uint64_t k = 0; k < d; ++k) {
    const double l = e.values[k];
    if (l <= 0) continue;
    const double sl = std::sqrt(l);
    for (std::uint64_t h = 0; h < d; ++h) amps[h * d + k] = sl * e.vectors(h, k);
  }
  PureState psi(std::move(layout), std::move(amps));
  psi.renormalize();
  psi.normalize_phase();
  return psi;
}

PureState apply_gate(const PureState& state, const ComplexMatrix& u,
                     const std::vector<std::string>& targets) {
  if (targets.empty()) throw std::invalid_argument("apply_gate: no target registers");
  {
    std::set<std::string> uniq(targets.begin(), targets.end());
    if (uniq.size() != targets.size())
      throw std::invalid_argument("apply_gate: duplicate target register");
  }
  const int total = state.layout().total_qubits();
  const std::vector<int> tpos = positions_of(state.layout(), targets);
  const std::uint64_t dk = std::uint64_t(1) << tpos.size();
  if (u.rows() != dk || u.cols() != dk)
    throw std::invalid_argument("apply_gate: unitary dimension does not match targets");
  if (!u.is_unitary(1e-9)) throw std::invalid_argument("apply_gate: matrix not unitary");

  const BitSpreader ts(tpos, total);
  const BitSpreader es(complement_positions(state.layout(), tpos), total);
  const std::uint64_t de = std::uint64_t(1) << es.bits();

  std::vector<cd> amps = state.amps();
  std::vector<cd> in(dk), out(dk);
  std::vector<std::uint64_t> idx(dk);
  for (std::uint64_t a = 0; a < dk; ++a) idx[a] = ts.spread(a);
  for (std::uint64_t e = 0; e < de; ++e) {
    const std::uint64_t eb = es.spread(e);
    for (std::uint64_t a = 0; a < dk; ++a) in[a] = amps[idx[a] | eb];
    for (std::uint64_t a = 0; a < dk; ++a) {
      cd s = 0;
      for (std::uint64_t b = 0; b < dk; ++b) s += u(a, b) * in[b];
      out[a] = s;
    }
    for (std::uint64_t a = 0; a < dk; ++a) amps[idx[a] | eb] = out[a];
  }
  PureState result(state.layout(), std::move(amps));
  return result;
}

LocalUnitaryResult max_overlap_local_unitary(const PureState& phi1, const PureState& phi2,
                                             const std::set<std::string>& local) {
  if (local.empty()) throw std::invalid_argument("max_overlap_local_unitary: empty local set");
  if (!(phi1.layout() == phi2.layout()))
    throw std::invalid_argument("max_overlap_local_unitary: layout mismatch");
  const auto local_names = ordered_names(phi1.layout(), local);
  const int total = phi1.layout().total_qubits();
  const std::vector<int> kpos = positions_of(phi1.layout(), local_names);
  const BitSpreader ks(kpos, total);
  const BitSpreader hs(complement_positions(phi1.layout(), kpos), total);
  const std::uint64_t dk = std::uint64_t(1) << ks.bits();
  const std::uint64_t dh = std::uint64_t(1) << hs.bits();

  // Cross-Gram of the two states reshaped as dh x dk matrices.
  ComplexMatrix g(dk, dk);
  for (std::uint64_t h = 0; h < dh; ++h) {
    const std::uint64_t hb = hs.spread(h);
    for (std::uint64_t k1 = 0; k1 < dk; ++k1) {
      const cd m1 = phi1.amps()[hb | ks.spread(k1)];
      if (m1 == cd(0, 0)) continue;
      for (std::uint64_t k2 = 0; k2 < dk; ++k2)
        g(k1, k2) += std::conj(m1) * phi2.amps()[hb | ks.spread(k2)];
    }
  }
  // max over unitary U of |Tr(U g^T)| is the trace norm of g, attained at
  // U = V W† where g^T = W S V†.
  const SvdResult s = svd(g.transpose());
  LocalUnitaryResult res;
  res.u = s.v * s.u.adjoint();
  res.overlap = 0;
  for (double x : s.singular_values) res.overlap += x;
  return res;
}

std::vector<double> basis_marginal(const PureState& psi, const std::set<std::string>& regs) {
  const auto names = ordered_names(psi.layout(), regs);
  const int total = psi.layout().total_qubits();
  const std::vector<int> pos = positions_of(psi.layout(), names);
  const BitSpreader ms(pos, total);
  const BitSpreader es(complement_positions(psi.layout(), pos), total);
  const std::uint64_t dm = std::uint64_t(1) << ms.bits();
  const std::uint64_t de = std::uint64_t(1) << es.bits();
  std::vector<double> out(dm, 0.0);
  for (std::uint64_t m = 0; m < dm; ++m) {
    const std::uint64_t mb = ms.spread(m);
    for (std::uint64_t e = 0; e < de; ++e) out[m] += std::norm(psi.amps()[mb | es.spread(e)]);
  }
  return out;
}

}  // namespace qclab
