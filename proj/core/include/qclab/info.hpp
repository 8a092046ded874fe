#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qclab/quantum_state.hpp"
#include "qclab/rational.hpp"

namespace qclab {

// Classical random variable X with a per-value message object: either an
// exact rational distribution over a common sample space or a density
// matrix over a common layout.
class Encoding {
 public:
  static Encoding classical(std::vector<Rational> priors,
                            std::vector<std::vector<Rational>> message_dists);
  static Encoding quantum(std::vector<Rational> priors, std::vector<DensityMatrix> messages);

  bool is_classical() const { return !classical_.empty(); }
  std::size_t values() const { return priors_.size(); }
  const std::vector<Rational>& priors() const { return priors_; }
  const std::vector<std::vector<Rational>>& classical_messages() const { return classical_; }
  const std::vector<DensityMatrix>& quantum_messages() const { return quantum_; }

  std::vector<Rational> average_classical() const;
  DensityMatrix average_quantum() const;

 private:
  std::vector<Rational> priors_;
  std::vector<std::vector<Rational>> classical_;
  std::vector<DensityMatrix> quantum_;
};

// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy(const std::vector<Rational>& p);
double shannon_entropy_real(const std::vector<double>& p);

// Entropy of the eigenvalue spectrum, base 2. Eigenvalues in [-1e-10, 0]
// are clamped to zero first.
double von_neumann_entropy(const DensityMatrix& rho);

// S(A) + S(B) - S(AB) across the cut; cut must be nonempty and proper.
double mutual_information(const DensityMatrix& rho, const std::set<std::string>& cut);

// S(sigma) - sum_x p_x S(sigma_x), or the Shannon analogue.
double encoding_mutual_information(const Encoding& e);

// l1 distance sum |p - q|, in [0, 2]. Exact.
Rational total_variation(const std::vector<Rational>& p, const std::vector<Rational>& q);

struct EncodingGap {
  double lhs;    // sum_x p_x dist(sigma_x, sigma)
  double rhs;    // sqrt(2 ln 2 * I(X:M))
  double slack;  // rhs - lhs
};

// Average distance of codewords to the average codeword versus the mutual
// information bound.
EncodingGap average_encoding_gap(const Encoding& e);

struct MeasurementDistance {
  double l1;  // distance of outcome distributions
  double tn;  // trace norm of the state difference
};

// Outcome distributions of a POVM can only be closer than the states:
// checks l1 <= tn. POVM elements must be PSD and sum to identity (1e-8).
MeasurementDistance measurement_distance_check(const DensityMatrix& rho1,
                                               const DensityMatrix& rho2,
                                               const std::vector<ComplexMatrix>& povm);

struct IdentityReport {
  std::string identity;
  double lhs = 0;
  double rhs = 0;
  double residual = 0;  // |lhs - rhs| for equalities, rhs - lhs slack for bounds
  bool is_equality = true;
  bool pass = false;
};

// I(A:BC) = I(A:B) + I(AB:C) - I(B:C); residual within 1e-7.
IdentityReport check_chain_identity(const DensityMatrix& rho, const std::set<std::string>& a,
                                    const std::set<std::string>& b, const std::set<std::string>& c);

// For a two-part message whose second part has an input-independent state,
// I(X:M) <= 2a with a the qubit count of the first part; classical
// encodings tighten this to I(X:M) <= a. The split of a classical sample
// space is given by the sizes of the two parts (index = m1 * size2 + m2).
IdentityReport check_safe_information_bound(const Encoding& e,
                                            const std::set<std::string>& main_regs);
IdentityReport check_safe_information_bound_classical(const Encoding& e, std::size_t size1,
                                                      std::size_t size2);

// For independent components X_1..X_n:
// I(X_1..X_n : M) = sum_i I(X_i : M X_1..X_{i-1}).
// Value labels give the component decomposition of each encoded value.
IdentityReport check_additivity(const Encoding& e,
                                const std::vector<std::vector<int>>& value_labels);

// I(Y:MX) = I(X:Y) + E_X[I((Y:M)|X=x)] for an encoding of pairs (x, y).
IdentityReport check_averaging(const Encoding& e,
                               const std::vector<std::pair<int, int>>& value_labels);

// Entropy of a classical-quantum (or classical-classical) system
// S(X, M) = H(p) + sum_x p_x S(sigma_x); used by the identity checks.
double cq_entropy(const Encoding& e);

// I(X_S : M X_T) computed from grouped entropies of an encoding whose values
// carry integer component labels.
double grouped_mutual_information(const Encoding& e,
                                  const std::vector<std::vector<int>>& value_labels,
                                  const std::vector<int>& side_components);

// I(X_i : M X_1..X_{i-1}), the additivity summand, from grouped entropies.
double conditional_information_term(const Encoding& e,
                                    const std::vector<std::vector<int>>& value_labels,
                                    std::size_t component);

// The joint state sum_x p_x |x><x| (x) sigma_x as one density matrix, the
// label register padded to a power of two. Classical messages become
// diagonal blocks on a register named `msg_reg`.
DensityMatrix encoding_joint_density(const Encoding& e, const std::string& label_reg = "x",
                                     const std::string& msg_reg = "m");

}  // namespace qclab
