#pragma once

#include <vector>

#include "qclab/complex_matrix.hpp"

namespace qclab {

struct EigResult {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // columns; a = vectors * diag(values) * vectors†
};

// Cyclic Jacobi eigendecomposition of a Hermitian matrix. Residuals
// ‖Av − λv‖ stay well under 1e-8 at the dimensions used here.
// Throws if the input is not Hermitian within 1e-9.
EigResult hermitian_eig(const ComplexMatrix& m);

struct SvdResult {
  ComplexMatrix u;
  std::vector<double> singular_values;  // descending
  ComplexMatrix v;                      // a = u * diag(s) * v†
};

// One-sided Jacobi SVD for square matrices.
SvdResult svd(const ComplexMatrix& a);

// Sum of singular values. Square input required.
double trace_norm(const ComplexMatrix& a);

// Principal square root of a PSD Hermitian matrix (eigenvalues clamped at 0).
ComplexMatrix sqrtm_psd(const ComplexMatrix& h);

// Uhlmann fidelity Tr sqrt(sqrt(r1) r2 sqrt(r1)) of two density matrices,
// computed through matrix square roots. Used as an independent check of the
// overlap-maximisation route.
double fidelity_via_sqrtm(const ComplexMatrix& r1, const ComplexMatrix& r2);

// A unitary whose first column is the given unit vector; deterministic
// completion from the standard basis.
ComplexMatrix preparation_unitary(const std::vector<cd>& target);

}  // namespace qclab
