#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qclab {

using cd = std::complex<double>;

// Dense row-major complex matrix. Small by design: everything in this
// project lives at dimensions of a few thousand or less.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cd(0, 0)) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<double>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<cd>& data() const { return data_; }
  std::vector<cd>& data() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cd trace() const;
  double max_abs() const;
  double frobenius_norm() const;

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
  bool all_finite() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(cd s, const ComplexMatrix& a);

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<cd> data_;
};

// Kronecker product; (a ⊗ b) with a's indices most significant.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

std::vector<cd> kron(const std::vector<cd>& a, const std::vector<cd>& b);

}  // namespace qclab
