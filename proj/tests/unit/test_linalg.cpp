#include <doctest.h>

#include <cmath>

#include "qclab/linalg.hpp"
#include "qclab/sampling.hpp"

using namespace qclab;

namespace {

double eig_residual(const ComplexMatrix& a, const EigResult& e) {
  double worst = 0;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cd av = 0;
      for (std::size_t j = 0; j < n; ++j) av += a(i, j) * e.vectors(j, k);
      av -= e.values[k] * e.vectors(i, k);
      s += std::norm(av);
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

}  // namespace

TEST_CASE("hermitian_eig on known spectra") {
  ComplexMatrix d(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1;
  auto e = hermitian_eig(d);
  CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMatrix x(2, 2);
  x(0, 1) = 1;
  x(1, 0) = 1;
  auto ex = hermitian_eig(x);
  CHECK(ex.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ex.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m(0, 1) = cd(1, 0);
  m(1, 0) = cd(0.5, 0);
  CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("hermitian_eig residuals and orthonormality on random matrices") {
  Rng rng(20240501);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 8;
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = rng.gauss();
      for (std::size_t j = i + 1; j < n; ++j) {
        a(i, j) = rng.cgauss();
        a(j, i) = std::conj(a(i, j));
      }
    }
    auto e = hermitian_eig(a);
    CHECK(eig_residual(a, e) <= 1e-8);
    CHECK(e.vectors.is_unitary(1e-8));
    for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k - 1] >= e.values[k]);
  }
}

TEST_CASE("trace_norm on known values") {
  ComplexMatrix d(2, 2);
  d(0, 0) = 1;
  d(1, 1) = -1;
  CHECK(trace_norm(d) == doctest::Approx(2.0).epsilon(1e-12));

  // |0><0| - I/2 has eigenvalues +1/2 and -1/2.
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = -0.5;
  CHECK(trace_norm(m) == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(7);
  ComplexMatrix rho = random_density(rng, 4);
  CHECK(trace_norm(rho) == doctest::Approx(1.0).epsilon(1e-9));

  ComplexMatrix rect(2, 3);
  CHECK_THROWS_AS(trace_norm(rect), std::invalid_argument);
}

TEST_CASE("svd reconstructs random matrices") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 6;
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.cgauss();
    auto s = svd(a);
    CHECK(s.u.is_unitary(1e-9));
    CHECK(s.v.is_unitary(1e-9));
    ComplexMatrix sigma(n, n);
    for (std::size_t i = 0; i < n; ++i) sigma(i, i) = s.singular_values[i];
    CHECK((a - s.u * sigma * s.v.adjoint()).max_abs() <= 1e-9);
    // trace_norm via svd equals sum of singular values of the general path
    double sum = 0;
    for (double x : s.singular_values) sum += x;
    CHECK(trace_norm(a) == doctest::Approx(sum).epsilon(1e-9));
  }
}

TEST_CASE("svd handles rank-deficient input") {
  ComplexMatrix a(3, 3);
  a(0, 0) = 2;  // rank 1
  auto s = svd(a);
  CHECK(s.singular_values[0] == doctest::Approx(2.0));
  CHECK(s.singular_values[1] == doctest::Approx(0.0));
  CHECK(s.u.is_unitary(1e-9));
}

TEST_CASE("sqrtm_psd squares back") {
  Rng rng(123);
  ComplexMatrix rho = random_density(rng, 4);
  ComplexMatrix s = sqrtm_psd(rho);
  CHECK((s * s - rho).max_abs() <= 1e-9);
}

TEST_CASE("preparation_unitary maps |0..0> to the target") {
  Rng rng(5);
  auto target = random_state_vector(rng, 8);
  ComplexMatrix u = preparation_unitary(target);
  CHECK(u.is_unitary(1e-9));
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(u(i, 0) - target[i]) <= 1e-12);
}
