#include "qclab/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "qclab/linalg.hpp"

namespace qclab {

std::vector<Rational> Rng::rational_distribution(std::size_t size, std::int64_t denominator) {
  if (size == 0 || denominator < static_cast<std::int64_t>(size))
    throw std::invalid_argument("rational_distribution: denominator too small");
  // Distribute `denominator` units over `size` cells, each at least 1.
  std::vector<std::int64_t> units(size, 1);
  for (std::int64_t left = denominator - static_cast<std::int64_t>(size); left > 0; --left)
    units[below(size)] += 1;
  std::vector<Rational> out;
  out.reserve(size);
  for (std::int64_t u : units) out.emplace_back(u, denominator);
  return out;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
  ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.cgauss();
  // Gram-Schmidt on columns.
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cd dot = 0;
      for (std::size_t i = 0; i < dim; ++i) dot += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < dim; ++i) g(i, j) -= dot * g(i, k);
    }
    double n = 0;
    for (std::size_t i = 0; i < dim; ++i) n += std::norm(g(i, j));
    n = std::sqrt(n);
    if (n < 1e-12) throw std::runtime_error("random_unitary: degenerate draw");
    for (std::size_t i = 0; i < dim; ++i) g(i, j) /= n;
  }
  return g;
}

ComplexMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank) {
  if (rank == 0 || rank > dim) rank = dim;
  ComplexMatrix b(dim, rank);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < rank; ++j) b(i, j) = rng.cgauss();
  ComplexMatrix rho = b * b.adjoint();
  const double tr = rho.trace().real();
  rho = cd(1.0 / tr, 0) * rho;
  // Symmetrise exactly.
  for (std::size_t i = 0; i < dim; ++i) {
    rho(i, i) = cd(rho(i, i).real(), 0);
    for (std::size_t j = i + 1; j < dim; ++j) {
      const cd v = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
      rho(i, j) = v;
      rho(j, i) = std::conj(v);
    }
  }
  return rho;
}

std::vector<cd> random_state_vector(Rng& rng, std::size_t dim) {
  std::vector<cd> v(dim);
  double n = 0;
  for (cd& a : v) {
    a = rng.cgauss();
    n += std::norm(a);
  }
  n = std::sqrt(n);
  for (cd& a : v) a /= n;
  return v;
}

std::vector<ComplexMatrix> random_povm(Rng& rng, std::size_t dim, std::size_t outcomes) {
  std::vector<ComplexMatrix> raw;
  ComplexMatrix sum(dim, dim);
  for (std::size_t k = 0; k < outcomes; ++k) {
    ComplexMatrix b(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) b(i, j) = rng.cgauss();
    ComplexMatrix e = b * b.adjoint();
    sum = sum + e;
    raw.push_back(std::move(e));
  }
  // Conjugate by sum^(-1/2) so the elements add to identity.
  const EigResult es = hermitian_eig(sum);
  ComplexMatrix inv_sqrt(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double l = es.values[k];
    if (l <= 1e-12) throw std::runtime_error("random_povm: singular normaliser");
    const double f = 1.0 / std::sqrt(l);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        inv_sqrt(i, j) += f * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  std::vector<ComplexMatrix> povm;
  povm.reserve(outcomes);
  for (const ComplexMatrix& e : raw) povm.push_back(inv_sqrt * e * inv_sqrt);
  return povm;
}

}  // namespace qclab
