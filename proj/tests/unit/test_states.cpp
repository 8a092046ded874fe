#include <doctest.h>

#include <cmath>

#include "qclab/linalg.hpp"
#include "qclab/quantum_state.hpp"
#include "qclab/sampling.hpp"

using namespace qclab;

namespace {

RegisterLayout two_qubits() {
  return RegisterLayout({{"a", 1, Party::alice}, {"b", 1, Party::bob}});
}

DensityMatrix density_from(const RegisterLayout& l, const ComplexMatrix& m) {
  return DensityMatrix(l, m);
}

}  // namespace

TEST_CASE("tensor product of basis states concatenates") {
  RegisterLayout la({{"a", 1, Party::alice}});
  RegisterLayout lb({{"b", 1, Party::bob}});
  PureState zero = PureState::basis(la, 0);
  PureState one = PureState::basis(lb, 1);
  PureState prod = tensor_product(zero, one);
  CHECK(prod.layout().total_qubits() == 2);
  CHECK(prod.amps()[1] == cd(1, 0));  // |01>

  // kron of diagonal densities
  ComplexMatrix half(2, 2);
  half(0, 0) = 0.5;
  half(1, 1) = 0.5;
  ComplexMatrix pure0(2, 2);
  pure0(0, 0) = 1.0;
  DensityMatrix d = tensor_product(density_from(la, half), density_from(lb, pure0));
  CHECK(d.matrix()(0, 0) == cd(0.5, 0));
  CHECK(d.matrix()(1, 1) == cd(0, 0));
  CHECK(d.matrix()(2, 2) == cd(0.5, 0));
  CHECK(d.matrix()(3, 3) == cd(0, 0));
}

TEST_CASE("tensor product rejects duplicate names and capacity overflow") {
  RegisterLayout la({{"a", 1, Party::alice}});
  PureState s = PureState::basis(la, 0);
  CHECK_THROWS_AS(tensor_product(s, s), std::invalid_argument);
  CHECK_THROWS_AS(RegisterLayout({{"x", 13, Party::alice}}), CapacityError);
}

TEST_CASE("partial trace of product and Bell states") {
  RegisterLayout l = two_qubits();
  // product state |1>|0>
  PureState p = PureState::basis(l, 2);
  DensityMatrix r = reduced_density(p, {"a"});
  CHECK(r.matrix()(1, 1) == cd(1, 0));

  // Bell pair
  std::vector<cd> bell(4, cd(0, 0));
  bell[0] = 1.0 / std::sqrt(2.0);
  bell[3] = 1.0 / std::sqrt(2.0);
  PureState b(l, bell);
  DensityMatrix rb = reduced_density(b, {"b"});
  CHECK(std::abs(rb.matrix()(0, 0) - cd(0.5, 0)) <= 1e-12);
  CHECK(std::abs(rb.matrix()(1, 1) - cd(0.5, 0)) <= 1e-12);
  CHECK(std::abs(rb.matrix()(0, 1)) <= 1e-12);
}

TEST_CASE("partial trace matches entrywise basis sum on random states") {
  Rng rng(42);
  RegisterLayout l = two_qubits();
  for (int trial = 0; trial < 10; ++trial) {
    PureState psi(l, random_state_vector(rng, 4));
    DensityMatrix full(psi);
    DensityMatrix traced = partial_trace(full, {"a"});
    // independent oracle: direct sum over the discarded basis
    ComplexMatrix expect(2, 2);
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) expect(i, j) += psi.amps()[i * 2 + b] * std::conj(psi.amps()[j * 2 + b]);
    CHECK((traced.matrix() - expect).max_abs() <= 1e-12);
    DensityMatrix direct = reduced_density(psi, {"a"});
    CHECK((direct.matrix() - expect).max_abs() <= 1e-12);
  }
}

TEST_CASE("partial trace rejects unknown register names") {
  RegisterLayout l = two_qubits();
  PureState p = PureState::basis(l, 0);
  CHECK_THROWS_AS(reduced_density(p, {"zz"}), std::invalid_argument);
}

TEST_CASE("purify recovers the input under partial trace") {
  RegisterLayout la({{"h", 1, Party::alice}});
  ComplexMatrix pure0(2, 2);
  pure0(0, 0) = 1.0;
  PureState p = purify(DensityMatrix(la, pure0));
  CHECK(std::abs(p.amps()[0] - cd(1, 0)) <= 1e-12);  // |0>|0>

  ComplexMatrix mixed(2, 2);
  mixed(0, 0) = 0.5;
  mixed(1, 1) = 0.5;
  PureState bell = purify(DensityMatrix(la, mixed));
  CHECK(std::abs(bell.amps()[0] - cd(1 / std::sqrt(2.0), 0)) <= 1e-9);
  CHECK(std::abs(bell.amps()[3] - cd(1 / std::sqrt(2.0), 0)) <= 1e-9);

  Rng rng(77);
  RegisterLayout l2({{"h", 2, Party::alice}});
  for (int trial = 0; trial < 10; ++trial) {
    DensityMatrix rho(l2, random_density(rng, 4, 2));
    PureState psi = purify(rho);
    DensityMatrix back = reduced_density(psi, {"h"});
    CHECK((back.matrix() - rho.matrix()).max_abs() <= 1e-9);
  }
}

TEST_CASE("apply_gate basics and round trip") {
  RegisterLayout l = two_qubits();
  PureState p = PureState::basis(l, 0);
  PureState same = apply_gate(p, ComplexMatrix::identity(2), {"a"});
  CHECK(same.amps()[0] == cd(1, 0));

  ComplexMatrix x(2, 2);
  x(0, 1) = 1;
  x(1, 0) = 1;
  PureState flipped = apply_gate(p, x, {"a"});
  CHECK(flipped.amps()[2] == cd(1, 0));  // |10>

  Rng rng(11);
  PureState psi(l, random_state_vector(rng, 4));
  ComplexMatrix u = random_unitary(rng, 4);
  PureState there = apply_gate(psi, u, {"a", "b"});
  PureState back = apply_gate(there, u.adjoint(), {"a", "b"});
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(back.amps()[i] - psi.amps()[i]) <= 1e-9);
  CHECK(there.norm() == doctest::Approx(1.0).epsilon(1e-10));

  ComplexMatrix not_unitary(2, 2);
  not_unitary(0, 0) = 2;
  CHECK_THROWS_AS(apply_gate(p, not_unitary, {"a"}), std::invalid_argument);
}

TEST_CASE("apply_gate respects target ordering") {
  RegisterLayout l = two_qubits();
  // CNOT with control = first listed register
  ComplexMatrix cnot(4, 4);
  cnot(0, 0) = 1;
  cnot(1, 1) = 1;
  cnot(2, 3) = 1;
  cnot(3, 2) = 1;
  PureState p = PureState::basis(l, 1);  // |a=0, b=1>
  // control b, target a: should flip a
  PureState q = apply_gate(p, cnot, {"b", "a"});
  CHECK(q.amps()[3] == cd(1, 0));  // |11>
}

TEST_CASE("max_overlap_local_unitary examples") {
  RegisterLayout l({{"h", 1, Party::alice}, {"k", 1, Party::bob}});
  std::vector<cd> bell(4, cd(0, 0));
  bell[0] = 1.0 / std::sqrt(2.0);
  bell[3] = 1.0 / std::sqrt(2.0);
  PureState phi(l, bell);

  SUBCASE("identical states reach overlap 1 with zero post distance") {
    auto res = max_overlap_local_unitary(phi, phi, {"k"});
    CHECK(res.overlap == doctest::Approx(1.0).epsilon(1e-10));
    PureState moved = apply_gate(phi, res.u, {"k"});
    CHECK(std::abs(std::abs(phi.inner(moved)) - 1.0) <= 1e-9);
  }

  SUBCASE("orthogonal supports give overlap 0") {
    PureState p00 = PureState::basis(l, 0);  // purifies |0><0|
    PureState p11 = PureState::basis(l, 3);  // purifies |1><1|
    auto res = max_overlap_local_unitary(p00, p11, {"k"});
    CHECK(res.overlap <= 1e-10);
  }

  SUBCASE("empty local set is rejected") {
    CHECK_THROWS_AS(max_overlap_local_unitary(phi, phi, {}), std::invalid_argument);
  }
}

TEST_CASE("max overlap equals Uhlmann fidelity on random pairs") {
  Rng rng(2025);
  RegisterLayout l({{"h", 2, Party::alice}, {"k", 2, Party::bob}});
  for (int trial = 0; trial < 25; ++trial) {
    RegisterLayout lh({{"h", 2, Party::alice}});
    ComplexMatrix r1 = random_density(rng, 4);
    ComplexMatrix r2 = random_density(rng, 4);
    PureState phi1 = purify(DensityMatrix(lh, r1), "k", Party::bob);
    PureState phi2 = purify(DensityMatrix(lh, r2), "k", Party::bob);
    auto res = max_overlap_local_unitary(phi1, phi2, {"k"});
    const double f = fidelity_via_sqrtm(r1, r2);
    CHECK(std::abs(res.overlap - f) <= 1e-8);

    // achieved pure-state distance obeys the doubled square-root bound
    PureState moved = apply_gate(phi2, res.u, {"k"});
    const double ov = std::abs(phi1.inner(moved));
    const double pure_dist = 2.0 * std::sqrt(std::max(0.0, 1.0 - ov * ov));
    const double mixed_dist = trace_norm(r1 - r2);
    CHECK(pure_dist <= 2.0 * std::sqrt(mixed_dist) + 1e-8);
  }
}

TEST_CASE("trace norm of density differences stays within [0, 2]") {
  Rng rng(246);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix r1 = random_density(rng, 4);
    ComplexMatrix r2 = random_density(rng, 4);
    const double d = trace_norm(r1 - r2);
    CHECK(d >= -1e-12);
    CHECK(d <= 2.0 + 1e-9);
  }
}

TEST_CASE("max overlap beats random local unitaries") {
  Rng rng(31337);
  RegisterLayout lh({{"h", 1, Party::alice}});
  ComplexMatrix r1 = random_density(rng, 2);
  ComplexMatrix r2 = random_density(rng, 2);
  PureState phi1 = purify(DensityMatrix(lh, r1), "k");
  PureState phi2 = purify(DensityMatrix(lh, r2), "k");
  auto res = max_overlap_local_unitary(phi1, phi2, {"k"});
  for (int i = 0; i < 100; ++i) {
    ComplexMatrix u = random_unitary(rng, 2);
    PureState moved = apply_gate(phi2, u, {"k"});
    CHECK(std::abs(phi1.inner(moved)) <= res.overlap + 1e-9);
  }
}

TEST_CASE("global phase is normalised deterministically") {
  RegisterLayout l({{"a", 1, Party::alice}});
  std::vector<cd> amps = {cd(0, -1), cd(0, 0)};
  PureState p(l, amps);
  CHECK(p.amps()[0].real() == doctest::Approx(1.0));
  CHECK(std::abs(p.amps()[0].imag()) <= 1e-12);
}

TEST_CASE("density matrix validation") {
  RegisterLayout l({{"a", 1, Party::alice}});
  ComplexMatrix bad(2, 2);
  bad(0, 0) = 2.0;  // trace 2
  CHECK_THROWS_AS(DensityMatrix(l, bad), std::invalid_argument);
  ComplexMatrix neg(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;  // not PSD
  CHECK_THROWS_AS(DensityMatrix(l, neg), std::invalid_argument);
}
