#include <doctest.h>

#include <cmath>

#include "qclab/info.hpp"
#include "qclab/linalg.hpp"
#include "qclab/sampling.hpp"

using namespace qclab;

namespace {

constexpr double kLn2 = 0.6931471805599453;

DensityMatrix qubit_density(const ComplexMatrix& m, const std::string& name = "q") {
  return DensityMatrix(RegisterLayout({{name, 1, Party::alice}}), m);
}

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ComplexMatrix plus_projector() {
  ComplexMatrix m(2, 2);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
  return m;
}

Encoding random_quantum_encoding(Rng& rng, std::size_t values, std::size_t dim) {
  auto priors = rng.rational_distribution(values, 16);
  std::vector<DensityMatrix> msgs;
  int qubits = 1;
  while ((std::size_t(1) << qubits) < dim) ++qubits;
  RegisterLayout l({{"m", qubits, Party::alice}});
  for (std::size_t x = 0; x < values; ++x) msgs.emplace_back(l, random_density(rng, l.dim()));
  return Encoding::quantum(priors, msgs);
}

Encoding random_classical_encoding(Rng& rng, std::size_t values, std::size_t space) {
  auto priors = rng.rational_distribution(values, 16);
  std::vector<std::vector<Rational>> msgs;
  for (std::size_t x = 0; x < values; ++x) msgs.push_back(rng.rational_distribution(space, 32));
  return Encoding::classical(priors, msgs);
}

}  // namespace

TEST_CASE("shannon entropy examples") {
  CHECK(shannon_entropy({Rational(1)}) == doctest::Approx(0.0));
  CHECK(shannon_entropy({Rational(1, 2), Rational(1, 2)}) == doctest::Approx(1.0));
  // binary entropy of 3/4 from the defining formula
  const double expect = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  CHECK(expect == doctest::Approx(0.811278).epsilon(1e-6));
  CHECK(shannon_entropy({Rational(3, 4), Rational(1, 4)}) == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(shannon_entropy({Rational(-1, 4), Rational(5, 4)}), std::invalid_argument);
}

TEST_CASE("von Neumann entropy examples") {
  CHECK(von_neumann_entropy(qubit_density(plus_projector())) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(von_neumann_entropy(qubit_density(diag2(0.5, 0.5))) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(qubit_density(diag2(0.75, 0.25))) ==
        doctest::Approx(0.811278).epsilon(1e-5));
  RegisterLayout l2({{"q", 2, Party::alice}});
  ComplexMatrix id4 = cd(0.25, 0) * ComplexMatrix::identity(4);
  CHECK(von_neumann_entropy(DensityMatrix(l2, id4)) == doctest::Approx(2.0));
}

TEST_CASE("mutual information on product and Bell states") {
  RegisterLayout l({{"a", 1, Party::alice}, {"b", 1, Party::bob}});
  // product state
  ComplexMatrix prod = kron(diag2(0.5, 0.5), diag2(1.0, 0.0));
  CHECK(mutual_information(DensityMatrix(l, prod), {"a"}) == doctest::Approx(0.0).epsilon(1e-9));
  // Bell pair: I = 2 S(A) = 2
  std::vector<cd> bell(4, cd(0, 0));
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  DensityMatrix rho(PureState(l, bell));
  CHECK(mutual_information(rho, {"a"}) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_THROWS_AS(mutual_information(rho, {}), std::invalid_argument);
  CHECK_THROWS_AS(mutual_information(rho, {"a", "b"}), std::invalid_argument);
}

TEST_CASE("chain identity holds on random tripartite states") {
  Rng rng(404);
  RegisterLayout l({{"a", 1, Party::alice}, {"b", 1, Party::alice}, {"c", 1, Party::bob}});
  for (int trial = 0; trial < 20; ++trial) {
    DensityMatrix rho(l, random_density(rng, 8));
    auto rep = check_chain_identity(rho, {"a"}, {"b"}, {"c"});
    CHECK(rep.pass);
    CHECK(rep.residual <= 1e-7);
    // bounds from the same family
    const double i = mutual_information(rho, {"a"});
    const double sa = von_neumann_entropy(partial_trace(rho, {"a"}));
    CHECK(i >= -1e-8);
    CHECK(i <= 2 * sa + 1e-8);
    CHECK(sa <= 1.0 + 1e-9);
    // subadditivity across the same cut
    const double sb = von_neumann_entropy(partial_trace(rho, {"b", "c"}));
    CHECK(von_neumann_entropy(rho) <= sa + sb + 1e-7);
  }
}

TEST_CASE("encoding mutual information examples") {
  // perfect one-bit encoding
  Encoding perfect = Encoding::quantum(
      {Rational(1, 2), Rational(1, 2)},
      {qubit_density(diag2(1, 0), "m"), qubit_density(diag2(0, 1), "m")});
  CHECK(encoding_mutual_information(perfect) == doctest::Approx(1.0).epsilon(1e-9));

  // constant encoding
  Encoding constant = Encoding::quantum(
      {Rational(1, 2), Rational(1, 2)},
      {qubit_density(diag2(1, 0), "m"), qubit_density(diag2(1, 0), "m")});
  CHECK(encoding_mutual_information(constant) == doctest::Approx(0.0).epsilon(1e-9));

  // |0><0| vs |+><+| : average has eigenvalues (1 ± 1/sqrt(2))/2
  Encoding mixed = Encoding::quantum(
      {Rational(1, 2), Rational(1, 2)},
      {qubit_density(diag2(1, 0), "m"), qubit_density(plus_projector(), "m")});
  const double lp = (1 + 1 / std::sqrt(2.0)) / 2, lm = (1 - 1 / std::sqrt(2.0)) / 2;
  const double expect = -(lp * std::log2(lp) + lm * std::log2(lm));
  CHECK(expect == doctest::Approx(0.600876).epsilon(1e-5));
  CHECK(encoding_mutual_information(mixed) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("encoding MI agrees with the joint-state mutual information") {
  Rng rng(777);
  for (int trial = 0; trial < 8; ++trial) {
    Encoding e = random_quantum_encoding(rng, 3, 2);
    const DensityMatrix joint = encoding_joint_density(e);
    CHECK(std::abs(encoding_mutual_information(e) - mutual_information(joint, {"x"})) <= 1e-8);
  }
  for (int trial = 0; trial < 8; ++trial) {
    Encoding e = random_classical_encoding(rng, 3, 4);
    const DensityMatrix joint = encoding_joint_density(e);
    CHECK(std::abs(encoding_mutual_information(e) - mutual_information(joint, {"x"})) <= 1e-8);
  }
}

TEST_CASE("total variation examples and trace norm agreement") {
  std::vector<Rational> p{Rational(3, 4), Rational(1, 4)};
  std::vector<Rational> q{Rational(1, 2), Rational(1, 2)};
  CHECK(total_variation(p, p) == Rational(0));
  CHECK(total_variation({Rational(1), Rational(0)}, {Rational(0), Rational(1)}) == Rational(2));
  CHECK(total_variation(p, q) == Rational(1, 2));
  CHECK_THROWS_AS(total_variation(p, {Rational(1)}), std::invalid_argument);

  // equals trace norm of the diagonal density difference
  ComplexMatrix d = diag2(0.75, 0.25) - diag2(0.5, 0.5);
  CHECK(std::abs(total_variation(p, q).to_double() - trace_norm(d)) <= 1e-9);
}

TEST_CASE("average encoding gap") {
  // constant encoding: everything zero
  Encoding constant = Encoding::classical(
      {Rational(1, 2), Rational(1, 2)},
      {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}});
  auto g0 = average_encoding_gap(constant);
  CHECK(g0.lhs == doctest::Approx(0.0));
  CHECK(g0.rhs == doctest::Approx(0.0));

  // perfect one-bit encoding: lhs = 1, rhs = sqrt(2 ln 2)
  Encoding perfect = Encoding::quantum(
      {Rational(1, 2), Rational(1, 2)},
      {qubit_density(diag2(1, 0), "m"), qubit_density(diag2(0, 1), "m")});
  auto g1 = average_encoding_gap(perfect);
  CHECK(g1.lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g1.rhs == doctest::Approx(std::sqrt(2 * kLn2)).epsilon(1e-12));
  CHECK(g1.rhs == doctest::Approx(1.177410).epsilon(1e-6));

  Rng rng(909);
  for (int trial = 0; trial < 50; ++trial) {
    Encoding e = (trial % 2 == 0) ? random_quantum_encoding(rng, 2 + trial % 3, 4)
                                  : random_classical_encoding(rng, 2 + trial % 3, 4);
    CHECK(average_encoding_gap(e).slack >= -1e-8);
  }
}

TEST_CASE("measurement can only shrink distance") {
  Rng rng(555);
  RegisterLayout l({{"q", 1, Party::alice}});
  SUBCASE("equal states") {
    DensityMatrix rho(l, random_density(rng, 2));
    std::vector<ComplexMatrix> povm{diag2(1, 0), diag2(0, 1)};
    auto md = measurement_distance_check(rho, rho, povm);
    CHECK(md.l1 == doctest::Approx(0.0));
    CHECK(md.tn == doctest::Approx(0.0));
  }
  SUBCASE("projective measurement in the eigenbasis of the difference saturates") {
    DensityMatrix r1(l, random_density(rng, 2));
    DensityMatrix r2(l, random_density(rng, 2));
    const auto eig = hermitian_eig(r1.matrix() - r2.matrix());
    std::vector<ComplexMatrix> povm;
    for (int k = 0; k < 2; ++k) {
      ComplexMatrix p(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p(i, j) = eig.vectors(i, k) * std::conj(eig.vectors(j, k));
      povm.push_back(p);
    }
    auto md = measurement_distance_check(r1, r2, povm);
    CHECK(md.l1 == doctest::Approx(md.tn).epsilon(1e-9));
  }
  SUBCASE("random POVMs on random pairs") {
    for (int trial = 0; trial < 20; ++trial) {
      DensityMatrix r1(l, random_density(rng, 2));
      DensityMatrix r2(l, random_density(rng, 2));
      auto povm = random_povm(rng, 2, 3);
      auto md = measurement_distance_check(r1, r2, povm);
      CHECK(md.l1 <= md.tn + 1e-8);
    }
  }
  SUBCASE("invalid POVM rejected") {
    DensityMatrix rho(l, random_density(rng, 2));
    std::vector<ComplexMatrix> bad{diag2(1, 0)};
    CHECK_THROWS_AS(measurement_distance_check(rho, rho, bad), std::invalid_argument);
  }
}

TEST_CASE("safe information bound") {
  // M2 constant, M1 one qubit: I <= 2
  RegisterLayout l({{"m1", 1, Party::alice}, {"m2", 1, Party::alice}});
  ComplexMatrix s0 = kron(diag2(1, 0), diag2(0.5, 0.5));
  ComplexMatrix s1 = kron(diag2(0, 1), diag2(0.5, 0.5));
  Encoding e = Encoding::quantum({Rational(1, 2), Rational(1, 2)},
                                 {DensityMatrix(l, s0), DensityMatrix(l, s1)});
  auto rep = check_safe_information_bound(e, {"m1"});
  CHECK(rep.pass);
  CHECK(rep.rhs == doctest::Approx(2.0));
  CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-9));

  // overhead depending on the value violates the precondition
  ComplexMatrix b0 = kron(diag2(1, 0), diag2(1, 0));
  ComplexMatrix b1 = kron(diag2(0, 1), diag2(0, 1));
  Encoding bad = Encoding::quantum({Rational(1, 2), Rational(1, 2)},
                                   {DensityMatrix(l, b0), DensityMatrix(l, b1)});
  CHECK_THROWS_AS(check_safe_information_bound(bad, {"m1"}), std::invalid_argument);

  // classical refinement: I <= a (= 1 bit here)
  Encoding ec = Encoding::classical(
      {Rational(1, 2), Rational(1, 2)},
      {{Rational(1, 2), Rational(1, 2), Rational(0), Rational(0)},
       {Rational(0), Rational(0), Rational(1, 2), Rational(1, 2)}});
  auto repc = check_safe_information_bound_classical(ec, 2, 2);
  CHECK(repc.pass);
  CHECK(repc.rhs == doctest::Approx(1.0));
  CHECK(repc.lhs == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("additivity identity") {
  // two independent uniform bits, message = the pair itself
  std::vector<Rational> priors(4, Rational(1, 4));
  std::vector<std::vector<Rational>> msgs;
  for (int v = 0; v < 4; ++v) {
    std::vector<Rational> d(4, Rational(0));
    d[v] = Rational(1);
    msgs.push_back(d);
  }
  Encoding e = Encoding::classical(priors, msgs);
  std::vector<std::vector<int>> labels{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  auto rep = check_additivity(e, labels);
  CHECK(rep.pass);
  CHECK(rep.lhs == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.rhs == doctest::Approx(2.0).epsilon(1e-9));

  // dependent components are rejected
  Encoding dep = Encoding::classical({Rational(1, 2), Rational(1, 2)},
                                     {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  std::vector<std::vector<int>> dep_labels{{0, 0}, {1, 1}};
  CHECK_THROWS_AS(check_additivity(dep, dep_labels), std::invalid_argument);
}

TEST_CASE("additivity on random product-law encodings") {
  Rng rng(808);
  for (int trial = 0; trial < 10; ++trial) {
    // independent labels: p(x1)p(x2), random messages per pair
    auto m1 = rng.rational_distribution(2, 8);
    auto m2 = rng.rational_distribution(2, 8);
    std::vector<Rational> priors;
    std::vector<std::vector<int>> labels;
    std::vector<std::vector<Rational>> msgs;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        priors.push_back(m1[a] * m2[b]);
        labels.push_back({a, b});
        msgs.push_back(rng.rational_distribution(4, 16));
      }
    auto rep = check_additivity(Encoding::classical(priors, msgs), labels);
    CHECK(rep.pass);
  }
}

TEST_CASE("averaging identity on random classical triples") {
  Rng rng(111);
  for (int trial = 0; trial < 10; ++trial) {
    auto joint = rng.rational_distribution(4, 16);  // p(x, y) over 2x2
    std::vector<Rational> priors;
    std::vector<std::pair<int, int>> labels;
    std::vector<std::vector<Rational>> msgs;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        priors.push_back(joint[x * 2 + y]);
        labels.push_back({x, y});
        msgs.push_back(rng.rational_distribution(3, 12));
      }
    auto rep = check_averaging(Encoding::classical(priors, msgs), labels);
    CHECK(rep.pass);
    CHECK(rep.residual <= 1e-7);
  }
  // quantum variant
  RegisterLayout l({{"m", 1, Party::alice}});
  for (int trial = 0; trial < 5; ++trial) {
    auto joint = rng.rational_distribution(4, 16);
    std::vector<Rational> priors;
    std::vector<std::pair<int, int>> labels;
    std::vector<DensityMatrix> msgs;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        priors.push_back(joint[x * 2 + y]);
        labels.push_back({x, y});
        msgs.emplace_back(l, random_density(rng, 2));
      }
    auto rep = check_averaging(Encoding::quantum(priors, msgs), labels);
    CHECK(rep.pass);
  }
}
