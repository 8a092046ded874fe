#include <doctest.h>

#include "qclab/generators.hpp"
#include "qclab/serialize.hpp"

using namespace qclab;

TEST_CASE("game and distribution round trip") {
  GameSpec g = GameSpec::equality(2);
  g.promise = {{0, 0}, {1, 2}};
  const json j = to_json(g);
  GameSpec back = game_from_json(j);
  CHECK(to_json(back).dump() == j.dump());

  Rng rng(3);
  auto d = random_joint_distribution(rng, 3, 2);
  const json jd = to_json(d);
  JointDistribution db = distribution_from_json(jd);
  CHECK(to_json(db).dump() == jd.dump());
  for (std::size_t k = 0; k < d.p.size(); ++k) CHECK(db.p[k] == d.p[k]);
}

TEST_CASE("classical protocols round trip bit-exactly") {
  Rng rng(14);
  ClassicalProtocolOptions opt;
  opt.rounds = 2;
  opt.public_coin = true;
  ClassicalProtocol p = random_classical_protocol(rng, opt);
  const json j = to_json(p);
  ClassicalProtocol back = classical_protocol_from_json(j);
  CHECK(to_json(back).dump() == j.dump());

  // behavioural identity under exact evaluation
  GameSpec g = GameSpec::equality(1);
  auto d = JointDistribution::uniform(2, 2);
  CHECK(eval_classical(p, g, &d).eps_d == eval_classical(back, g, &d).eps_d);
}

TEST_CASE("quantum protocols round trip bit-exactly") {
  Rng rng(15);
  QuantumProtocolOptions opt;
  opt.rounds = 2;
  opt.safe_qubits = 1;
  QuantumSafeProtocol p = random_quantum_protocol(rng, opt);
  const json j = to_json(p);
  QuantumSafeProtocol back = quantum_protocol_from_json(j);
  // dump -> parse -> dump is the bit-exactness check: every amplitude must
  // reproduce the identical shortest representation
  CHECK(to_json(back).dump() == j.dump());

  GameSpec g = GameSpec::equality(1);
  auto r1 = eval_quantum(p, g);
  auto r2 = eval_quantum(back, g);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) CHECK(r1.grid.at(x, y) == r2.grid.at(x, y));
}

TEST_CASE("fks tables round trip") {
  FksRankTable t = FksRankTable::build({3, 9, 11, 40}, 64);
  const json j = to_json(t);
  FksRankTable back = fks_table_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  for (std::uint64_t x = 0; x < 64; ++x) {
    auto a = t.query(x);
    auto b = back.query(x);
    CHECK(a.member == b.member);
    CHECK(a.rank == b.rank);
  }
}

TEST_CASE("certificates serialize rationals exactly and reals at 12 digits") {
  Rng rng(16);
  GameSpec g = GameSpec::equality(1);
  auto d = random_joint_distribution(rng, 2, 2);
  ClassicalProtocolOptions opt;
  opt.rounds = 2;
  ClassicalProtocol p = random_classical_protocol(rng, opt);
  auto red = classical_round_reduce(p, g, d);
  const json j = to_json(red.certificate);
  CHECK(j.at("eps_before_exact").get<std::string>() == red.certificate.eps_before_exact.str());
  CHECK(j.at("slack").get<double>() == doctest::Approx(red.certificate.slack).epsilon(1e-11));
  CHECK(j.at("step") == "classical_round_reduction");
}
