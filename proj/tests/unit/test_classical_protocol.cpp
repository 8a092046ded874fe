#include <doctest.h>

#include "qclab/generators.hpp"

using namespace qclab;

namespace {

// One round: Alice sends x verbatim, Bob answers equality with y.
ClassicalProtocol send_x_equality(int bits) {
  const std::size_t n = std::size_t(1) << bits;
  ClassicalProtocol p;
  p.e_size = p.f_size = n;
  p.g_size = 2;
  p.lengths = {bits};
  p.message_tables.resize(1);
  p.message_tables[0].resize(n);
  for (std::size_t x = 0; x < n; ++x) p.message_tables[0][x] = static_cast<std::uint32_t>(x);
  p.answer_table.resize(n << bits);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t m = 0; m < n; ++m) p.answer_table[(y << bits) | m] = (y == m) ? 1 : 0;
  p.validate();
  return p;
}

// Zero rounds, Bob answers by a fair private coin.
ClassicalProtocol fair_coin_answer() {
  ClassicalProtocol p;
  p.starter = Party::bob;
  p.e_size = p.f_size = 2;
  p.g_size = 2;
  p.coin_b.probs = {Rational(1, 2), Rational(1, 2)};
  p.answer_table.resize(2 * 2);
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t c = 0; c < 2; ++c) p.answer_table[y * 2 + c] = static_cast<std::uint32_t>(c);
  p.validate();
  return p;
}

}  // namespace

TEST_CASE("verbatim protocol solves equality exactly") {
  GameSpec g = GameSpec::equality(2);
  ClassicalProtocol p = send_x_equality(2);
  auto rep = eval_classical(p, g);
  CHECK(rep.eps_worst == Rational(0));
  CHECK(rep.lengths == std::vector<int>{2});
}

TEST_CASE("fair-coin answers err with probability 1/2 everywhere") {
  GameSpec g = GameSpec::equality(1);
  ClassicalProtocol p = fair_coin_answer();
  auto rep = eval_classical(p, g);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) CHECK(rep.grid.at(x, y) == Rational(1, 2));
}

TEST_CASE("exact evaluation matches the sampling oracle within 3 sigma") {
  Rng rng(2468);
  GameSpec g = GameSpec::equality(1);
  ClassicalProtocolOptions opt;
  opt.rounds = 2;
  ClassicalProtocol p = random_classical_protocol(rng, opt);
  auto d = random_joint_distribution(rng, 2, 2);
  auto rep = eval_classical(p, g, &d);

  const std::size_t trials = 100000;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) {
      const double exact = rep.grid.at(x, y).to_double();
      const double est = sample_classical_error(p, g, x, y, trials, rng);
      const double sigma = std::sqrt(std::max(exact * (1 - exact), 1e-6) / trials);
      CHECK(std::abs(est - exact) <= 3.5 * sigma + 1e-9);
    }
}

TEST_CASE("evaluation is exact: coin relabelling leaves the rationals unchanged") {
  Rng rng(13);
  GameSpec g = GameSpec::equality(1);
  ClassicalProtocolOptions opt;
  opt.rounds = 2;
  opt.coin_values = 3;
  ClassicalProtocol p = random_classical_protocol(rng, opt);
  auto d = random_joint_distribution(rng, 2, 2);
  auto rep = eval_classical(p, g, &d);

  // permute Alice's coin values
  ClassicalProtocol q = p;
  const std::vector<std::size_t> perm{2, 0, 1};
  for (std::size_t i = 0; i < 3; ++i) q.coin_a.probs[i] = p.coin_a.probs[perm[i]];
  for (std::size_t r = 0; r < p.rounds(); ++r) {
    if (p.sender(r) != Party::alice) continue;
    const std::size_t inputs = p.input_size(Party::alice) << p.prefix_bits(r);
    for (std::size_t i = 0; i < inputs; ++i)
      for (std::size_t c = 0; c < 3; ++c)
        q.message_tables[r][i * 3 + c] = p.message_tables[r][i * 3 + perm[c]];
  }
  if (p.answerer() == Party::alice) {
    const std::size_t inputs = p.input_size(Party::alice) << p.total_bits();
    for (std::size_t i = 0; i < inputs; ++i)
      for (std::size_t c = 0; c < 3; ++c) q.answer_table[i * 3 + c] = p.answer_table[i * 3 + perm[c]];
  }
  auto rep2 = eval_classical(q, g, &d);
  CHECK(rep.eps_d == rep2.eps_d);
  CHECK(rep.eps_worst == rep2.eps_worst);
}

TEST_CASE("public coin error decomposes exactly over coin values") {
  Rng rng(99);
  GameSpec g = GameSpec::equality(1);
  ClassicalProtocolOptions opt;
  opt.rounds = 1;
  opt.public_coin = true;
  opt.public_values = 3;
  ClassicalProtocol p = random_classical_protocol(rng, opt);
  auto d = random_joint_distribution(rng, 2, 2);
  auto rep = eval_classical(p, g, &d);

  Rational mix(0);
  for (std::size_t pv = 0; pv < 3; ++pv) {
    ClassicalProtocol branch = p;
    branch.has_public_coin = false;
    branch.public_coin = CoinSpace{};
    for (std::size_t r = 0; r < p.rounds(); ++r) {
      const std::size_t n = p.message_tables[r].size() / 3;
      branch.message_tables[r].resize(n);
      for (std::size_t i = 0; i < n; ++i)
        branch.message_tables[r][i] = p.message_tables[r][i * 3 + pv];
    }
    const std::size_t n = p.answer_table.size() / 3;
    branch.answer_table.resize(n);
    for (std::size_t i = 0; i < n; ++i) branch.answer_table[i] = p.answer_table[i * 3 + pv];
    mix += p.public_coin.prob(pv) * eval_classical(branch, g, &d).eps_d;
  }
  CHECK(mix == rep.eps_d);
}

TEST_CASE("fix_public_coin picks the best branch") {
  GameSpec g = GameSpec::equality(1);
  auto d = JointDistribution::uniform(2, 2);

  // public coin chooses between "answer equal" and "answer by comparing"
  ClassicalProtocol p = send_x_equality(1);
  p.has_public_coin = true;
  p.public_coin.probs = {Rational(1, 2), Rational(1, 2)};
  // rebuild tables with the pub dimension
  p.message_tables[0].assign(2 * 2, 0);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t pv = 0; pv < 2; ++pv)
      p.message_tables[0][x * 2 + pv] = static_cast<std::uint32_t>(x);
  p.answer_table.assign(2 * 2 * 2, 0);
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t m = 0; m < 2; ++m)
      for (std::size_t pv = 0; pv < 2; ++pv)
        p.answer_table[(y * 2 + m) * 2 + pv] = (pv == 0) ? 1u : ((y == m) ? 1u : 0u);
  p.validate();

  auto fixed = fix_public_coin(p, g, d);
  CHECK(fixed.coin_value == 1);  // the comparing branch is exact
  CHECK(fixed.eps_d == Rational(0));
  CHECK_FALSE(fixed.protocol.has_public_coin);

  // degenerate single-value coin: fixing is the identity transformation
  ClassicalProtocol q = send_x_equality(1);
  q.has_public_coin = true;
  q.public_coin.probs = {Rational(1)};
  auto fixed_q = fix_public_coin(q, g, d);
  CHECK(fixed_q.eps_d == Rational(0));
  CHECK(fixed_q.coin_value == 0);

  CHECK_THROWS_AS(fix_public_coin(send_x_equality(1), g, d), std::invalid_argument);
}

TEST_CASE("first message encoding of classical protocols") {
  GameSpec g = GameSpec::equality(1);
  auto d = JointDistribution::uniform(2, 2);

  // verbatim sender: point-mass messages, 1 bit of information
  Encoding verbatim = first_message_encoding(send_x_equality(1), g, d);
  CHECK(verbatim.is_classical());
  CHECK(verbatim.classical_messages()[0][0] == Rational(1));
  CHECK(verbatim.classical_messages()[1][1] == Rational(1));
  CHECK(encoding_mutual_information(verbatim) == doctest::Approx(1.0));

  // input-independent first message: zero information
  ClassicalProtocol constant = send_x_equality(1);
  constant.message_tables[0] = {0, 0};
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t m = 0; m < 2; ++m) constant.answer_table[(y << 1) | m] = 0;
  constant.validate();
  Encoding c = first_message_encoding(constant, g, d);
  CHECK(encoding_mutual_information(c) == doctest::Approx(0.0));

  // average message equals the prior-weighted mixture (construction)
  Rng rng(55);
  ClassicalProtocolOptions opt;
  opt.rounds = 2;
  ClassicalProtocol p = random_classical_protocol(rng, opt);
  auto dr = random_joint_distribution(rng, 2, 2);
  Encoding e = first_message_encoding(p, g, dr);
  auto avg = e.average_classical();
  const auto table = first_message_table(p);
  const auto marg = dr.marginal_x();
  std::vector<Rational> direct(avg.size(), Rational(0));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t m = 0; m < avg.size(); ++m) direct[m] += marg[x] * table[x][m];
  for (std::size_t m = 0; m < avg.size(); ++m) CHECK(avg[m] == direct[m]);

  // zero-length first message is rejected
  ClassicalProtocol zero = fair_coin_answer();
  CHECK_THROWS_AS(first_message_encoding(zero, g, d), std::invalid_argument);
}

TEST_CASE("branch cap is enforced") {
  GameSpec g = GameSpec::equality(1);
  ClassicalProtocol p = fair_coin_answer();
  const long long old_cap = config::max_branches();
  config::set_max_branches(4);
  CHECK_THROWS_AS(eval_classical(p, g), CapacityError);
  config::set_max_branches(old_cap);
}
