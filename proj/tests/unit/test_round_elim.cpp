#include <doctest.h>

#include <cmath>

#include "qclab/generators.hpp"
#include "qclab/linalg.hpp"
#include "qclab/round_elim.hpp"

using namespace qclab;

namespace {

constexpr double kLn2 = 0.6931471805599453;

// One round: Alice sends x verbatim, Bob answers equality.
ClassicalProtocol send_x_eq1() {
  ClassicalProtocol p;
  p.e_size = p.f_size = 2;
  p.g_size = 2;
  p.lengths = {1};
  p.message_tables = {{0, 1}};
  p.answer_table.resize(4);
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t m = 0; m < 2; ++m) p.answer_table[(y << 1) | m] = (y == m) ? 1 : 0;
  p.validate();
  return p;
}

}  // namespace

TEST_CASE("product distribution over the composite game") {
  GameSpec g = GameSpec::equality(1);
  auto d = JointDistribution::uniform(2, 2);

  SUBCASE("n = 1 collapses to the base distribution") {
    PowerGame pg = game_power(g, 1);
    auto dstar = build_product_distribution(d, 1, pg);
    CHECK(dstar.e_size == 2);
    CHECK(dstar.f_size == 2);
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) CHECK(dstar.prob(x, y) == Rational(1, 4));
  }

  SUBCASE("uniform 1-bit base with n = 2 is uniform over its support") {
    PowerGame pg = game_power(g, 2);
    auto dstar = build_product_distribution(d, 2, pg);
    // direct enumeration oracle: draw i and two i.i.d. pairs (32 equal
    // draws), discard the unused y, accumulate
    std::vector<Rational> oracle(dstar.p.size(), Rational(0));
    for (std::size_t i = 1; i <= 2; ++i)
      for (int x1 = 0; x1 < 2; ++x1)
        for (int y1 = 0; y1 < 2; ++y1)
          for (int x2 = 0; x2 < 2; ++x2)
            for (int y2 = 0; y2 < 2; ++y2) {
              const int y = (i == 1) ? y1 : y2;
              std::vector<int> prefix;
              if (i == 2) prefix.push_back(x1);
              const auto xv = pg.encode_x({x1, x2});
              const auto yv = pg.encode_y(i, y, prefix);
              oracle[xv * dstar.f_size + yv] += Rational(1, 32);
            }
    std::size_t support = 0;
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      CHECK(oracle[k] == dstar.p[k]);
      if (!dstar.p[k].is_zero()) {
        ++support;
        CHECK(dstar.p[k] == Rational(1, 16));
      }
    }
    CHECK(support == 16);
  }

  SUBCASE("the (x_i, y) marginal reproduces d") {
    PowerGame pg = game_power(g, 2);
    auto dr = random_joint_distribution(*(new Rng(5)), 2, 2);  // leak-free small test helper
    auto dstar = build_product_distribution(dr, 2, pg);
    // marginal over x_i and y, averaged over i
    std::vector<Rational> marg(4, Rational(0));
    for (std::size_t xv = 0; xv < dstar.e_size; ++xv) {
      const auto xs = pg.decode_x(xv);
      for (std::size_t yv = 0; yv < dstar.f_size; ++yv) {
        const auto parts = pg.decode_y(yv);
        marg[xs[parts.i - 1] * 2 + parts.y] += dstar.prob(xv, yv);
      }
    }
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) CHECK(marg[x * 2 + y] == dr.prob(x, y));
  }
}

TEST_CASE("classical reduction: input-independent first message replays exactly") {
  GameSpec g = GameSpec::equality(1);
  auto d = JointDistribution::uniform(2, 2);
  ClassicalProtocol p = send_x_eq1();
  p.message_tables[0] = {1, 1};  // constant message
  p.validate();
  auto red = classical_round_reduce(p, g, d);
  CHECK(red.certificate.information == doctest::Approx(0.0));
  CHECK(red.certificate.eps_before_exact == red.certificate.eps_after_exact);
  CHECK(red.protocol.rounds() == 0);
  CHECK(red.protocol.starter == Party::bob);
}

TEST_CASE("classical reduction of the verbatim equality protocol") {
  GameSpec g = GameSpec::equality(1);
  auto d = JointDistribution::uniform(2, 2);
  ClassicalProtocol p = send_x_eq1();
  auto red = classical_round_reduce(p, g, d);

  // one exact bit: bound is eps_P + sqrt(2 ln 2)/2
  CHECK(red.certificate.information == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(red.certificate.bound == doctest::Approx(0.5 * std::sqrt(2 * kLn2)).epsilon(1e-9));
  // the reduced protocol aborts when the public message misses the input
  auto rep = eval_classical(red.protocol, g, &d);
  CHECK(rep.eps_d == Rational(1, 2));
  CHECK(red.certificate.slack >= -1e-7);
  // signature: [0,0]^B
  CHECK(red.certificate.output_signature == "[0,0]^B");
}

TEST_CASE("classical reduction certificate holds on random protocols") {
  GameSpec g = GameSpec::equality(2);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng = Rng::split(20240817, seed);
    ClassicalProtocolOptions opt;
    opt.e_size = opt.f_size = 2 + rng.below(3);
    opt.g_size = 2;
    opt.rounds = 1 + rng.below(3);
    opt.max_len = 2;
    opt.coin_values = 1 + rng.below(3);
    GameSpec game;
    game.e_size = opt.e_size;
    game.f_size = opt.f_size;
    game.g_size = 2;
    game.table.resize(opt.e_size * opt.f_size);
    for (auto& v : game.table) v = static_cast<int>(rng.below(2));
    ClassicalProtocol p = random_classical_protocol(rng, opt);
    auto d = random_joint_distribution(rng, opt.e_size, opt.f_size);
    auto red = classical_round_reduce(p, game, d);
    CHECK(red.certificate.slack >= -1e-7);
    // shape law: one less round, starter flipped
    CHECK(red.protocol.rounds() == p.rounds() - 1);
    CHECK(red.protocol.starter == other(p.starter));
    CHECK(red.protocol.lengths ==
          std::vector<int>(p.lengths.begin() + 1, p.lengths.end()));
  }
}

TEST_CASE("stage-one marginal: the public draw reproduces the old coin law") {
  Rng rng(31415);
  GameSpec g = GameSpec::equality(1);
  ClassicalProtocolOptions opt;
  opt.rounds = 2;
  opt.coin_values = 3;
  opt.coin_denominator = 8;
  ClassicalProtocol p = random_classical_protocol(rng, opt);
  auto d = random_joint_distribution(rng, 2, 2);
  auto red = classical_round_reduce(p, g, d);

  // For every input x and old coin r:
  //   P[resolved coin = r | x] = sum_m sigma(m) q^{xm}_r   (exact)
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t r = 0; r < p.coin_a.size(); ++r) {
      // direct formula
      Rational direct(0);
      for (std::size_t m = 0; m < red.message_average.size(); ++m) {
        if (red.message_given_input[x][m].is_zero()) continue;
        if (p.message(0, x, 0, r, 0) != m) continue;
        direct += red.message_average[m] * (p.coin_a.prob(r) / red.message_given_input[x][m]);
      }
      // from the reduced protocol's public coin
      Rational from_coin(0);
      for (std::size_t k = 0; k < red.protocol.pub_size(); ++k) {
        if (red.protocol.aborts(x, k)) continue;
        const auto& cv = red.coin_values[k];
        // re-resolve the coin for this segment
        Rational cum(0);
        std::size_t chosen = SIZE_MAX;
        for (std::size_t rr = 0; rr < p.coin_a.size(); ++rr) {
          if (p.message(0, x, 0, rr, 0) != cv.message) continue;
          cum += p.coin_a.prob(rr) / red.message_given_input[x][cv.message];
          if (Rational(cv.lo) < cum * Rational(cv.scale)) {
            chosen = rr;
            break;
          }
        }
        if (chosen == r) from_coin += red.protocol.public_coin.prob(k);
      }
      CHECK(direct == from_coin);
    }
  }
}

TEST_CASE("classical elimination end to end on 1-bit equality") {
  GameSpec g = GameSpec::equality(1);
  const std::size_t n = 4;
  PowerGame pg = game_power(g, n);

  // Alice sends x_1 masked by the public coin; Bob answers equality for
  // i = 1 and flips his private fair coin otherwise.
  ClassicalProtocol p;
  p.starter = Party::alice;
  p.e_size = pg.game.e_size;
  p.f_size = pg.game.f_size;
  p.g_size = 2;
  p.lengths = {1};
  p.coin_b.probs = {Rational(1, 2), Rational(1, 2)};
  p.has_public_coin = true;
  p.public_coin.probs = {Rational(1, 2), Rational(1, 2)};
  p.message_tables.resize(1);
  p.message_tables[0].resize(p.e_size * 2);
  for (std::size_t xv = 0; xv < p.e_size; ++xv) {
    const auto xs = pg.decode_x(xv);
    for (std::size_t b = 0; b < 2; ++b)
      p.message_tables[0][xv * 2 + b] = static_cast<std::uint32_t>(xs[0] ^ b);
  }
  p.answer_table.resize((p.f_size << 1) * 2 * 2);
  for (std::size_t yv = 0; yv < p.f_size; ++yv) {
    const auto parts = pg.decode_y(yv);
    for (std::uint64_t m = 0; m < 2; ++m)
      for (std::size_t cb = 0; cb < 2; ++cb)
        for (std::size_t b = 0; b < 2; ++b) {
          std::uint32_t ans;
          if (parts.i == 1)
            ans = ((m ^ b) == static_cast<std::uint64_t>(parts.y)) ? 1 : 0;
          else
            ans = static_cast<std::uint32_t>(cb);
          p.answer_table[((yv << 1 | m) * 2 + cb) * 2 + b] = ans;
        }
  }
  p.validate();

  auto elim = classical_round_eliminate(p, g, n);
  const auto& led = elim.ledger;
  // input worst error 1/2, output worst error 1/2, bound has real slack
  CHECK(led.certificate.eps_before == doctest::Approx(0.5));
  CHECK(led.certificate.eps_after == doctest::Approx(0.5));
  CHECK(led.certificate.bound ==
        doctest::Approx(0.5 + 0.5 * std::sqrt(2 * kLn2 / 4.0)).epsilon(1e-9));
  CHECK(led.certificate.slack >= -1e-7);
  CHECK(led.slack_d >= -1e-7);
  CHECK(elim.protocol.rounds() == 0);
  // information budget: l1/n
  CHECK(led.info_budget == doctest::Approx(0.25));
  CHECK(led.info_measured <= led.info_budget + 1e-7);
  CHECK(led.additivity_residual <= 1e-7);
  CHECK(led.averaging_residual <= 1e-7);
}

TEST_CASE("empty first message eliminates with the exact input error") {
  GameSpec g = GameSpec::equality(1);
  const std::size_t n = 2;
  PowerGame pg = game_power(g, n);

  // constant-answer protocol with an empty first message
  ClassicalProtocol p;
  p.starter = Party::alice;
  p.e_size = pg.game.e_size;
  p.f_size = pg.game.f_size;
  p.g_size = 2;
  p.lengths = {0, 0};
  p.has_public_coin = true;
  p.public_coin.probs = {Rational(1)};
  p.message_tables = {std::vector<std::uint32_t>(p.e_size, 0),
                      std::vector<std::uint32_t>(p.f_size, 0)};
  p.answer_table.assign(p.e_size, 1);  // Alice answers "equal" always
  p.validate();
  const auto rep_in = eval_classical(p, pg.game);

  auto elim = classical_round_eliminate(p, g, n);
  CHECK(elim.ledger.certificate.information == doctest::Approx(0.0));
  // worst case error is preserved exactly for the constant answerer
  CHECK(elim.ledger.certificate.eps_after == doctest::Approx(rep_in.eps_worst.to_double()));
  CHECK(elim.ledger.certificate.eps_before == doctest::Approx(rep_in.eps_worst.to_double()));
}

TEST_CASE("adversarial grid search stays within the distributional bound") {
  GameSpec g = GameSpec::equality(1);
  const std::size_t n = 2;
  PowerGame pg = game_power(g, n);
  Rng rng(777);
  ClassicalProtocolOptions opt;
  opt.e_size = pg.game.e_size;
  opt.f_size = pg.game.f_size;
  opt.g_size = 2;
  opt.rounds = 1;
  opt.max_len = 1;
  opt.coin_values = 2;
  opt.public_coin = true;
  ClassicalProtocol p = random_classical_protocol(rng, opt);

  // product distributions on the 2x2 grid, eighth steps
  for (int a = 1; a < 8; ++a)
    for (int b = 1; b < 8; ++b) {
      JointDistribution d;
      d.e_size = d.f_size = 2;
      d.p = {Rational(a, 8) * Rational(b, 8), Rational(a, 8) * Rational(8 - b, 8),
             Rational(8 - a, 8) * Rational(b, 8), Rational(8 - a, 8) * Rational(8 - b, 8)};
      auto elim = classical_round_eliminate(p, g, n, &d);
      CHECK(elim.ledger.slack_d >= -1e-7);
    }
}

TEST_CASE("quantum reduction: fixed first message replays within tolerance") {
  GameSpec g = GameSpec::equality(1);
  auto d = JointDistribution::uniform(2, 2);
  Rng rng(5150);
  // Alice's first message is prepared independently of x; her answer-side
  // work is still x-controlled.
  QuantumProtocolOptions opt;
  opt.rounds = 2;
  opt.safe_qubits = 0;
  QuantumSafeProtocol p = random_quantum_protocol(rng, opt);
  // overwrite round 1 with an input-independent preparation
  QuantumProtocolBody& b = p.branches.front().second;
  b.round_list[0].gates.clear();
  b.round_list[0].gates.push_back(
      {preparation_unitary(random_state_vector(rng, 2)), {"m0"}});
  p.validate();

  auto red = quantum_round_reduce(p, g, d);
  CHECK(red.certificate.information <= 1e-9);
  CHECK(std::abs(red.certificate.eps_after - red.certificate.eps_before) <= 1e-8);
}

TEST_CASE("quantum reduction certificate and shape on random protocols") {
  GameSpec g = GameSpec::equality(1);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Rng rng = Rng::split(424242, seed);
    QuantumProtocolOptions opt;
    opt.rounds = 1 + seed % 3;
    opt.safe_qubits = static_cast<int>(seed % 2);
    opt.first_main_qubits = 1 + static_cast<int>(seed % 2);
    QuantumSafeProtocol p = random_quantum_protocol(rng, opt);
    auto d = random_joint_distribution(rng, 2, 2);
    auto red = quantum_round_reduce(p, g, d);

    CHECK(red.certificate.slack >= -1e-7);
    // shape law: [t-1, c+l1, l2..]^B
    CHECK(red.protocol.sig.rounds() == p.sig.rounds() - 1);
    CHECK(red.protocol.sig.safe_qubits == p.sig.safe_qubits + p.sig.lengths[0]);
    CHECK(red.protocol.sig.starter == other(p.sig.starter));
    CHECK(red.protocol.sig.lengths ==
          std::vector<int>(p.sig.lengths.begin() + 1, p.sig.lengths.end()));
    // monotone safety
    CHECK(verify_safe(red.protocol).pass);
    CHECK(verify_secure(red.protocol).pass);
  }
}

TEST_CASE("reduced classical protocols embed against the quantum pipeline") {
  // a deterministic 2-round protocol run through both reductions: the
  // quantum route cannot beat the classical exact error by the exponent gap
  Rng rng(8080);
  GameSpec g = GameSpec::equality(1);
  auto d = JointDistribution::uniform(2, 2);
  ClassicalProtocolOptions opt;
  opt.rounds = 2;
  opt.coin_values = 1;
  ClassicalProtocol cp = random_classical_protocol(rng, opt);
  auto cred = classical_round_reduce(cp, g, d);

  QuantumSafeProtocol qp = embed_classical_protocol(cp, g);
  auto qred = quantum_round_reduce(qp, g, d);

  CHECK(std::abs(qred.certificate.eps_before - cred.certificate.eps_before) <= 1e-9);
  CHECK(std::abs(qred.certificate.information - cred.certificate.information) <= 1e-8);
  CHECK(qred.certificate.slack >= -1e-7);
  CHECK(cred.certificate.slack >= -1e-7);
}

TEST_CASE("quantum elimination on the composite game") {
  GameSpec g = GameSpec::equality(1);
  const std::size_t n = 2;
  PowerGame pg = game_power(g, n);
  Rng rng(1001);
  QuantumSafeProtocol p = random_power_game_protocol(rng, pg, 1, 0);

  auto elim = quantum_round_eliminate(p, g, n);
  const auto& led = elim.ledger;
  CHECK(led.certificate.output_signature == "[1,1,1]^B");
  CHECK(led.certificate.slack >= -1e-7);
  CHECK(led.slack_d >= -1e-7);
  CHECK(verify_safe(elim.protocol).pass);
  CHECK(verify_secure(elim.protocol).pass);
  // information ledger: 2 l1 / n covers the measured average
  CHECK(led.info_budget == doctest::Approx(1.0));
  CHECK(led.info_measured <= led.info_budget + 1e-7);
  CHECK(led.additivity_residual <= 1e-7);
  CHECK(led.averaging_residual <= 1e-7);
}

TEST_CASE("quantum elimination with a trivial first message keeps the error") {
  GameSpec g = GameSpec::equality(1);
  const std::size_t n = 2;
  PowerGame pg = game_power(g, n);
  Rng rng(2002);
  QuantumSafeProtocol p = random_power_game_protocol(rng, pg, 1, 0);
  // make round 1 input-independent
  QuantumProtocolBody& b = p.branches.front().second;
  b.round_list[0].gates.clear();
  b.round_list[0].gates.push_back({preparation_unitary(random_state_vector(rng, 2)), {"m0"}});
  p.validate();

  auto elim = quantum_round_eliminate(p, g, n);
  CHECK(elim.ledger.certificate.information <= 1e-8);
  CHECK(elim.ledger.eps_d_out <= elim.ledger.eps_dstar_in + 1e-7);
}

TEST_CASE("quantum elimination at the four-string qubit boundary") {
  // n = 4 with one-bit strings fills the 12-qubit budget exactly once the
  // secure copy and the purifying half are added
  GameSpec g = GameSpec::equality(1);
  const std::size_t n = 4;
  PowerGame pg = game_power(g, n);
  Rng rng(4004);
  QuantumSafeProtocol p = random_power_game_protocol(rng, pg, 1, 0);

  auto elim = quantum_round_eliminate(p, g, n);
  CHECK(elim.ledger.certificate.output_signature == "[1,1,1]^B");
  CHECK(elim.ledger.certificate.slack >= -1e-7);
  CHECK(elim.ledger.slack_d >= -1e-7);
  CHECK(elim.ledger.pieces == 15);
  // the lemma term for l1 = 1, n = 4
  CHECK(elim.ledger.certificate.bound - elim.ledger.certificate.eps_before ==
        doctest::Approx(std::pow(4.0 * std::log(2.0) / 4.0, 0.25)).epsilon(1e-12));
  CHECK(elim.ledger.info_measured <= elim.ledger.info_budget + 1e-7);
  CHECK(verify_safe(elim.protocol).pass);
  CHECK(verify_secure(elim.protocol).pass);
}

TEST_CASE("round reduction rejects protocols that are not secure") {
  GameSpec g = GameSpec::equality(1);
  auto d = JointDistribution::uniform(2, 2);
  QuantumProtocolBody b;
  b.layout = RegisterLayout({{"x", 1, Party::alice},
                             {"m", 1, Party::alice},
                             {"y", 1, Party::bob}});
  b.input_a = {{"x"}, {0, 1}};
  b.input_b = {{"y"}, {0, 1}};
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h(0, 0) = s;
  h(0, 1) = s;
  h(1, 0) = s;
  h(1, 1) = -s;
  QuantumRound r1;
  r1.gates.push_back({h, {"x"}});
  r1.transfer = {"m"};
  b.round_list.push_back(r1);
  b.measurement = {{"m"}, {0, 1}};
  QuantumSafeProtocol p;
  p.sig = {Party::alice, 0, {1}};
  p.e_size = p.f_size = p.g_size = 2;
  p.branches.emplace_back(Rational(1), std::move(b));
  CHECK_THROWS_AS(quantum_round_reduce(p, g, d), std::invalid_argument);
}
