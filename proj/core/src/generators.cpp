#include "qclab/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace qclab {

ClassicalProtocol random_classical_protocol(Rng& rng, const ClassicalProtocolOptions& opt) {
  ClassicalProtocol p;
  p.starter = opt.starter;
  p.e_size = opt.e_size;
  p.f_size = opt.f_size;
  p.g_size = opt.g_size;
  for (std::size_t r = 0; r < opt.rounds; ++r)
    p.lengths.push_back(1 + static_cast<int>(rng.below(opt.max_len)));
  p.coin_a.probs = rng.rational_distribution(opt.coin_values, opt.coin_denominator);
  p.coin_b.probs = rng.rational_distribution(opt.coin_values, opt.coin_denominator);
  if (opt.public_coin) {
    p.has_public_coin = true;
    p.public_coin.probs = rng.rational_distribution(opt.public_values, opt.coin_denominator);
  }
  for (std::size_t r = 0; r < opt.rounds; ++r) {
    const std::size_t size = (p.input_size(p.sender(r)) << p.prefix_bits(r)) *
                             p.coin(p.sender(r)).size() * p.pub_size();
    std::vector<std::uint32_t> table(size);
    for (auto& m : table)
      m = static_cast<std::uint32_t>(rng.below(std::uint64_t(1) << p.lengths[r]));
    p.message_tables.push_back(std::move(table));
  }
  const std::size_t ans_size =
      (p.input_size(p.answerer()) << p.total_bits()) * p.coin(p.answerer()).size() * p.pub_size();
  p.answer_table.resize(ans_size);
  for (auto& a : p.answer_table) a = static_cast<std::uint32_t>(rng.below(opt.g_size));
  p.validate();
  return p;
}

JointDistribution random_joint_distribution(Rng& rng, std::size_t e_size, std::size_t f_size,
                                            std::int64_t denominator) {
  JointDistribution d;
  d.e_size = e_size;
  d.f_size = f_size;
  d.p = rng.rational_distribution(e_size * f_size, denominator);
  return d;
}

double sample_classical_error(const ClassicalProtocol& p, const GameSpec& g, std::size_t x,
                              std::size_t y, std::size_t trials, Rng& rng) {
  auto draw = [&rng](const CoinSpace& coin) {
    if (coin.probs.empty()) return std::size_t(0);
    const double u = rng.unit();
    double acc = 0;
    for (std::size_t i = 0; i < coin.probs.size(); ++i) {
      acc += coin.probs[i].to_double();
      if (u < acc) return i;
    }
    return coin.probs.size() - 1;
  };
  std::size_t wrong = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t pv = p.has_public_coin ? draw(p.public_coin) : 0;
    const std::size_t abort_input = (p.abort_party == Party::alice) ? x : y;
    if (p.aborts(abort_input, pv)) {
      ++wrong;
      continue;
    }
    const std::size_t ca = draw(p.coin_a), cb = draw(p.coin_b);
    std::uint64_t transcript = 0;
    for (std::size_t r = 0; r < p.rounds(); ++r) {
      const Party s = p.sender(r);
      const std::size_t input = (s == Party::alice) ? x : y;
      const std::size_t coin = (s == Party::alice) ? ca : cb;
      transcript = (transcript << p.lengths[r]) | p.message(r, input, transcript, coin, pv);
    }
    const Party a = p.answerer();
    const std::size_t input = (a == Party::alice) ? x : y;
    const std::size_t coin = (a == Party::alice) ? ca : cb;
    if (p.answer(input, transcript, coin, pv) != g.value(x, y)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(trials);
}

namespace {

int ceil_log2(std::size_t n) {
  int b = 0;
  while ((std::size_t(1) << b) < n) ++b;
  return std::max(1, b);
}

std::vector<std::uint64_t> identity_embed(std::size_t n) {
  std::vector<std::uint64_t> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = i;
  return e;
}

}  // namespace

QuantumSafeProtocol random_quantum_protocol(Rng& rng, const QuantumProtocolOptions& opt) {
  if (opt.starter != Party::alice)
    throw std::invalid_argument("generator only builds protocols with Alice starting");
  if (opt.rounds < 1 || opt.rounds > 3)
    throw std::invalid_argument("generator supports 1 to 3 rounds");
  const int c = opt.safe_qubits, l1 = opt.first_main_qubits;
  const int l2 = opt.reply_qubits;

  std::vector<Register> regs;
  regs.push_back({"x", 1, Party::alice});
  std::vector<std::string> msg_regs, safe_regs;
  for (int i = 0; i < l1; ++i) {
    msg_regs.push_back("m" + std::to_string(i));
    regs.push_back({msg_regs.back(), 1, Party::alice});
  }
  for (int i = 0; i < c; ++i) {
    safe_regs.push_back("s" + std::to_string(i));
    regs.push_back({safe_regs.back(), 1, Party::alice});
  }
  const bool anchor = c > 0 || opt.alice_work_qubits > 0;
  if (anchor) regs.push_back({"wa", 1, Party::alice});
  regs.push_back({"y", 1, Party::bob});
  regs.push_back({"wb", 1, Party::bob});

  QuantumProtocolBody b;
  b.layout = RegisterLayout(regs);
  b.input_a = {{"x"}, identity_embed(2)};
  b.input_b = {{"y"}, identity_embed(2)};
  if (c > 0) {
    // safe overhead: half of a fixed random pure state shared with the anchor
    std::vector<std::string> group = safe_regs;
    group.push_back("wa");
    b.inits.push_back({group, random_state_vector(rng, std::size_t(1) << (c + 1))});
  }

  // Round 1: Alice, controlled on x, acting on the main message part (and
  // the anchor when present, which never disturbs the safe marginal).
  std::vector<std::string> a_targets = msg_regs;
  if (anchor) a_targets.push_back("wa");
  {
    const std::size_t dt = std::size_t(1) << a_targets.size();
    std::vector<ComplexMatrix> blocks{random_unitary(rng, dt), random_unitary(rng, dt)};
    std::vector<std::string> gate_regs{"x"};
    gate_regs.insert(gate_regs.end(), a_targets.begin(), a_targets.end());
    QuantumRound r1;
    r1.gates.push_back({controlled_unitary(1, blocks), gate_regs});
    r1.transfer = msg_regs;
    r1.transfer.insert(r1.transfer.end(), safe_regs.begin(), safe_regs.end());
    b.round_list.push_back(std::move(r1));
  }

  QuantumSafeProtocol p;
  p.sig.starter = Party::alice;
  p.sig.safe_qubits = c;
  p.sig.lengths.push_back(l1);
  p.e_size = p.f_size = p.g_size = 2;

  std::vector<std::string> bob_holds = msg_regs;
  bob_holds.insert(bob_holds.end(), safe_regs.begin(), safe_regs.end());
  bob_holds.push_back("wb");

  if (opt.rounds == 1) {
    // Bob answers directly.
    const std::size_t dt = std::size_t(1) << bob_holds.size();
    std::vector<ComplexMatrix> blocks{random_unitary(rng, dt), random_unitary(rng, dt)};
    std::vector<std::string> gate_regs{"y"};
    gate_regs.insert(gate_regs.end(), bob_holds.begin(), bob_holds.end());
    b.final_gates.push_back({controlled_unitary(1, blocks), gate_regs});
    b.measurement = {{"wb"}, {0, 1}};
  } else {
    // Round 2: Bob replies with the first l2 registers he can send.
    std::vector<std::string> reply(msg_regs.begin(), msg_regs.begin() + std::min<std::size_t>(l2, msg_regs.size()));
    while (reply.size() < static_cast<std::size_t>(l2)) reply.push_back("wb");
    const std::size_t dt = std::size_t(1) << bob_holds.size();
    std::vector<ComplexMatrix> blocks{random_unitary(rng, dt), random_unitary(rng, dt)};
    std::vector<std::string> gate_regs{"y"};
    gate_regs.insert(gate_regs.end(), bob_holds.begin(), bob_holds.end());
    QuantumRound r2;
    r2.gates.push_back({controlled_unitary(1, blocks), gate_regs});
    r2.transfer = reply;
    b.round_list.push_back(std::move(r2));
    p.sig.lengths.push_back(static_cast<int>(reply.size()));

    if (opt.rounds == 2) {
      // Alice answers from what she received.
      std::vector<std::string> alice_now = reply;
      if (anchor) alice_now.push_back("wa");
      const std::size_t da = std::size_t(1) << alice_now.size();
      std::vector<ComplexMatrix> blocks_a{random_unitary(rng, da), random_unitary(rng, da)};
      std::vector<std::string> fregs{"x"};
      fregs.insert(fregs.end(), alice_now.begin(), alice_now.end());
      b.final_gates.push_back({controlled_unitary(1, blocks_a), fregs});
      std::vector<int> outcome(2, 0);
      outcome[1] = 1;
      b.measurement = {{reply.front()}, outcome};
    } else {
      // Round 3: Alice sends a received register back; Bob answers.
      std::vector<std::string> alice_now = reply;
      if (anchor) alice_now.push_back("wa");
      const std::size_t da = std::size_t(1) << alice_now.size();
      std::vector<ComplexMatrix> blocks_a{random_unitary(rng, da), random_unitary(rng, da)};
      std::vector<std::string> gate_regs_a{"x"};
      gate_regs_a.insert(gate_regs_a.end(), alice_now.begin(), alice_now.end());
      QuantumRound r3;
      r3.gates.push_back({controlled_unitary(1, blocks_a), gate_regs_a});
      r3.transfer = {reply.front()};
      b.round_list.push_back(std::move(r3));
      p.sig.lengths.push_back(1);

      std::vector<std::string> bob_final;
      for (const std::string& rname : bob_holds)
        if (std::find(reply.begin(), reply.end(), rname) == reply.end()) bob_final.push_back(rname);
      bob_final.push_back(reply.front());
      const std::size_t db = std::size_t(1) << bob_final.size();
      std::vector<ComplexMatrix> blocks_b{random_unitary(rng, db), random_unitary(rng, db)};
      std::vector<std::string> fregs{"y"};
      fregs.insert(fregs.end(), bob_final.begin(), bob_final.end());
      b.final_gates.push_back({controlled_unitary(1, blocks_b), fregs});
      b.measurement = {{"wb"}, {0, 1}};
    }
  }

  b.safe_regs = safe_regs;
  p.branches.emplace_back(Rational(1), std::move(b));
  p.validate();
  return p;
}

QuantumSafeProtocol random_power_game_protocol(Rng& rng, const PowerGame& pg, int first_main_qubits,
                                               int safe_qubits) {
  if (pg.base.e_size != 2 || pg.base.f_size != 2)
    throw std::invalid_argument("generator expects a 1-bit base game");
  if (safe_qubits != 0) throw std::invalid_argument("composite generator builds c = 0 protocols");
  const std::size_t n = pg.n;
  const int l1 = first_main_qubits;
  const int fbits = ceil_log2(pg.game.f_size);

  std::vector<Register> regs;
  std::vector<std::string> xregs, mregs;
  for (std::size_t j = 1; j <= n; ++j) {
    xregs.push_back("x" + std::to_string(j));
    regs.push_back({xregs.back(), 1, Party::alice});
  }
  for (int i = 0; i < l1; ++i) {
    mregs.push_back("m" + std::to_string(i));
    regs.push_back({mregs.back(), 1, Party::alice});
  }
  regs.push_back({"yb", fbits, Party::bob});

  QuantumProtocolBody b;
  b.layout = RegisterLayout(regs);
  b.input_a = {xregs, identity_embed(pg.game.e_size)};
  b.input_b = {{"yb"}, identity_embed(pg.game.f_size)};

  // Round 1: controlled on all of Alice's strings.
  {
    const std::size_t dt = std::size_t(1) << l1;
    std::vector<ComplexMatrix> blocks;
    for (std::size_t v = 0; v < pg.game.e_size; ++v) blocks.push_back(random_unitary(rng, dt));
    std::vector<std::string> gate_regs = xregs;
    gate_regs.insert(gate_regs.end(), mregs.begin(), mregs.end());
    QuantumRound r1;
    r1.gates.push_back({controlled_unitary(static_cast<int>(n), blocks), gate_regs});
    r1.transfer = mregs;
    b.round_list.push_back(std::move(r1));
  }
  // Round 2: Bob, controlled on his packed input, replies with one register.
  {
    const std::size_t dt = std::size_t(1) << l1;
    std::vector<ComplexMatrix> blocks;
    for (std::size_t v = 0; v < pg.game.f_size; ++v) blocks.push_back(random_unitary(rng, dt));
    std::vector<std::string> gate_regs{"yb"};
    gate_regs.insert(gate_regs.end(), mregs.begin(), mregs.end());
    QuantumRound r2;
    r2.gates.push_back({controlled_unitary(fbits, blocks), gate_regs});
    r2.transfer = {mregs.front()};
    b.round_list.push_back(std::move(r2));
  }
  // Alice answers from the returned register.
  {
    std::vector<ComplexMatrix> blocks;
    for (std::size_t v = 0; v < pg.game.e_size; ++v) blocks.push_back(random_unitary(rng, 2));
    std::vector<std::string> fregs = xregs;
    fregs.push_back(mregs.front());
    b.final_gates.push_back({controlled_unitary(static_cast<int>(n), blocks), fregs});
    std::vector<int> outcome(2, 0);
    outcome[1] = 1;
    b.measurement = {{mregs.front()}, outcome};
  }

  QuantumSafeProtocol p;
  p.sig.starter = Party::alice;
  p.sig.safe_qubits = 0;
  p.sig.lengths = {l1, 1};
  p.e_size = pg.game.e_size;
  p.f_size = pg.game.f_size;
  p.g_size = pg.game.g_size;
  p.branches.emplace_back(Rational(1), std::move(b));
  p.validate();
  return p;
}

QuantumSafeProtocol embed_classical_protocol(const ClassicalProtocol& cp, const GameSpec& g) {
  cp.validate();
  g.validate();
  if (cp.e_size != g.e_size || cp.f_size != g.f_size || cp.g_size != g.g_size)
    throw std::invalid_argument("protocol sets do not match the game");
  if (cp.coin_a.size() != 1 || cp.coin_b.size() != 1 || cp.has_public_coin)
    throw std::invalid_argument("embedding requires a deterministic protocol");
  if (!cp.abort_table.empty()) throw std::invalid_argument("embedding does not support aborts");

  const int abits = ceil_log2(cp.e_size), bbits = ceil_log2(cp.f_size);
  const int gbits = ceil_log2(cp.g_size);
  std::vector<Register> regs{{"ina", abits, Party::alice}};
  for (std::size_t r = 0; r < cp.rounds(); ++r) {
    const Party s = cp.sender(r);
    regs.push_back({"m" + std::to_string(r + 1), cp.lengths[r], s});
    regs.push_back({"c" + std::to_string(r + 1), cp.lengths[r], s});
  }
  regs.push_back({"inb", bbits, Party::bob});
  regs.push_back({"ans", gbits, cp.answerer()});

  QuantumProtocolBody b;
  b.layout = RegisterLayout(regs);
  b.input_a = {{"ina"}, identity_embed(cp.e_size)};
  b.input_b = {{"inb"}, identity_embed(cp.f_size)};

  // Transcript registers a party can read at round r: messages it received
  // as-is, messages it sent via its retained copies.
  auto transcript_regs = [&](Party viewer, std::size_t upto) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < upto; ++j)
      out.push_back((cp.sender(j) == viewer ? "c" : "m") + std::to_string(j + 1));
    return out;
  };

  for (std::size_t r = 0; r < cp.rounds(); ++r) {
    const Party s = cp.sender(r);
    const int in_bits = (s == Party::alice) ? abits : bbits;
    const std::size_t in_size = cp.input_size(s);
    const std::vector<std::string> past = transcript_regs(s, r);
    const int past_bits = cp.prefix_bits(r);
    const int l = cp.lengths[r];

    // permutation: |in, past, 0, 0> -> |in, past, m, m>
    const int dim_bits = in_bits + past_bits + 2 * l;
    ComplexMatrix u(std::size_t(1) << dim_bits, std::size_t(1) << dim_bits);
    for (std::uint64_t in = 0; in < (std::uint64_t(1) << in_bits); ++in)
      for (std::uint64_t past_v = 0; past_v < (std::uint64_t(1) << past_bits); ++past_v) {
        std::uint64_t m = 0;
        if (in < in_size) m = cp.message(r, in, past_v, 0, 0);
        for (std::uint64_t t1 = 0; t1 < (std::uint64_t(1) << l); ++t1)
          for (std::uint64_t t2 = 0; t2 < (std::uint64_t(1) << l); ++t2) {
            const std::uint64_t src = ((in << past_bits | past_v) << l | t1) << l | t2;
            const std::uint64_t dst = ((in << past_bits | past_v) << l | (t1 ^ m)) << l | (t2 ^ m);
            u(dst, src) = 1.0;
          }
      }
    std::vector<std::string> gate_regs{s == Party::alice ? "ina" : "inb"};
    gate_regs.insert(gate_regs.end(), past.begin(), past.end());
    gate_regs.push_back("m" + std::to_string(r + 1));
    gate_regs.push_back("c" + std::to_string(r + 1));
    QuantumRound round;
    round.gates.push_back({std::move(u), gate_regs});
    round.transfer = {"m" + std::to_string(r + 1)};
    b.round_list.push_back(std::move(round));
  }

  // Answer: XOR the table value into the answer register.
  const Party ans = cp.answerer();
  const int in_bits = (ans == Party::alice) ? abits : bbits;
  const std::vector<std::string> past = transcript_regs(ans, cp.rounds());
  const int past_bits = cp.total_bits();
  {
    const int dim_bits = in_bits + past_bits + gbits;
    ComplexMatrix u(std::size_t(1) << dim_bits, std::size_t(1) << dim_bits);
    for (std::uint64_t in = 0; in < (std::uint64_t(1) << in_bits); ++in)
      for (std::uint64_t past_v = 0; past_v < (std::uint64_t(1) << past_bits); ++past_v) {
        std::uint64_t a = 0;
        if (in < cp.input_size(ans)) a = static_cast<std::uint64_t>(cp.answer(in, past_v, 0, 0));
        for (std::uint64_t t = 0; t < (std::uint64_t(1) << gbits); ++t) {
          const std::uint64_t src = (in << past_bits | past_v) << gbits | t;
          const std::uint64_t dst = (in << past_bits | past_v) << gbits | (t ^ a);
          u(dst, src) = 1.0;
        }
      }
    std::vector<std::string> gate_regs{ans == Party::alice ? "ina" : "inb"};
    gate_regs.insert(gate_regs.end(), past.begin(), past.end());
    gate_regs.push_back("ans");
    b.final_gates.push_back({std::move(u), gate_regs});
  }
  std::vector<int> outcome(std::size_t(1) << gbits, 0);
  for (std::size_t o = 0; o < outcome.size(); ++o)
    outcome[o] = (o < cp.g_size) ? static_cast<int>(o) : 0;
  b.measurement = {{"ans"}, outcome};

  QuantumSafeProtocol p;
  p.sig.starter = cp.starter;
  p.sig.safe_qubits = 0;
  p.sig.lengths = cp.lengths;
  p.e_size = cp.e_size;
  p.f_size = cp.f_size;
  p.g_size = cp.g_size;
  p.branches.emplace_back(Rational(1), std::move(b));
  p.validate();
  return p;
}

}  // namespace qclab
