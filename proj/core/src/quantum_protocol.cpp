#include "qclab/quantum_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qclab/linalg.hpp"

namespace qclab {

namespace {

int qubits_of(const RegisterLayout& layout, const std::vector<std::string>& regs) {
  int n = 0;
  for (const std::string& r : regs) n += layout.reg(r).qubits;
  return n;
}

// Ownership trace over the rounds; index 0 = initial owners.
std::vector<std::map<std::string, Party>> ownership_trace(const QuantumProtocolBody& b) {
  std::map<std::string, Party> owner;
  for (const Register& r : b.layout.registers()) owner[r.name] = r.owner;
  std::vector<std::map<std::string, Party>> trace{owner};
  for (const QuantumRound& round : b.round_list) {
    for (const std::string& r : round.transfer) owner[r] = other(owner.at(r));
    trace.push_back(owner);
  }
  return trace;
}

void check_disjoint_inits(const QuantumProtocolBody& b) {
  std::set<std::string> covered(b.input_a.regs.begin(), b.input_a.regs.end());
  for (const std::string& r : b.input_b.regs)
    if (!covered.insert(r).second) throw std::invalid_argument("input registers overlap");
  for (const StateInit& init : b.inits) {
    for (const std::string& r : init.regs)
      if (!covered.insert(r).second)
        throw std::invalid_argument("prepared register '" + r + "' overlaps inputs or other inits");
    for (const std::string& r : init.regs)
      if (b.layout.reg(r).owner != b.layout.reg(init.regs.front()).owner)
        throw std::invalid_argument("a state init may not span both parties");
    const std::uint64_t dim = std::uint64_t(1) << qubits_of(b.layout, init.regs);
    if (init.amps.size() != dim) throw std::invalid_argument("state init dimension mismatch");
  }
}

void validate_body(const QuantumProtocolBody& b, const SafeSignature& sig, std::size_t e_size,
                   std::size_t f_size, std::size_t g_size) {
  if (b.round_list.size() != sig.rounds())
    throw std::invalid_argument("round count does not match signature");

  auto check_input = [&](const InputSpec& in, Party p, std::size_t set_size) {
    if (in.regs.empty()) throw std::invalid_argument("party without input registers");
    int qubits = 0;
    for (const std::string& r : in.regs) {
      if (b.layout.reg(r).owner != p)
        throw std::invalid_argument("input register '" + r + "' not owned by its party");
      qubits += b.layout.reg(r).qubits;
    }
    if (in.embed.size() != set_size) throw std::invalid_argument("input embedding size mismatch");
    for (std::uint64_t v : in.embed)
      if (v >= (std::uint64_t(1) << qubits))
        throw std::invalid_argument("input embedding value out of range");
  };
  check_input(b.input_a, Party::alice, e_size);
  check_input(b.input_b, Party::bob, f_size);
  check_disjoint_inits(b);

  const std::set<std::string> inputs_set = [&] {
    std::set<std::string> s(b.input_a.regs.begin(), b.input_a.regs.end());
    s.insert(b.input_b.regs.begin(), b.input_b.regs.end());
    return s;
  }();

  auto trace = ownership_trace(b);
  for (std::size_t r = 0; r < b.round_list.size(); ++r) {
    const Party sender = quantum_sender(sig, r);
    const auto& owner = trace[r];
    for (const Gate& gate : b.round_list[r].gates) {
      if (gate.regs.empty()) throw std::invalid_argument("gate without targets");
      for (const std::string& reg : gate.regs)
        if (owner.at(reg) != sender)
          throw std::invalid_argument("round " + std::to_string(r + 1) + " gate touches '" + reg +
                                      "' not owned by the sender");
      const std::uint64_t dim = std::uint64_t(1) << qubits_of(b.layout, gate.regs);
      if (gate.matrix.rows() != dim || gate.matrix.cols() != dim)
        throw std::invalid_argument("gate dimension mismatch");
    }
    std::set<std::string> seen;
    for (const std::string& reg : b.round_list[r].transfer) {
      if (!seen.insert(reg).second) throw std::invalid_argument("register transferred twice");
      if (owner.at(reg) != sender)
        throw std::invalid_argument("transfer of '" + reg + "' not owned by the sender");
      if (inputs_set.count(reg))
        throw std::invalid_argument("input register '" + reg + "' must never be sent");
    }
    const int sent = qubits_of(b.layout, b.round_list[r].transfer);
    const int want = sig.lengths[r] + (r == 0 ? sig.safe_qubits : 0);
    if (sent != want)
      throw std::invalid_argument("round " + std::to_string(r + 1) + " sends " +
                                  std::to_string(sent) + " qubits, signature wants " +
                                  std::to_string(want));
  }

  // safe overhead: sub-registers of the first transfer totalling c qubits
  if (sig.rounds() > 0) {
    const auto& first = b.round_list[0].transfer;
    for (const std::string& regname : b.safe_regs)
      if (std::find(first.begin(), first.end(), regname) == first.end())
        throw std::invalid_argument("safe register '" + regname + "' not part of the first message");
    if (qubits_of(b.layout, b.safe_regs) != sig.safe_qubits)
      throw std::invalid_argument("safe overhead size does not match signature");
  } else if (sig.safe_qubits != 0 && b.safe_regs.empty()) {
    // zero-round protocols carry the overhead designation vacuously
  }

  // measurement by the answerer, never on inputs, regs in layout order
  const Party ans = quantum_answerer(sig);
  const auto& owner_final = trace.back();
  int last_pos = -1;
  int ans_qubits = 0;
  for (const std::string& reg : b.measurement.regs) {
    if (owner_final.at(reg) != ans)
      throw std::invalid_argument("answer register '" + reg + "' not held by the answerer");
    if (inputs_set.count(reg))
      throw std::invalid_argument("input register '" + reg + "' must never be measured");
    const int pos = static_cast<int>(b.layout.index_of(reg));
    if (pos <= last_pos) throw std::invalid_argument("answer registers must be in layout order");
    last_pos = pos;
    ans_qubits += b.layout.reg(reg).qubits;
  }
  if (b.measurement.outcome_to_answer.size() != (std::size_t(1) << ans_qubits))
    throw std::invalid_argument("outcome map size mismatch");
  for (int v : b.measurement.outcome_to_answer)
    if (v < 0 || static_cast<std::size_t>(v) >= g_size)
      throw std::invalid_argument("outcome map value out of range");

  for (const Gate& gate : b.final_gates) {
    for (const std::string& reg : gate.regs)
      if (owner_final.at(reg) != ans)
        throw std::invalid_argument("final gate touches a register not held by the answerer");
    const std::uint64_t dim = std::uint64_t(1) << qubits_of(b.layout, gate.regs);
    if (gate.matrix.rows() != dim || gate.matrix.cols() != dim)
      throw std::invalid_argument("final gate dimension mismatch");
  }
}

}  // namespace

std::string SafeSignature::str() const {
  std::string s = "[" + std::to_string(rounds()) + "," + std::to_string(safe_qubits);
  for (int l : lengths) s += "," + std::to_string(l);
  s += "]^";
  s += (starter == Party::alice) ? "A" : "B";
  return s;
}

Party quantum_sender(const SafeSignature& sig, std::size_t round) {
  return (round % 2 == 0) ? sig.starter : other(sig.starter);
}

Party quantum_answerer(const SafeSignature& sig) {
  // Zero-round protocols are answered by the party the signature names;
  // eliminating the first message of an Alice-started protocol leaves Bob
  // answering from his input and the public coin alone.
  if (sig.rounds() == 0) return sig.starter;
  return other(quantum_sender(sig, sig.rounds() - 1));
}

const QuantumProtocolBody& QuantumSafeProtocol::body() const {
  if (!is_coinless()) throw std::invalid_argument("protocol has a public coin");
  return branches.front().second;
}

void QuantumSafeProtocol::validate() const {
  if (branches.empty()) throw std::invalid_argument("protocol without branches");
  Rational sum(0);
  for (const auto& [w, b] : branches) {
    if (w.is_negative()) throw std::invalid_argument("negative coin probability");
    sum += w;
    validate_body(b, sig, e_size, f_size, g_size);
  }
  if (sum != Rational(1)) throw std::invalid_argument("coin probabilities must sum to 1");
}

PureState initial_state(const QuantumProtocolBody& b, std::optional<std::uint64_t> x,
                        std::optional<std::uint64_t> y,
                        const std::vector<StateInit>& extra_inits) {
  // Inputs as basis bits; extra inits may cover an input register group
  // instead (used when feeding superpositions).
  std::set<std::string> overridden;
  for (const StateInit& init : extra_inits)
    for (const std::string& r : init.regs) overridden.insert(r);

  std::uint64_t base = 0;
  auto embed_input = [&](const InputSpec& in, std::optional<std::uint64_t> value) {
    bool covered = !in.regs.empty() && overridden.count(in.regs.front()) > 0;
    if (covered) return;
    if (!value) throw std::invalid_argument("input value required");
    std::uint64_t v = in.embed.at(*value);
    // split the concatenated value over the registers, last register least
    // significant
    for (std::size_t k = in.regs.size(); k-- > 0;) {
      const Register& reg = b.layout.reg(in.regs[k]);
      const std::uint64_t mask = (std::uint64_t(1) << reg.qubits) - 1;
      const std::uint64_t part = v & mask;
      v >>= reg.qubits;
      const auto pos = b.layout.qubit_positions(reg.name);
      for (int q = 0; q < reg.qubits; ++q)
        if ((part >> (reg.qubits - 1 - q)) & 1u)
          base |= std::uint64_t(1) << (b.layout.total_qubits() - 1 - pos[q]);
    }
  };
  embed_input(b.input_a, x);
  embed_input(b.input_b, y);

  PureState state = PureState::basis(b.layout, base);
  for (const StateInit& init : b.inits)
    state = apply_gate(state, preparation_unitary(init.amps), init.regs);
  for (const StateInit& init : extra_inits)
    state = apply_gate(state, preparation_unitary(init.amps), init.regs);
  return state;
}

PureState run_rounds(const QuantumProtocolBody& b, const PureState& start, std::size_t upto) {
  PureState state = start;
  for (std::size_t r = 0; r < upto && r < b.round_list.size(); ++r)
    for (const Gate& gate : b.round_list[r].gates) state = apply_gate(state, gate.matrix, gate.regs);
  return state;
}

namespace {

double branch_error(const QuantumProtocolBody& b, const GameSpec& g, std::uint64_t x,
                    std::uint64_t y) {
  PureState state = run_rounds(b, initial_state(b, x, y), b.round_list.size());
  for (const Gate& gate : b.final_gates) state = apply_gate(state, gate.matrix, gate.regs);
  std::set<std::string> regs(b.measurement.regs.begin(), b.measurement.regs.end());
  const std::vector<double> outcome = basis_marginal(state, regs);
  double correct = 0;
  for (std::size_t o = 0; o < outcome.size(); ++o)
    if (b.measurement.outcome_to_answer[o] == g.value(x, y)) correct += outcome[o];
  return 1.0 - correct;
}

}  // namespace

QuantumErrorReport eval_quantum(const QuantumSafeProtocol& p, const GameSpec& g,
                                const JointDistribution* d) {
  p.validate();
  g.validate();
  if (p.e_size != g.e_size || p.f_size != g.f_size || p.g_size != g.g_size)
    throw std::invalid_argument("protocol sets do not match the game");
  QuantumErrorReport rep;
  rep.grid.e_size = g.e_size;
  rep.grid.f_size = g.f_size;
  rep.grid.eps.assign(g.e_size * g.f_size, 0.0);
  rep.lengths = p.sig.lengths;
  rep.total_qubits = p.branches.front().second.layout.total_qubits();

  for (std::size_t x = 0; x < g.e_size; ++x)
    for (std::size_t y = 0; y < g.f_size; ++y) {
      double err = 0;
      for (const auto& [w, b] : p.branches) {
        if (w.is_zero()) continue;
        err += w.to_double() * branch_error(b, g, x, y);
      }
      rep.grid.at(x, y) = err;
    }

  rep.eps_worst = 0;
  for (std::size_t x = 0; x < g.e_size; ++x)
    for (std::size_t y = 0; y < g.f_size; ++y)
      if (g.allowed(x, y)) rep.eps_worst = std::max(rep.eps_worst, rep.grid.at(x, y));
  if (d) {
    rep.has_distribution = true;
    rep.eps_d = 0;
    for (std::size_t x = 0; x < g.e_size; ++x)
      for (std::size_t y = 0; y < g.f_size; ++y)
        rep.eps_d += d->prob(x, y).to_double() * rep.grid.at(x, y);
  }
  return rep;
}

VerifyReport verify_safe(const QuantumSafeProtocol& p) {
  p.validate();
  VerifyReport rep;
  rep.pass = true;
  if (p.sig.rounds() == 0 || p.sig.safe_qubits == 0) {
    rep.detail = "no safe overhead to check";
    return rep;
  }
  for (const auto& [w, b] : p.branches) {
    const std::set<std::string> safe(b.safe_regs.begin(), b.safe_regs.end());
    std::optional<ComplexMatrix> ref;
    for (std::uint64_t x = 0; x < p.e_size; ++x)
      for (std::uint64_t y = 0; y < p.f_size; ++y) {
        const PureState at_send = run_rounds(b, initial_state(b, x, y), 1);
        const DensityMatrix red = reduced_density(at_send, safe);
        if (!ref) {
          ref = red.matrix();
        } else {
          const double dev = trace_norm(red.matrix() - *ref);
          rep.max_deviation = std::max(rep.max_deviation, dev);
          if (dev > 1e-8) rep.pass = false;
        }
      }
  }
  rep.detail = rep.pass ? "safe overhead independent of inputs" : "safe overhead varies with inputs";
  return rep;
}

VerifyReport verify_secure(const QuantumSafeProtocol& p) {
  p.validate();  // transfer/measurement restrictions are structural
  VerifyReport rep;
  rep.pass = true;
  for (const auto& [w, b] : p.branches) {
    for (std::uint64_t x = 0; x < p.e_size; ++x)
      for (std::uint64_t y = 0; y < p.f_size; ++y) {
        PureState state = initial_state(b, x, y);
        const DensityMatrix initial_a =
            reduced_density(state, {b.input_a.regs.begin(), b.input_a.regs.end()});
        const DensityMatrix initial_b =
            reduced_density(state, {b.input_b.regs.begin(), b.input_b.regs.end()});
        for (std::size_t r = 0; r <= b.round_list.size(); ++r) {
          PureState now = run_rounds(b, state, r);
          if (r == b.round_list.size())
            for (const Gate& gate : b.final_gates) now = apply_gate(now, gate.matrix, gate.regs);
          const DensityMatrix ra =
              reduced_density(now, {b.input_a.regs.begin(), b.input_a.regs.end()});
          const DensityMatrix rb =
              reduced_density(now, {b.input_b.regs.begin(), b.input_b.regs.end()});
          const double dev = std::max(trace_norm(ra.matrix() - initial_a.matrix()),
                                      trace_norm(rb.matrix() - initial_b.matrix()));
          rep.max_deviation = std::max(rep.max_deviation, dev);
          if (dev > 1e-8) rep.pass = false;
        }
      }
  }
  rep.detail = rep.pass ? "inputs untouched throughout" : "an input register was disturbed";
  return rep;
}

Encoding first_message_encoding(const QuantumSafeProtocol& p, const GameSpec& g,
                                const JointDistribution& d) {
  p.validate();
  if (p.sig.rounds() == 0) throw std::invalid_argument("first_message_encoding: empty first message");
  if (d.e_size != g.e_size || d.f_size != g.f_size)
    throw std::invalid_argument("distribution does not match the game");
  const Party s = p.sig.starter;
  const std::vector<Rational> marginal =
      (s == Party::alice) ? d.marginal_x() : d.marginal_y();

  std::vector<Rational> priors;
  std::vector<DensityMatrix> messages;
  for (std::size_t v = 0; v < marginal.size(); ++v) {
    if (marginal[v].is_zero()) continue;
    priors.push_back(marginal[v]);
    std::optional<ComplexMatrix> acc;
    RegisterLayout msg_layout;
    for (const auto& [w, b] : p.branches) {
      const std::uint64_t x = (s == Party::alice) ? v : 0;
      const std::uint64_t y = (s == Party::alice) ? 0 : v;
      const PureState at_send = run_rounds(b, initial_state(b, x, y), 1);
      const std::set<std::string> msg(b.round_list[0].transfer.begin(),
                                      b.round_list[0].transfer.end());
      const DensityMatrix red = reduced_density(at_send, msg);
      msg_layout = red.layout();
      if (!acc)
        acc = w.to_double() * red.matrix();
      else
        *acc = *acc + w.to_double() * red.matrix();
    }
    messages.emplace_back(msg_layout, std::move(*acc));
  }
  return Encoding::quantum(std::move(priors), std::move(messages));
}

FixedQuantumCoin fix_public_coin(const QuantumSafeProtocol& p, const GameSpec& g,
                                 const JointDistribution& d) {
  if (p.is_coinless()) throw std::invalid_argument("fix_public_coin: no public coin present");
  std::optional<FixedQuantumCoin> best;
  for (std::size_t c = 0; c < p.branches.size(); ++c) {
    if (p.branches[c].first.is_zero()) continue;
    QuantumSafeProtocol q;
    q.sig = p.sig;
    q.e_size = p.e_size;
    q.f_size = p.f_size;
    q.g_size = p.g_size;
    q.branches.emplace_back(Rational(1), p.branches[c].second);
    const auto rep = eval_quantum(q, g, &d);
    if (!best || rep.eps_d < best->eps_d) best = FixedQuantumCoin{std::move(q), c, rep.eps_d};
  }
  if (!best) throw std::invalid_argument("public coin has empty support");
  return std::move(*best);
}

ComplexMatrix controlled_unitary(int control_qubits, const std::vector<ComplexMatrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("controlled_unitary: no blocks");
  const std::uint64_t nc = std::uint64_t(1) << control_qubits;
  if (blocks.size() > nc) throw std::invalid_argument("controlled_unitary: too many blocks");
  const std::uint64_t dt = blocks.front().rows();
  for (const ComplexMatrix& b : blocks)
    if (b.rows() != dt || b.cols() != dt)
      throw std::invalid_argument("controlled_unitary: block dimension mismatch");
  ComplexMatrix u(nc * dt, nc * dt);
  for (std::uint64_t c = 0; c < nc; ++c) {
    if (c < blocks.size()) {
      for (std::uint64_t i = 0; i < dt; ++i)
        for (std::uint64_t j = 0; j < dt; ++j) u(c * dt + i, c * dt + j) = blocks[c](i, j);
    } else {
      for (std::uint64_t i = 0; i < dt; ++i) u(c * dt + i, c * dt + i) = 1.0;
    }
  }
  return u;
}

ComplexMatrix xor_copy_gate(int qubits) {
  const std::uint64_t d = std::uint64_t(1) << qubits;
  ComplexMatrix u(d * d, d * d);
  for (std::uint64_t c = 0; c < d; ++c)
    for (std::uint64_t t = 0; t < d; ++t) u(c * d + (t ^ c), c * d + t) = 1.0;
  return u;
}

QuantumSafeProtocol append_round(const QuantumSafeProtocol& p, const QuantumRound& round,
                                 const Measurement& new_measurement) {
  QuantumSafeProtocol q = p;
  q.sig.lengths.push_back(0);
  for (auto& [w, b] : q.branches) {
    int sent = 0;
    for (const std::string& r : round.transfer) sent += b.layout.reg(r).qubits;
    q.sig.lengths.back() = sent;
    QuantumRound appended = round;
    // the previous answerer's processing becomes part of the new round
    appended.gates.insert(appended.gates.begin(), b.final_gates.begin(), b.final_gates.end());
    b.final_gates.clear();
    b.round_list.push_back(appended);
    b.measurement = new_measurement;
  }
  q.validate();
  return q;
}

}  // namespace qclab
