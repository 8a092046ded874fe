#include "qclab/cell_probe.hpp"

#include <cmath>
#include <set>

#include "qclab/linalg.hpp"

namespace qclab {

namespace {

int ceil_log2_size(std::size_t n) {
  int b = 0;
  while ((std::size_t(1) << b) < n) ++b;
  return std::max(b, 1);
}

}  // namespace

void ClassicalCellScheme::validate() const {
  if (s == 0 || t == 0 || q_size == 0 || a_size == 0 || w < 1)
    throw std::invalid_argument("empty scheme parameters");
  if ((s & (s - 1)) != 0) throw std::invalid_argument("cell count must be a power of two");
  for (const auto& table : tables) {
    if (table.size() != s) throw std::invalid_argument("stored table size mismatch");
    for (std::uint64_t cell : table)
      if (cell >= (std::uint64_t(1) << w)) throw std::invalid_argument("cell exceeds word size");
  }
  if (addr.size() != t) throw std::invalid_argument("one address table per probe required");
  for (std::size_t r = 0; r < t; ++r) {
    if (addr[r].size() != (q_size << (w * r)))
      throw std::invalid_argument("address table size mismatch");
    for (std::uint32_t a : addr[r])
      if (a >= s) throw std::invalid_argument("probe address out of range");
  }
  if (answers.size() != (q_size << (w * t))) throw std::invalid_argument("answer table size mismatch");
  for (std::uint32_t a : answers)
    if (a >= a_size) throw std::invalid_argument("answer out of range");
}

int ClassicalCellScheme::run(std::size_t d, std::size_t q) const {
  std::uint64_t contents = 0;
  for (std::size_t r = 0; r < t; ++r) {
    const std::uint32_t j = addr[r][(q << (w * r)) | contents];
    contents = (contents << w) | tables[d][j];
  }
  return static_cast<int>(answers[(q << (w * t)) | contents]);
}

int QuantumCellScheme::addr_qubits() const { return ceil_log2_size(s); }

void QuantumCellScheme::validate() const {
  if (s == 0 || t == 0 || q_size == 0 || a_size == 0 || w < 1)
    throw std::invalid_argument("empty scheme parameters");
  if ((s & (s - 1)) != 0) throw std::invalid_argument("cell count must be a power of two");
  if (work_qubits < 0) throw std::invalid_argument("negative work register");
  if (q_size > 1 && (std::size_t(1) << work_qubits) < q_size)
    throw std::invalid_argument("work register too small for the query");
  for (const auto& table : tables) {
    if (table.size() != s) throw std::invalid_argument("stored table size mismatch");
    for (std::uint64_t cell : table)
      if (cell >= (std::uint64_t(1) << w)) throw std::invalid_argument("cell exceeds word size");
  }
  if (unitaries.size() != t + 1) throw std::invalid_argument("expected t + 1 unitaries");
  const std::uint64_t dim = std::uint64_t(1) << (addr_qubits() + w + work_qubits);
  for (const ComplexMatrix& u : unitaries) {
    if (u.rows() != dim || u.cols() != dim)
      throw std::invalid_argument("query unitary dimension mismatch");
    if (!u.is_unitary(1e-9)) throw std::invalid_argument("query operator not unitary");
  }
  if (address_only && probe_data_states.size() != t)
    throw std::invalid_argument("address-only schemes declare one data state per probe");
  for (const auto& st : probe_data_states)
    if (st.size() != (std::size_t(1) << w))
      throw std::invalid_argument("declared data state dimension mismatch");
}

namespace {

RegisterLayout scheme_layout(const QuantumCellScheme& sc) {
  std::vector<Register> regs{{"addr", sc.addr_qubits(), Party::alice},
                             {"data", sc.w, Party::alice}};
  if (sc.work_qubits > 0) regs.push_back({"work", sc.work_qubits, Party::alice});
  return RegisterLayout(regs);
}

ComplexMatrix oracle_matrix(const QuantumCellScheme& sc, std::size_t d) {
  // on (addr, data): |j, b> -> |j, b xor T_d[j]>
  const std::uint64_t da = std::uint64_t(1) << sc.addr_qubits();
  const std::uint64_t db = std::uint64_t(1) << sc.w;
  ComplexMatrix o(da * db, da * db);
  for (std::uint64_t j = 0; j < da; ++j) {
    const std::uint64_t flip = (j < sc.s) ? sc.tables[d][j] : 0;
    for (std::uint64_t b = 0; b < db; ++b) o(j * db + (b ^ flip), j * db + b) = 1.0;
  }
  return o;
}

PureState scheme_state_before_probe(const QuantumCellScheme& sc, std::size_t d, std::size_t q,
                                    std::size_t probe) {
  const RegisterLayout layout = scheme_layout(sc);
  const std::uint64_t start = (sc.work_qubits > 0) ? static_cast<std::uint64_t>(q) : 0;
  PureState state = PureState::basis(layout, start);
  std::vector<std::string> all{"addr", "data"};
  if (sc.work_qubits > 0) all.push_back("work");
  for (std::size_t r = 0; r <= probe; ++r) {
    state = apply_gate(state, sc.unitaries[r], all);
    if (r < probe) state = apply_gate(state, oracle_matrix(sc, d), {"addr", "data"});
  }
  return state;
}

}  // namespace

std::vector<double> QuantumCellScheme::run(std::size_t d, std::size_t q) const {
  PureState state = scheme_state_before_probe(*this, d, q, t - 1);
  state = apply_gate(state, oracle_matrix(*this, d), {"addr", "data"});
  std::vector<std::string> all{"addr", "data"};
  if (work_qubits > 0) all.push_back("work");
  state = apply_gate(state, unitaries[t], all);
  return basis_marginal(state, std::set<std::string>(answer_regs.begin(), answer_regs.end()));
}

double QuantumCellScheme::error(std::size_t d, std::size_t q, int want) const {
  const std::vector<double> outcome = run(d, q);
  double correct = 0;
  for (std::size_t o = 0; o < outcome.size(); ++o)
    if (outcome_to_answer[o] == want) correct += outcome[o];
  return 1.0 - correct;
}

AddressOnlyReport check_address_only(const QuantumCellScheme& scheme) {
  scheme.validate();
  AddressOnlyReport rep;
  rep.pass = true;
  rep.found_states.resize(scheme.t);
  for (std::size_t probe = 0; probe < scheme.t; ++probe) {
    for (std::size_t d = 0; d < scheme.tables.size(); ++d)
      for (std::size_t q = 0; q < scheme.q_size; ++q) {
        const PureState state = scheme_state_before_probe(scheme, d, q, probe);
        const DensityMatrix red = reduced_density(state, {"data"});
        // compare against the declared fixed state
        const auto& want = scheme.probe_data_states[probe];
        ComplexMatrix target(want.size(), want.size());
        for (std::size_t i = 0; i < want.size(); ++i)
          for (std::size_t j = 0; j < want.size(); ++j)
            target(i, j) = want[i] * std::conj(want[j]);
        const double dev = trace_norm(red.matrix() - target);
        rep.max_residual = std::max(rep.max_residual, dev);
        if (dev > 1e-8) rep.pass = false;
        if (rep.found_states[probe].empty()) {
          const EigResult e = hermitian_eig(red.matrix());
          std::vector<cd> top(want.size());
          for (std::size_t i = 0; i < want.size(); ++i) top[i] = e.vectors(i, 0);
          rep.found_states[probe] = std::move(top);
        }
      }
  }
  return rep;
}

ClassicalProtocol compile_cellprobe(const ClassicalCellScheme& scheme, const GameSpec& g) {
  scheme.validate();
  g.validate();
  if (g.e_size != scheme.q_size || g.f_size != scheme.tables.size() || g.g_size != scheme.a_size)
    throw std::invalid_argument("game does not match the scheme");
  const int ls = ceil_log2_size(scheme.s);
  const int reply = ls + scheme.w;

  ClassicalProtocol p;
  p.starter = Party::alice;
  p.e_size = scheme.q_size;
  p.f_size = scheme.tables.size();
  p.g_size = scheme.a_size;
  for (std::size_t r = 0; r < scheme.t; ++r) {
    p.lengths.push_back(ls);
    p.lengths.push_back(reply);
  }

  // Parse the cells Alice has seen out of the transcript: Bob's replies sit
  // at rounds 1, 3, .. and carry (address, cell).
  auto contents_from_transcript = [&](std::uint64_t tv, int upto_bits, std::size_t replies) {
    std::uint64_t contents = 0;
    for (std::size_t k = 0; k < replies; ++k) {
      const int shift = upto_bits - static_cast<int>(k + 1) * (ls + reply);
      const std::uint64_t msg = (tv >> shift) & ((1ull << reply) - 1);
      contents = (contents << scheme.w) | (msg & ((1ull << scheme.w) - 1));
    }
    return contents;
  };

  for (std::size_t r = 0; r < 2 * scheme.t; ++r) {
    const Party snd = p.sender(r);
    const std::size_t inputs = p.input_size(snd);
    const int bits = p.prefix_bits(r);
    std::vector<std::uint32_t> table(inputs << bits, 0);
    for (std::size_t in = 0; in < inputs; ++in)
      for (std::uint64_t tv = 0; tv < (std::uint64_t(1) << bits); ++tv) {
        std::uint32_t m;
        if (snd == Party::alice) {
          const std::size_t probe = r / 2;
          const std::uint64_t contents = contents_from_transcript(tv, bits, probe);
          m = scheme.addr[probe][(in << (scheme.w * probe)) | contents];
        } else {
          const std::uint64_t address = tv & ((1ull << ls) - 1);
          m = static_cast<std::uint32_t>((address << scheme.w) | scheme.tables[in][address]);
        }
        table[(in << bits) | tv] = m;
      }
    p.message_tables.push_back(std::move(table));
  }
  {
    const int bits = p.total_bits();
    p.answer_table.assign(p.e_size << bits, 0);
    for (std::size_t in = 0; in < p.e_size; ++in)
      for (std::uint64_t tv = 0; tv < (std::uint64_t(1) << bits); ++tv) {
        const std::uint64_t contents = contents_from_transcript(tv, bits, scheme.t);
        p.answer_table[(in << bits) | tv] =
            scheme.answers[(in << (scheme.w * scheme.t)) | contents];
      }
  }
  p.validate();
  return p;
}

namespace {

// General compile: address and data registers travel both ways, giving the
// wide signature (2t, 0, log s + w, log s + w).
QuantumSafeProtocol compile_cellprobe_general(const QuantumCellScheme& scheme, const GameSpec& g) {
  const int ls = ceil_log2_size(scheme.s);
  const int qin_bits = ceil_log2_size(scheme.q_size);
  const int din_bits = ceil_log2_size(scheme.tables.size());

  std::vector<Register> regs{{"qin", qin_bits, Party::alice},
                             {"addr", ls, Party::alice},
                             {"data", scheme.w, Party::alice}};
  if (scheme.work_qubits > 0) regs.push_back({"work", scheme.work_qubits, Party::alice});
  regs.push_back({"din", din_bits, Party::bob});

  QuantumProtocolBody b;
  b.layout = RegisterLayout(regs);
  {
    std::vector<std::uint64_t> embed_a(scheme.q_size);
    for (std::size_t q = 0; q < scheme.q_size; ++q) embed_a[q] = q;
    b.input_a = {{"qin"}, embed_a};
    std::vector<std::uint64_t> embed_b(scheme.tables.size());
    for (std::size_t d = 0; d < scheme.tables.size(); ++d) embed_b[d] = d;
    b.input_b = {{"din"}, embed_b};
  }
  std::vector<std::string> query_regs{"addr", "data"};
  if (scheme.work_qubits > 0) query_regs.push_back("work");

  for (std::size_t i = 0; i < scheme.t; ++i) {
    QuantumRound alice;
    if (i == 0 && scheme.work_qubits > 0 && scheme.q_size > 1) {
      const std::uint64_t dq = std::uint64_t(1) << qin_bits;
      const std::uint64_t dwk = std::uint64_t(1) << scheme.work_qubits;
      ComplexMatrix u(dq * dwk, dq * dwk);
      for (std::uint64_t c = 0; c < dq; ++c)
        for (std::uint64_t z = 0; z < dwk; ++z) u(c * dwk + (z ^ c), c * dwk + z) = 1.0;
      alice.gates.push_back({std::move(u), {"qin", "work"}});
    }
    alice.gates.push_back({scheme.unitaries[i], query_regs});
    alice.transfer = {"addr", "data"};
    b.round_list.push_back(std::move(alice));

    QuantumRound bob;
    std::vector<ComplexMatrix> blocks;
    for (std::size_t d = 0; d < scheme.tables.size(); ++d) blocks.push_back(oracle_matrix(scheme, d));
    for (std::size_t d = scheme.tables.size(); d < (std::size_t(1) << din_bits); ++d)
      blocks.push_back(ComplexMatrix::identity(blocks.front().rows()));
    bob.gates.push_back({controlled_unitary(din_bits, blocks), {"din", "addr", "data"}});
    bob.transfer = {"addr", "data"};
    b.round_list.push_back(std::move(bob));
  }
  b.final_gates.push_back({scheme.unitaries[scheme.t], query_regs});
  b.measurement = {scheme.answer_regs, scheme.outcome_to_answer};

  QuantumSafeProtocol p;
  p.sig.starter = Party::alice;
  p.sig.safe_qubits = 0;
  for (std::size_t i = 0; i < scheme.t; ++i) {
    p.sig.lengths.push_back(ls + scheme.w);
    p.sig.lengths.push_back(ls + scheme.w);
  }
  p.e_size = scheme.q_size;
  p.f_size = scheme.tables.size();
  p.g_size = scheme.a_size;
  p.branches.emplace_back(Rational(1), std::move(b));
  p.validate();
  return p;
}

}  // namespace

QuantumSafeProtocol compile_cellprobe(const QuantumCellScheme& scheme, const GameSpec& g) {
  scheme.validate();
  g.validate();
  if (g.e_size != scheme.q_size || g.f_size != scheme.tables.size() || g.g_size != scheme.a_size)
    throw std::invalid_argument("game does not match the scheme");
  if (!scheme.address_only) return compile_cellprobe_general(scheme, g);
  {
    const AddressOnlyReport rep = check_address_only(scheme);
    if (!rep.pass)
      throw std::invalid_argument("scheme declared address-only but the check fails (residual " +
                                  std::to_string(rep.max_residual) + ")");
  }

  const int ls = ceil_log2_size(scheme.s);
  const int qin_bits = ceil_log2_size(scheme.q_size);
  const int din_bits = ceil_log2_size(scheme.tables.size());

  std::vector<Register> regs{{"qin", qin_bits, Party::alice},
                             {"addr", ls, Party::alice},
                             {"data", scheme.w, Party::alice}};
  if (scheme.work_qubits > 0) regs.push_back({"work", scheme.work_qubits, Party::alice});
  regs.push_back({"din", din_bits, Party::bob});
  std::vector<std::string> specials;
  for (std::size_t i = 0; i < scheme.t; ++i) {
    specials.push_back("spec" + std::to_string(i + 1));
    regs.push_back({specials.back(), scheme.w, Party::bob});
  }

  QuantumProtocolBody b;
  b.layout = RegisterLayout(regs);
  {
    std::vector<std::uint64_t> embed_a(scheme.q_size);
    for (std::size_t q = 0; q < scheme.q_size; ++q) embed_a[q] = q;
    b.input_a = {{"qin"}, embed_a};
    std::vector<std::uint64_t> embed_b(scheme.tables.size());
    for (std::size_t d = 0; d < scheme.tables.size(); ++d) embed_b[d] = d;
    b.input_b = {{"din"}, embed_b};
  }
  for (std::size_t i = 0; i < scheme.t; ++i)
    b.inits.push_back({{specials[i]}, scheme.probe_data_states[i]});

  std::vector<std::string> query_regs{"addr", "data"};
  if (scheme.work_qubits > 0) query_regs.push_back("work");

  // Bob's oracle on (din, addr, spec_i).
  auto oracle_gate = [&](std::size_t probe) {
    std::vector<ComplexMatrix> blocks;
    for (std::size_t d = 0; d < scheme.tables.size(); ++d) blocks.push_back(oracle_matrix(scheme, d));
    for (std::size_t d = scheme.tables.size(); d < (std::size_t(1) << din_bits); ++d)
      blocks.push_back(ComplexMatrix::identity(blocks.front().rows()));
    return Gate{controlled_unitary(din_bits, blocks), {"din", "addr", specials[probe]}};
  };
  // swap of the probe register with Alice's data register
  auto swap_gate = [&](std::size_t probe) {
    const std::uint64_t dw = std::uint64_t(1) << scheme.w;
    ComplexMatrix sw(dw * dw, dw * dw);
    for (std::uint64_t x = 0; x < dw; ++x)
      for (std::uint64_t y = 0; y < dw; ++y) sw(y * dw + x, x * dw + y) = 1.0;
    return Gate{std::move(sw), {specials[probe], "data"}};
  };
  // copy the query into the work register before the first step
  auto copy_gate = [&] {
    std::vector<std::string> cr{"qin", "work"};
    const int k = qin_bits;
    const std::uint64_t dq = std::uint64_t(1) << k;
    const std::uint64_t dwk = std::uint64_t(1) << scheme.work_qubits;
    ComplexMatrix u(dq * dwk, dq * dwk);
    for (std::uint64_t c = 0; c < dq; ++c)
      for (std::uint64_t z = 0; z < dwk; ++z) u(c * dwk + (z ^ c), c * dwk + z) = 1.0;
    return Gate{std::move(u), cr};
  };

  for (std::size_t i = 0; i < scheme.t; ++i) {
    QuantumRound alice;
    if (i == 0 && scheme.work_qubits > 0 && scheme.q_size > 1) alice.gates.push_back(copy_gate());
    if (i > 0) alice.gates.push_back(swap_gate(i - 1));
    alice.gates.push_back({scheme.unitaries[i], query_regs});
    alice.transfer = {"addr"};
    b.round_list.push_back(std::move(alice));

    QuantumRound bob;
    bob.gates.push_back(oracle_gate(i));
    bob.transfer = {"addr", specials[i]};
    b.round_list.push_back(std::move(bob));
  }
  b.final_gates.push_back(swap_gate(scheme.t - 1));
  b.final_gates.push_back({scheme.unitaries[scheme.t], query_regs});
  b.measurement = {scheme.answer_regs, scheme.outcome_to_answer};

  QuantumSafeProtocol p;
  p.sig.starter = Party::alice;
  p.sig.safe_qubits = 0;
  for (std::size_t i = 0; i < scheme.t; ++i) {
    p.sig.lengths.push_back(ls);
    p.sig.lengths.push_back(ls + scheme.w);
  }
  p.e_size = scheme.q_size;
  p.f_size = scheme.tables.size();
  p.g_size = scheme.a_size;
  p.branches.emplace_back(Rational(1), std::move(b));
  p.validate();
  return p;
}

QuantumCellScheme grover_search_scheme() {
  QuantumCellScheme sc;
  sc.s = 4;
  sc.w = 1;
  sc.t = 1;
  sc.q_size = 1;
  sc.a_size = 4;
  sc.work_qubits = 0;
  for (std::size_t mark = 0; mark < 4; ++mark) {
    std::vector<std::uint64_t> table(4, 0);
    table[mark] = 1;
    sc.tables.push_back(table);
  }
  const double h = 1.0 / std::sqrt(2.0);
  ComplexMatrix hadamard(2, 2);
  hadamard(0, 0) = h;
  hadamard(0, 1) = h;
  hadamard(1, 0) = h;
  hadamard(1, 1) = -h;
  ComplexMatrix minus_prep(2, 2);  // |0> -> (|0> - |1>)/sqrt(2)
  minus_prep(0, 0) = h;
  minus_prep(0, 1) = h;
  minus_prep(1, 0) = -h;
  minus_prep(1, 1) = h;
  sc.unitaries.push_back(kron(kron(hadamard, hadamard), minus_prep));
  ComplexMatrix diffusion(4, 4);  // reflection about the uniform state
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) diffusion(i, j) = (i == j) ? -0.5 : 0.5;
  sc.unitaries.push_back(kron(diffusion, ComplexMatrix::identity(2)));
  sc.answer_regs = {"addr"};
  sc.outcome_to_answer = {0, 1, 2, 3};
  sc.address_only = true;
  sc.probe_data_states = {{cd(h, 0), cd(-h, 0)}};
  sc.validate();
  return sc;
}

GameSpec grover_search_game() {
  GameSpec g;
  g.name = "find-the-mark";
  g.e_size = 1;
  g.f_size = 4;
  g.g_size = 4;
  g.table = {0, 1, 2, 3};
  return g;
}

ClassicalCellScheme binary_search_scheme() {
  ClassicalCellScheme sc;
  sc.s = 4;
  sc.w = 2;
  sc.t = 2;
  sc.q_size = 4;
  sc.a_size = 4;
  // sorted 4-tuples over {0..3} starting at 0
  for (int t1 = 0; t1 < 4; ++t1)
    for (int t2 = t1; t2 < 4; ++t2)
      for (int t3 = t2; t3 < 4; ++t3)
        sc.tables.push_back({0, static_cast<std::uint64_t>(t1), static_cast<std::uint64_t>(t2),
                             static_cast<std::uint64_t>(t3)});
  sc.addr.resize(2);
  sc.addr[0].assign(sc.q_size, 2);  // probe the upper middle first
  sc.addr[1].resize(sc.q_size << 2);
  for (std::size_t q = 0; q < 4; ++q)
    for (std::uint64_t c = 0; c < 4; ++c) sc.addr[1][(q << 2) | c] = (c <= q) ? 3 : 1;
  sc.answers.resize(sc.q_size << 4);
  for (std::size_t q = 0; q < 4; ++q)
    for (std::uint64_t c1 = 0; c1 < 4; ++c1)
      for (std::uint64_t c2 = 0; c2 < 4; ++c2) {
        std::uint64_t ans;
        if (c1 <= q)
          ans = (c2 <= q) ? c2 : c1;  // went right: saw T[3]
        else
          ans = (c2 <= q) ? c2 : 0;  // went left: saw T[1], T[0] = 0
        sc.answers[(q << 4) | (c1 << 2) | c2] = static_cast<std::uint32_t>(ans);
      }
  sc.validate();
  return sc;
}

GameSpec binary_search_game() {
  const ClassicalCellScheme sc = binary_search_scheme();
  GameSpec g;
  g.name = "sorted-predecessor";
  g.e_size = sc.q_size;
  g.f_size = sc.tables.size();
  g.g_size = sc.a_size;
  g.table.resize(g.e_size * g.f_size);
  for (std::size_t q = 0; q < g.e_size; ++q)
    for (std::size_t d = 0; d < g.f_size; ++d) {
      std::uint64_t best = 0;
      for (std::uint64_t cell : sc.tables[d])
        if (cell <= q) best = std::max(best, cell);
      g.table[q * g.f_size + d] = static_cast<int>(best);
    }
  return g;
}

}  // namespace qclab
