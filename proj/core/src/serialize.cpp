#include "qclab/serialize.hpp"

#include "qclab/common.hpp"

namespace qclab {

namespace {

json rational_list(const std::vector<Rational>& v) {
  json out = json::array();
  for (const Rational& r : v) out.push_back(r.str());
  return out;
}

std::vector<Rational> rationals_from(const json& j) {
  std::vector<Rational> out;
  for (const auto& s : j) out.push_back(Rational::parse(s.get<std::string>()));
  return out;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.front().size() : 0;
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = cd(j[i][k][0].get<double>(), j[i][k][1].get<double>());
  return m;
}

json amps_to_json(const std::vector<cd>& amps) {
  json out = json::array();
  for (const cd& a : amps) out.push_back(json::array({a.real(), a.imag()}));
  return out;
}

std::vector<cd> amps_from_json(const json& j) {
  std::vector<cd> out;
  for (const auto& pair : j) out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  return out;
}

json coin_to_json(const CoinSpace& c) { return rational_list(c.probs); }

CoinSpace coin_from_json(const json& j) { return CoinSpace{rationals_from(j)}; }

json body_to_json(const QuantumProtocolBody& b) {
  json out;
  json regs = json::array();
  for (const Register& r : b.layout.registers())
    regs.push_back({{"name", r.name}, {"qubits", r.qubits}, {"owner", to_string(r.owner)}});
  out["layout"] = std::move(regs);
  out["input_a"] = {{"regs", b.input_a.regs}, {"embed", b.input_a.embed}};
  out["input_b"] = {{"regs", b.input_b.regs}, {"embed", b.input_b.embed}};
  json inits = json::array();
  for (const StateInit& init : b.inits)
    inits.push_back({{"regs", init.regs}, {"amps", amps_to_json(init.amps)}});
  out["inits"] = std::move(inits);
  json rounds = json::array();
  for (const QuantumRound& round : b.round_list) {
    json gates = json::array();
    for (const Gate& gate : round.gates)
      gates.push_back({{"regs", gate.regs}, {"matrix", matrix_to_json(gate.matrix)}});
    rounds.push_back({{"gates", std::move(gates)}, {"transfer", round.transfer}});
  }
  out["rounds"] = std::move(rounds);
  json finals = json::array();
  for (const Gate& gate : b.final_gates)
    finals.push_back({{"regs", gate.regs}, {"matrix", matrix_to_json(gate.matrix)}});
  out["final_gates"] = std::move(finals);
  out["measurement"] = {{"regs", b.measurement.regs}, {"map", b.measurement.outcome_to_answer}};
  out["safe_regs"] = b.safe_regs;
  return out;
}

QuantumProtocolBody body_from_json(const json& j) {
  QuantumProtocolBody b;
  std::vector<Register> regs;
  for (const auto& r : j.at("layout"))
    regs.push_back({r.at("name").get<std::string>(), r.at("qubits").get<int>(),
                    party_from_string(r.at("owner").get<std::string>())});
  b.layout = RegisterLayout(std::move(regs));
  b.input_a = {j.at("input_a").at("regs").get<std::vector<std::string>>(),
               j.at("input_a").at("embed").get<std::vector<std::uint64_t>>()};
  b.input_b = {j.at("input_b").at("regs").get<std::vector<std::string>>(),
               j.at("input_b").at("embed").get<std::vector<std::uint64_t>>()};
  for (const auto& init : j.at("inits"))
    b.inits.push_back({init.at("regs").get<std::vector<std::string>>(),
                       amps_from_json(init.at("amps"))});
  for (const auto& round : j.at("rounds")) {
    QuantumRound qr;
    for (const auto& gate : round.at("gates"))
      qr.gates.push_back({matrix_from_json(gate.at("matrix")),
                          gate.at("regs").get<std::vector<std::string>>()});
    qr.transfer = round.at("transfer").get<std::vector<std::string>>();
    b.round_list.push_back(std::move(qr));
  }
  for (const auto& gate : j.at("final_gates"))
    b.final_gates.push_back({matrix_from_json(gate.at("matrix")),
                             gate.at("regs").get<std::vector<std::string>>()});
  b.measurement = {j.at("measurement").at("regs").get<std::vector<std::string>>(),
                   j.at("measurement").at("map").get<std::vector<int>>()};
  b.safe_regs = j.at("safe_regs").get<std::vector<std::string>>();
  return b;
}

}  // namespace

json to_json(const GameSpec& g) {
  json out;
  out["kind"] = "game";
  out["name"] = g.name;
  out["e"] = g.e_size;
  out["f"] = g.f_size;
  out["g"] = g.g_size;
  out["table"] = g.table;
  if (!g.promise.empty()) {
    json promise = json::array();
    for (const auto& [x, y] : g.promise) promise.push_back(json::array({x, y}));
    out["promise"] = std::move(promise);
  }
  return out;
}

GameSpec game_from_json(const json& j) {
  GameSpec g;
  g.name = j.value("name", "");
  g.e_size = j.at("e").get<std::size_t>();
  g.f_size = j.at("f").get<std::size_t>();
  g.g_size = j.at("g").get<std::size_t>();
  g.table = j.at("table").get<std::vector<int>>();
  if (j.contains("promise"))
    for (const auto& pr : j.at("promise"))
      g.promise.emplace_back(pr[0].get<int>(), pr[1].get<int>());
  g.validate();
  return g;
}

json to_json(const JointDistribution& d) {
  json out;
  out["kind"] = "distribution";
  out["e"] = d.e_size;
  out["f"] = d.f_size;
  out["p"] = rational_list(d.p);
  return out;
}

JointDistribution distribution_from_json(const json& j) {
  JointDistribution d;
  d.e_size = j.at("e").get<std::size_t>();
  d.f_size = j.at("f").get<std::size_t>();
  d.p = rationals_from(j.at("p"));
  d.validate();
  return d;
}

json to_json(const ClassicalProtocol& p) {
  json out;
  out["kind"] = "classical_protocol";
  out["starter"] = to_string(p.starter);
  out["e"] = p.e_size;
  out["f"] = p.f_size;
  out["g"] = p.g_size;
  out["lengths"] = p.lengths;
  out["coin_a"] = coin_to_json(p.coin_a);
  out["coin_b"] = coin_to_json(p.coin_b);
  if (p.has_public_coin) out["public_coin"] = coin_to_json(p.public_coin);
  out["message_tables"] = p.message_tables;
  out["answer_table"] = p.answer_table;
  if (!p.abort_table.empty()) {
    out["abort_party"] = to_string(p.abort_party);
    out["abort_table"] = p.abort_table;
  }
  return out;
}

ClassicalProtocol classical_protocol_from_json(const json& j) {
  ClassicalProtocol p;
  p.starter = party_from_string(j.at("starter").get<std::string>());
  p.e_size = j.at("e").get<std::size_t>();
  p.f_size = j.at("f").get<std::size_t>();
  p.g_size = j.at("g").get<std::size_t>();
  p.lengths = j.at("lengths").get<std::vector<int>>();
  p.coin_a = coin_from_json(j.at("coin_a"));
  p.coin_b = coin_from_json(j.at("coin_b"));
  if (j.contains("public_coin")) {
    p.has_public_coin = true;
    p.public_coin = coin_from_json(j.at("public_coin"));
  }
  p.message_tables = j.at("message_tables").get<std::vector<std::vector<std::uint32_t>>>();
  p.answer_table = j.at("answer_table").get<std::vector<std::uint32_t>>();
  if (j.contains("abort_table")) {
    p.abort_party = party_from_string(j.at("abort_party").get<std::string>());
    p.abort_table = j.at("abort_table").get<std::vector<std::uint8_t>>();
  }
  p.validate();
  return p;
}

json to_json(const QuantumSafeProtocol& p) {
  json out;
  out["kind"] = "quantum_protocol";
  out["signature"] = {{"starter", to_string(p.sig.starter)},
                      {"safe", p.sig.safe_qubits},
                      {"lengths", p.sig.lengths}};
  out["e"] = p.e_size;
  out["f"] = p.f_size;
  out["g"] = p.g_size;
  json branches = json::array();
  for (const auto& [w, b] : p.branches) {
    json branch = body_to_json(b);
    branch["prob"] = w.str();
    branches.push_back(std::move(branch));
  }
  out["branches"] = std::move(branches);
  return out;
}

QuantumSafeProtocol quantum_protocol_from_json(const json& j) {
  QuantumSafeProtocol p;
  p.sig.starter = party_from_string(j.at("signature").at("starter").get<std::string>());
  p.sig.safe_qubits = j.at("signature").at("safe").get<int>();
  p.sig.lengths = j.at("signature").at("lengths").get<std::vector<int>>();
  p.e_size = j.at("e").get<std::size_t>();
  p.f_size = j.at("f").get<std::size_t>();
  p.g_size = j.at("g").get<std::size_t>();
  for (const auto& branch : j.at("branches"))
    p.branches.emplace_back(Rational::parse(branch.at("prob").get<std::string>()),
                            body_from_json(branch));
  p.validate();
  return p;
}

json to_json(const FksRankTable& t) {
  json out;
  out["kind"] = "fks_table";
  out["universe"] = std::to_string(t.universe());
  out["n"] = t.size();
  out["lane_bits"] = t.lane_bits();
  out["word_bits"] = t.word_bits();
  json cells = json::array();
  for (std::uint64_t c : t.cells()) cells.push_back(std::to_string(c));
  out["cells"] = std::move(cells);
  return out;
}

FksRankTable fks_table_from_json(const json& j) {
  std::vector<std::uint64_t> cells;
  for (const auto& c : j.at("cells")) cells.push_back(std::stoull(c.get<std::string>()));
  return FksRankTable::from_parts(std::move(cells),
                                  std::stoull(j.at("universe").get<std::string>()),
                                  j.at("n").get<std::size_t>(), j.at("lane_bits").get<int>(),
                                  j.at("word_bits").get<int>());
}

json to_json(const EliminationCertificate& c) {
  json out;
  out["kind"] = "certificate";
  out["step"] = c.kind;
  out["input_signature"] = c.input_signature;
  out["output_signature"] = c.output_signature;
  out["eps_before"] = round12(c.eps_before);
  out["eps_after"] = round12(c.eps_after);
  out["information"] = round12(c.information);
  out["bound"] = round12(c.bound);
  out["slack"] = round12(c.slack);
  if (c.exact) {
    out["eps_before_exact"] = c.eps_before_exact.str();
    out["eps_after_exact"] = c.eps_after_exact.str();
  }
  return out;
}

json to_json(const EliminationLedger& l) {
  json out;
  out["kind"] = "elimination_ledger";
  out["certificate"] = to_json(l.certificate);
  out["eps_dstar_in"] = round12(l.eps_dstar_in);
  out["eps_d_out"] = round12(l.eps_d_out);
  out["bound_d"] = round12(l.bound_d);
  out["slack_d"] = round12(l.slack_d);
  out["info_budget"] = round12(l.info_budget);
  out["info_measured"] = round12(l.info_measured);
  out["additivity_residual"] = round12(l.additivity_residual);
  out["averaging_residual"] = round12(l.averaging_residual);
  out["pieces"] = l.pieces;
  return out;
}

}  // namespace qclab
