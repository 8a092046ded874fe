#include "qclab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qclab/cell_probe.hpp"
#include "qclab/generators.hpp"
#include "qclab/gt_protocol.hpp"
#include "qclab/linalg.hpp"
#include "qclab/rank_parity.hpp"
#include "qclab/round_elim.hpp"
#include "qclab/tracers.hpp"

namespace qclab {

namespace {

using nlohmann::json;

std::string fnv_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double r12(double v) { return round12(v); }

struct CaseTimer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::vector<ResultRecord> suite_info_identities(const ExperimentConfig& cfg) {
  const std::size_t cases = cfg.trials ? cfg.trials : 200;
  std::vector<ResultRecord> out;
  RegisterLayout layout({{"a", 1, Party::alice}, {"b", 1, Party::alice}, {"c", 1, Party::bob}});
  for (std::size_t i = 0; i < cases; ++i) {
    CaseTimer timer;
    Rng rng = Rng::split(cfg.seed, i);
    DensityMatrix rho(layout, random_density(rng, 8));
    const auto rep = check_chain_identity(rho, {"a"}, {"b"}, {"c"});
    const double info = mutual_information(rho, {"a"});
    const double sa = von_neumann_entropy(partial_trace(rho, {"a"}));
    ResultRecord rec;
    rec.suite = cfg.suite;
    rec.case_id = i;
    rec.inputs_digest = fnv_digest("info:" + std::to_string(cfg.seed) + ":" + std::to_string(i));
    rec.measured = {{"residual", r12(rep.residual)},
                    {"information", r12(info)},
                    {"entropy_a", r12(sa)}};
    rec.bounds = {{"residual", 1e-7}, {"info_upper", r12(2 * sa)}, {"entropy_upper", 1.0}};
    rec.slack = r12(std::min({1e-7 - rep.residual, info + 1e-8, 2 * sa - info + 1e-8}));
    rec.pass = rep.residual <= 1e-7 && info >= -1e-8 && info <= 2 * sa + 1e-8 && sa <= 1 + 1e-9;
    rec.wall_ms = timer.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ResultRecord> suite_average_encoding(const ExperimentConfig& cfg) {
  const std::size_t cases = cfg.trials ? cfg.trials : 600;
  std::vector<ResultRecord> out;
  for (std::size_t i = 0; i < cases; ++i) {
    CaseTimer timer;
    Rng rng = Rng::split(cfg.seed, i);
    const bool quantum = (i % 6 == 5);
    EncodingGap gap{};
    if (quantum) {
      const std::size_t values = 2 + rng.below(3);
      auto priors = rng.rational_distribution(values, 16);
      RegisterLayout l({{"m", 2, Party::alice}});
      std::vector<DensityMatrix> msgs;
      for (std::size_t x = 0; x < values; ++x) msgs.emplace_back(l, random_density(rng, 4));
      gap = average_encoding_gap(Encoding::quantum(priors, msgs));
    } else {
      const std::size_t values = 2 + rng.below(3);
      auto priors = rng.rational_distribution(values, 16);
      std::vector<std::vector<Rational>> msgs;
      for (std::size_t x = 0; x < values; ++x) msgs.push_back(rng.rational_distribution(4, 32));
      gap = average_encoding_gap(Encoding::classical(priors, msgs));
    }
    ResultRecord rec;
    rec.suite = cfg.suite;
    rec.case_id = i;
    rec.inputs_digest =
        fnv_digest("avgenc:" + std::to_string(cfg.seed) + ":" + std::to_string(i));
    rec.measured = {{"lhs", r12(gap.lhs)}, {"rhs", r12(gap.rhs)}, {"kind", quantum ? "q" : "c"}};
    rec.bounds = {{"slack", -1e-8}};
    rec.slack = r12(gap.slack);
    rec.pass = gap.slack >= -1e-8;
    rec.wall_ms = timer.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ResultRecord> suite_local_transition(const ExperimentConfig& cfg) {
  const std::size_t cases = cfg.trials ? cfg.trials : 100;
  std::vector<ResultRecord> out;
  RegisterLayout lh({{"h", 2, Party::alice}});
  for (std::size_t i = 0; i < cases; ++i) {
    CaseTimer timer;
    Rng rng = Rng::split(cfg.seed, i);
    ComplexMatrix r1 = random_density(rng, 4);
    ComplexMatrix r2 = random_density(rng, 4);
    PureState phi1 = purify(DensityMatrix(lh, r1), "k", Party::bob);
    PureState phi2 = purify(DensityMatrix(lh, r2), "k", Party::bob);
    const auto res = max_overlap_local_unitary(phi1, phi2, {"k"});
    const double fid = fidelity_via_sqrtm(r1, r2);
    const PureState moved = apply_gate(phi2, res.u, {"k"});
    const double ov = std::abs(phi1.inner(moved));
    const double pure_dist = 2.0 * std::sqrt(std::max(0.0, 1.0 - ov * ov));
    const double mixed_dist = trace_norm(r1 - r2);
    ResultRecord rec;
    rec.suite = cfg.suite;
    rec.case_id = i;
    rec.inputs_digest =
        fnv_digest("localtr:" + std::to_string(cfg.seed) + ":" + std::to_string(i));
    rec.measured = {{"overlap", r12(res.overlap)},
                    {"fidelity", r12(fid)},
                    {"residual", r12(std::abs(res.overlap - fid))},
                    {"pure_distance", r12(pure_dist)}};
    rec.bounds = {{"residual", 1e-8}, {"pure_distance", r12(2 * std::sqrt(mixed_dist) + 1e-8)}};
    rec.slack = r12(2 * std::sqrt(mixed_dist) + 1e-8 - pure_dist);
    rec.pass = std::abs(res.overlap - fid) <= 1e-8 && pure_dist <= 2 * std::sqrt(mixed_dist) + 1e-8;
    rec.wall_ms = timer.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ResultRecord> suite_classical_roundelim(const ExperimentConfig& cfg) {
  const std::size_t cases = cfg.trials ? cfg.trials : 150;
  std::vector<ResultRecord> out;
  for (std::size_t i = 0; i < cases; ++i) {
    CaseTimer timer;
    Rng rng = Rng::split(cfg.seed, i);
    ClassicalProtocolOptions opt;
    opt.e_size = 2 + rng.below(3);
    opt.f_size = 2 + rng.below(3);
    opt.g_size = 2;
    opt.rounds = 1 + rng.below(3);
    opt.max_len = 2;
    opt.coin_values = 1 + rng.below(3);
    GameSpec g;
    g.e_size = opt.e_size;
    g.f_size = opt.f_size;
    g.g_size = 2;
    g.table.resize(g.e_size * g.f_size);
    for (auto& v : g.table) v = static_cast<int>(rng.below(2));
    ClassicalProtocol p = random_classical_protocol(rng, opt);
    const bool zero_info = (i % 10 == 9);
    if (zero_info) {
      // make round one input-independent: every input sends row 0
      auto& table = p.message_tables[0];
      const std::size_t stride = table.size() / p.input_size(p.sender(0));
      for (std::size_t x = 1; x < p.input_size(p.sender(0)); ++x)
        for (std::size_t k = 0; k < stride; ++k) table[x * stride + k] = table[k];
    }
    auto d = random_joint_distribution(rng, opt.e_size, opt.f_size);
    const auto red = classical_round_reduce(p, g, d);
    const bool exact_equal =
        red.certificate.eps_before_exact == red.certificate.eps_after_exact;
    ResultRecord rec;
    rec.suite = cfg.suite;
    rec.case_id = i;
    rec.inputs_digest =
        fnv_digest("croundelim:" + std::to_string(cfg.seed) + ":" + std::to_string(i));
    rec.measured = {{"eps_before", r12(red.certificate.eps_before)},
                    {"eps_after", r12(red.certificate.eps_after)},
                    {"information", r12(red.certificate.information)},
                    {"zero_info_case", zero_info}};
    rec.bounds = {{"bound", r12(red.certificate.bound)}};
    rec.slack = r12(red.certificate.slack);
    rec.pass = red.certificate.slack >= -1e-7 && (!zero_info || exact_equal);
    rec.wall_ms = timer.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ResultRecord> suite_quantum_roundelim(const ExperimentConfig& cfg) {
  const std::size_t cases = cfg.trials ? cfg.trials : 25;
  std::vector<ResultRecord> out;
  GameSpec g = GameSpec::equality(1);
  for (std::size_t i = 0; i < cases; ++i) {
    CaseTimer timer;
    Rng rng = Rng::split(cfg.seed, i);
    ResultRecord rec;
    rec.suite = cfg.suite;
    rec.case_id = i;
    rec.inputs_digest =
        fnv_digest("qroundelim:" + std::to_string(cfg.seed) + ":" + std::to_string(i));
    if (i % 5 == 4) {
      // full elimination on the composite game
      PowerGame pg = game_power(g, 2);
      QuantumSafeProtocol p = random_power_game_protocol(rng, pg, 1, 0);
      const auto elim = quantum_round_eliminate(p, g, 2);
      const bool shape = elim.protocol.sig.str() == "[1,1,1]^B";
      const bool safe = verify_safe(elim.protocol).pass && verify_secure(elim.protocol).pass;
      rec.measured = {{"eps_before", r12(elim.ledger.certificate.eps_before)},
                      {"eps_after", r12(elim.ledger.certificate.eps_after)},
                      {"slack_d", r12(elim.ledger.slack_d)},
                      {"info_measured", r12(elim.ledger.info_measured)},
                      {"additivity_residual", r12(elim.ledger.additivity_residual)},
                      {"averaging_residual", r12(elim.ledger.averaging_residual)},
                      {"mode", "eliminate"}};
      rec.bounds = {{"bound", r12(elim.ledger.certificate.bound)},
                    {"info_budget", r12(elim.ledger.info_budget)}};
      rec.slack = r12(std::min(elim.ledger.certificate.slack, elim.ledger.slack_d));
      rec.pass = elim.ledger.certificate.slack >= -1e-7 && elim.ledger.slack_d >= -1e-7 &&
                 shape && safe && elim.ledger.additivity_residual <= 1e-7 &&
                 elim.ledger.averaging_residual <= 1e-7 &&
                 elim.ledger.info_measured <= elim.ledger.info_budget + 1e-7;
    } else {
      QuantumProtocolOptions opt;
      opt.rounds = 1 + i % 3;
      opt.safe_qubits = static_cast<int>(i % 2);
      opt.first_main_qubits = 1 + static_cast<int>(i % 2);
      QuantumSafeProtocol p = random_quantum_protocol(rng, opt);
      auto d = random_joint_distribution(rng, 2, 2);
      const auto red = quantum_round_reduce(p, g, d);
      const bool shape = red.protocol.sig.rounds() == p.sig.rounds() - 1 &&
                         red.protocol.sig.safe_qubits == p.sig.safe_qubits + p.sig.lengths[0] &&
                         red.protocol.sig.starter == other(p.sig.starter);
      const bool safe = verify_safe(red.protocol).pass && verify_secure(red.protocol).pass;
      rec.measured = {{"eps_before", r12(red.certificate.eps_before)},
                      {"eps_after", r12(red.certificate.eps_after)},
                      {"information", r12(red.certificate.information)},
                      {"mode", "reduce"}};
      rec.bounds = {{"bound", r12(red.certificate.bound)}};
      rec.slack = r12(red.certificate.slack);
      rec.pass = red.certificate.slack >= -1e-7 && shape && safe;
    }
    rec.wall_ms = timer.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ResultRecord> suite_reductions(const ExperimentConfig& cfg) {
  std::vector<ResultRecord> out;
  CaseTimer timer;
  std::size_t checks = 0, fails = 0;

  // first-index block reduction, p = 4, k = 2
  {
    const int piece = 2;
    for (std::uint64_t x1 = 0; x1 < 4; ++x1)
      for (std::uint64_t x2 = 0; x2 < 4; ++x2)
        for (std::uint64_t mask = 0; mask < 16; ++mask) {
          if (__builtin_popcountll(mask) > 2) continue;
          std::vector<BitString> s;
          for (std::uint64_t v = 0; v < 4; ++v)
            if ((mask >> v) & 1u) s.push_back({v, piece});
          for (std::size_t i = 1; i <= 2; ++i) {
            std::vector<BitString> xs{{x1, piece}, {x2, piece}};
            auto inst = par_reduce_a(xs, i, s, 2);
            ++checks;
            if (par_answer(inst.x, inst.s) != par_answer(xs[i - 1], s)) ++fails;
          }
        }
  }
  // block-tagged set reduction, p = 5, k = 2, q = 4
  {
    const int piece = 3;
    std::vector<std::vector<BitString>> small;
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
      if (__builtin_popcountll(mask) > 2) continue;
      std::vector<BitString> s;
      for (std::uint64_t v = 0; v < 8; ++v)
        if ((mask >> v) & 1u) s.push_back({v, piece});
      small.push_back(std::move(s));
    }
    for (const auto& s1 : small)
      for (const auto& s2 : small)
        for (std::uint64_t x = 0; x < 8; x += 3)
          for (std::size_t i = 1; i <= 2; ++i) {
            auto res = par_reduce_b({x, piece}, i, {s1, s2}, 4);
            ++checks;
            const auto& si = (i == 1) ? s1 : s2;
            if (!res.size_bound_respected ||
                par_answer(res.instance.x, res.instance.s) != par_answer({x, piece}, si))
              ++fails;
          }
  }
  // greater-than self-reduction, n = 8, k = 4
  {
    const int piece = 2;
    for (std::uint64_t tuple = 0; tuple < 256; ++tuple) {
      std::vector<BitString> xs(4);
      std::uint64_t v = tuple;
      for (int j = 0; j < 4; ++j) {
        xs[j] = {v & 3u, piece};
        v >>= 2;
      }
      for (std::uint64_t y = 0; y < 4; ++y)
        for (std::size_t i = 1; i <= 4; ++i) {
          auto inst = gt_self_reduce(xs, i, {y, piece}, 4);
          ++checks;
          if ((inst.x.value > inst.y.value) != (xs[i - 1].value > y)) ++fails;
        }
    }
  }

  ResultRecord rec;
  rec.suite = cfg.suite;
  rec.case_id = 0;
  rec.inputs_digest = fnv_digest("reductions:" + std::to_string(cfg.seed));
  rec.measured = {{"checks", checks}, {"mismatches", fails}};
  rec.bounds = {{"mismatches", 0}};
  rec.slack = r12(static_cast<double>(checks - fails));
  rec.pass = (fails == 0);
  rec.wall_ms = timer.ms();
  out.push_back(std::move(rec));
  return out;
}

std::vector<ResultRecord> suite_cellprobe_compile(const ExperimentConfig& cfg) {
  std::vector<ResultRecord> out;
  {
    CaseTimer timer;
    ClassicalCellScheme sc = binary_search_scheme();
    GameSpec g = binary_search_game();
    ClassicalProtocol p = compile_cellprobe(sc, g);
    const auto rep = eval_classical(p, g);
    ResultRecord rec;
    rec.suite = cfg.suite;
    rec.case_id = 0;
    rec.inputs_digest = fnv_digest("cellprobe:classical");
    rec.measured = {{"eps_worst", r12(rep.eps_worst.to_double())},
                    {"alice_bits", p.lengths[0]},
                    {"bob_bits", p.lengths[1]},
                    {"rounds", p.rounds()}};
    rec.bounds = {{"eps_worst", 0.0}, {"alice_bits", 2}, {"bob_bits", 4}, {"rounds", 4}};
    rec.slack = r12(-rep.eps_worst.to_double());
    rec.pass = rep.eps_worst == Rational(0) && p.lengths[0] == 2 && p.lengths[1] == 4 &&
               p.rounds() == 4;
    rec.wall_ms = timer.ms();
    out.push_back(std::move(rec));
  }
  {
    CaseTimer timer;
    QuantumCellScheme sc = grover_search_scheme();
    GameSpec g = grover_search_game();
    const auto aor = check_address_only(sc);
    QuantumSafeProtocol p = compile_cellprobe(sc, g);
    const auto rep = eval_quantum(p, g);
    ResultRecord rec;
    rec.suite = cfg.suite;
    rec.case_id = 1;
    rec.inputs_digest = fnv_digest("cellprobe:grover");
    rec.measured = {{"eps_worst", r12(rep.eps_worst)},
                    {"signature", p.sig.str()},
                    {"address_only_residual", r12(aor.max_residual)}};
    rec.bounds = {{"eps_worst", 1e-9}, {"signature", "[2,0,2,3]^A"}};
    rec.slack = r12(1e-9 - rep.eps_worst);
    rec.pass = rep.eps_worst <= 1e-9 && p.sig.str() == "[2,0,2,3]^A" && aor.pass;
    rec.wall_ms = timer.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ResultRecord> suite_bound_tracers(const ExperimentConfig& cfg) {
  std::vector<ResultRecord> out;
  std::size_t case_id = 0;
  for (int t = 1; t <= 3; ++t) {
    CaseTimer timer;
    const int l = 4;
    std::vector<int> lengths(t, l);
    const BigUint n = (BigUint(kGtIterationConstant) *
                       BigUint(static_cast<std::uint64_t>(t) * t * t) *
                       BigUint(static_cast<std::uint64_t>(t) * l))
                          .pow(static_cast<unsigned>(t));
    const auto trace = trace_gt_bound(n, lengths);
    ResultRecord rec;
    rec.suite = cfg.suite;
    rec.case_id = case_id++;
    rec.inputs_digest = fnv_digest("trace:gt:" + std::to_string(t));
    rec.measured = {{"eps_final", trace.eps_final.str()},
                    {"eps_final_decimal", r12(trace.eps_final.to_double())},
                    {"n_final", trace.rows.empty() ? "" : trace.rows.back().n_floor.to_decimal()},
                    {"mode", "gt"}};
    rec.bounds = {{"eps_final", "1/2"}, {"n_final_min", "1"}};
    rec.slack = r12(0.5 - trace.eps_final.to_double());
    rec.pass = trace.contradiction && trace.eps_exactly_half;
    rec.wall_ms = timer.ms();
    out.push_back(std::move(rec));
  }
  for (int t = 1; t <= 2; ++t) {
    CaseTimer timer;
    PredecessorParams params;
    params.log_m = (t == 1) ? BigUint::pow2(60)
                            : BigUint::from_decimal("1000000000000000000000000000000000000000");
    params.rounds = t;
    params.delta = Rational(1, 3) - Rational(1, 100);
    const auto trace = trace_predecessor_bound(params);
    ResultRecord rec;
    rec.suite = cfg.suite;
    rec.case_id = case_id++;
    rec.inputs_digest = fnv_digest("trace:pred:" + std::to_string(t));
    rec.measured = {{"eps_final", trace.eps_final.str()},
                    {"eps_final_decimal", r12(trace.eps_final.to_double())},
                    {"mode", "pred"}};
    rec.bounds = {{"eps_final", (params.delta + Rational(1, 6)).str()},
                  {"below", "1/2"}};
    rec.slack = r12(0.5 - trace.eps_final.to_double());
    rec.pass = trace.contradiction && trace.eps_final == params.delta + Rational(1, 6);
    rec.wall_ms = timer.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ResultRecord> suite_gt_protocol(const ExperimentConfig& cfg) {
  std::vector<ResultRecord> out;
  const std::size_t trials = cfg.trials ? cfg.trials : 2000;
  std::size_t case_id = 0;
  for (int t : {1, 2}) {
    CaseTimer timer;
    Rng rng = Rng::split(cfg.seed, case_id);
    const auto spec = make_gt_protocol(16, t, 1.0 / 3.0);
    const auto emp = gt_empirical_error(spec, trials, rng);
    ResultRecord rec;
    rec.suite = cfg.suite;
    rec.case_id = case_id++;
    rec.inputs_digest = fnv_digest("gtproto:" + std::to_string(cfg.seed) + ":" + std::to_string(t));
    rec.measured = {{"error_rate", r12(emp.error_rate())},
                    {"max_bits", emp.max_total_bits},
                    {"trials", trials}};
    rec.bounds = {{"error_rate", r12(1.0 / 3.0)}, {"max_bits", spec.comm_budget}};
    rec.slack = r12(1.0 / 3.0 - emp.error_rate());
    rec.pass = emp.error_rate() <= 1.0 / 3.0 && emp.max_total_bits <= spec.comm_budget;
    rec.wall_ms = timer.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "info-identities",    "average-encoding", "local-transition",
      "classical-roundelim", "quantum-roundelim", "reductions",
      "cellprobe-compile",  "bound-tracers",    "gt-protocol"};
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<ResultRecord> run_suite(const ExperimentConfig& config) {
  if (!is_suite_name(config.suite))
    throw std::invalid_argument("unknown suite '" + config.suite + "'");
  const int old_cap = config::max_qubits();
  if (config.cap_qubits > 0) config::set_max_qubits(config.cap_qubits);
  std::vector<ResultRecord> records;
  try {
    if (config.suite == "info-identities") records = suite_info_identities(config);
    else if (config.suite == "average-encoding") records = suite_average_encoding(config);
    else if (config.suite == "local-transition") records = suite_local_transition(config);
    else if (config.suite == "classical-roundelim") records = suite_classical_roundelim(config);
    else if (config.suite == "quantum-roundelim") records = suite_quantum_roundelim(config);
    else if (config.suite == "reductions") records = suite_reductions(config);
    else if (config.suite == "cellprobe-compile") records = suite_cellprobe_compile(config);
    else if (config.suite == "bound-tracers") records = suite_bound_tracers(config);
    else if (config.suite == "gt-protocol") records = suite_gt_protocol(config);
  } catch (...) {
    config::set_max_qubits(old_cap);
    throw;
  }
  config::set_max_qubits(old_cap);
  return records;
}

std::string record_to_json_line(const ResultRecord& r) {
  json j;
  j["suite"] = r.suite;
  j["case"] = r.case_id;
  j["digest"] = r.inputs_digest;
  j["measured"] = r.measured;
  j["bounds"] = r.bounds;
  j["slack"] = round12(r.slack);
  j["pass"] = r.pass;
  return j.dump();
}

std::size_t write_records(const std::string& path, const std::vector<ResultRecord>& records) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  std::size_t failures = 0;
  for (const ResultRecord& rec : records) {
    out << record_to_json_line(rec) << "\n";
    if (!rec.pass) ++failures;
  }
  return failures;
}

std::size_t run_suite_to_file(const ExperimentConfig& config) {
  const std::vector<ResultRecord> records = run_suite(config);  // throws before the file opens
  return write_records(config.out_path, records);
}

std::string emit_report(const std::string& jsonl_path) {
  std::ifstream in(jsonl_path);
  if (!in) throw std::runtime_error("cannot open records file '" + jsonl_path + "'");
  struct Agg {
    std::size_t cases = 0;
    std::size_t failures = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    double max_residual = 0;
  };
  std::map<std::string, Agg> by_suite;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      Agg& agg = by_suite[j.at("suite").get<std::string>()];
      ++agg.cases;
      if (!j.at("pass").get<bool>()) ++agg.failures;
      agg.min_slack = std::min(agg.min_slack, j.at("slack").get<double>());
      if (j.at("measured").contains("residual"))
        agg.max_residual =
            std::max(agg.max_residual, j.at("measured").at("residual").get<double>());
    } catch (const json::exception& e) {
      throw std::runtime_error("malformed record at line " + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
  std::ostringstream csv;
  csv << "suite,cases,failures,min_slack,max_residual\n";
  for (const auto& [suite, agg] : by_suite) {
    csv << suite << "," << agg.cases << "," << agg.failures << ","
        << format_real(agg.cases ? agg.min_slack : 0.0) << "," << format_real(agg.max_residual)
        << "\n";
  }
  return csv.str();
}

}  // namespace qclab
