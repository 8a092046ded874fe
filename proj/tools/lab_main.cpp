// lab: batch runner for the verifier suites, report aggregation and the
// bound tracers.
//
//   lab run --suite <name> --seed <u64> --out <path> [--cap-qubits N] [--trials N]
//   lab report --in <records.jsonl> --out <summary.csv>
//   lab trace gt --n <int> --l <csv-list> [--out <csv>]
//   lab trace pred --m-exp <int> --c2 <int> --c3 <int> [--t <int>] [--delta <num/den>] [--out <csv>]

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qclab/common.hpp"
#include "qclab/suites.hpp"
#include "qclab/tracers.hpp"

namespace {

int write_or_print(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "'\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  qclab::config::load_env_overrides();

  CLI::App app{"communication-protocol laboratory"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a verifier suite");
  qclab::ExperimentConfig cfg;
  run->add_option("--suite", cfg.suite, "suite name")->required();
  run->add_option("--seed", cfg.seed, "RNG seed")->required();
  run->add_option("--out", cfg.out_path, "JSON-lines output path")->required();
  run->add_option("--cap-qubits", cfg.cap_qubits, "override the qubit cap");
  run->add_option("--trials", cfg.trials, "override the case count");

  // report
  auto* report = app.add_subcommand("report", "aggregate a records file");
  std::string report_in, report_out;
  report->add_option("--in", report_in, "JSON-lines records path")->required();
  report->add_option("--out", report_out, "CSV output path")->required();

  // trace
  auto* trace = app.add_subcommand("trace", "run a bound tracer");
  trace->require_subcommand(1);
  auto* trace_gt = trace->add_subcommand("gt", "greater-than round/communication ledger");
  std::string gt_n;
  std::vector<int> gt_lengths;
  std::string gt_out;
  trace_gt->add_option("--n", gt_n, "input length (decimal integer)")->required();
  trace_gt->add_option("--l", gt_lengths, "per-round message lengths")
      ->required()
      ->delimiter(',');
  trace_gt->add_option("--out", gt_out, "CSV output path (stdout when absent)");

  auto* trace_pred = trace->add_subcommand("pred", "predecessor-search parameter ledger");
  std::string pred_mexp, pred_delta = "1/3", pred_out;
  int pred_c2 = 1, pred_c3 = 1, pred_t = 0;
  trace_pred->add_option("--m-exp", pred_mexp, "log2 of the universe size (decimal integer)")
      ->required();
  trace_pred->add_option("--c2", pred_c2, "query-side constant")->required();
  trace_pred->add_option("--c3", pred_c3, "word-size constant")->required();
  trace_pred->add_option("--t", pred_t, "stage count override (derived when absent)");
  trace_pred->add_option("--delta", pred_delta, "starting error as num/den");
  trace_pred->add_option("--out", pred_out, "CSV output path (stdout when absent)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto records = qclab::run_suite(cfg);  // unknown suites fail before any file I/O
      const std::size_t failures = qclab::write_records(cfg.out_path, records);
      double total_ms = 0;
      for (const auto& r : records) total_ms += r.wall_ms;
      std::cout << "suite " << cfg.suite << ": " << records.size() << " cases, " << failures
                << " failures, " << qclab::format_real(total_ms) << " ms\n";
      return failures == 0 ? 0 : 1;
    }
    if (*report) {
      const std::string csv = qclab::emit_report(report_in);
      return write_or_print(csv, report_out);
    }
    if (*trace_gt) {
      const auto tr = qclab::trace_gt_bound(qclab::BigUint::from_decimal(gt_n), gt_lengths);
      const int rc = write_or_print(qclab::gt_trace_csv(tr), gt_out);
      if (rc) return rc;
      if (!tr.failure.empty()) {
        std::cerr << "ledger stopped: " << tr.failure << "\n";
        return 1;
      }
      return tr.contradiction ? 0 : 1;
    }
    if (*trace_pred) {
      qclab::PredecessorParams params;
      params.log_m = qclab::BigUint::from_decimal(pred_mexp);
      params.c2 = pred_c2;
      params.c3 = pred_c3;
      if (pred_t > 0) params.rounds = pred_t;
      params.delta = qclab::Rational::parse(pred_delta);
      const auto tr = qclab::trace_predecessor_bound(params);
      const int rc = write_or_print(qclab::predecessor_trace_csv(tr), pred_out);
      if (rc) return rc;
      return tr.contradiction ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
