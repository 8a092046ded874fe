#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qclab/common.hpp"
#include "qclab/suites.hpp"

using namespace qclab;

TEST_CASE("suite reruns are byte-identical") {
  ExperimentConfig cfg;
  cfg.suite = "classical-roundelim";
  cfg.seed = 99;
  cfg.trials = 12;
  const auto r1 = run_suite(cfg);
  const auto r2 = run_suite(cfg);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i)
    CHECK(record_to_json_line(r1[i]) == record_to_json_line(r2[i]));
}

TEST_CASE("unknown suites are rejected without a file") {
  ExperimentConfig cfg;
  cfg.suite = "not-a-suite";
  cfg.out_path = "/tmp/qclab_should_not_exist.jsonl";
  std::remove(cfg.out_path.c_str());
  CHECK_THROWS_AS(run_suite_to_file(cfg), std::invalid_argument);
  std::ifstream check(cfg.out_path);
  CHECK_FALSE(check.good());
}

TEST_CASE("report aggregates match an independent recount") {
  ExperimentConfig cfg;
  cfg.suite = "average-encoding";
  cfg.seed = 3;
  cfg.trials = 30;
  cfg.out_path = "/tmp/qclab_report_test.jsonl";
  std::remove(cfg.out_path.c_str());
  const auto records = run_suite(cfg);
  write_records(cfg.out_path, records);

  const std::string csv = emit_report(cfg.out_path);
  // recount directly
  std::size_t failures = 0;
  double min_slack = 1e300;
  for (const auto& r : records) {
    if (!r.pass) ++failures;
    min_slack = std::min(min_slack, r.slack);
  }
  std::ostringstream want;
  want << "average-encoding," << records.size() << "," << failures << ","
       << format_real(min_slack) << ",";
  CHECK(csv.find(want.str()) != std::string::npos);
  std::remove(cfg.out_path.c_str());
}

TEST_CASE("empty records file reports header only") {
  const std::string path = "/tmp/qclab_empty.jsonl";
  std::ofstream(path).close();
  CHECK(emit_report(path) == "suite,cases,failures,min_slack,max_residual\n");
  std::remove(path.c_str());
}

TEST_CASE("malformed lines are reported with their number") {
  const std::string path = "/tmp/qclab_bad.jsonl";
  {
    ExperimentConfig cfg;
    cfg.suite = "cellprobe-compile";
    cfg.seed = 1;
    std::ofstream out(path);
    for (const auto& r : run_suite(cfg)) out << record_to_json_line(r) << "\n";
    out << "{this is not json\n";
  }
  try {
    emit_report(path);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("mixed pass and fail counting") {
  // hand-written records: one pass, one fail
  const std::string path = "/tmp/qclab_mixed.jsonl";
  {
    std::ofstream out(path);
    ResultRecord a;
    a.suite = "demo";
    a.case_id = 0;
    a.measured = {{"v", 1.0}};
    a.bounds = {{"v", 2.0}};
    a.slack = 1.0;
    a.pass = true;
    ResultRecord b = a;
    b.case_id = 1;
    b.slack = -0.5;
    b.pass = false;
    out << record_to_json_line(a) << "\n" << record_to_json_line(b) << "\n";
  }
  const std::string csv = emit_report(path);
  CHECK(csv.find("demo,2,1,-0.5,0") != std::string::npos);
  std::remove(path.c_str());
}
