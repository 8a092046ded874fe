#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qclab {

struct ExperimentConfig {
  std::string suite;
  std::uint64_t seed = 0;
  std::string out_path;
  int cap_qubits = 0;      // 0 keeps the global default
  std::size_t trials = 0;  // 0 uses the suite default case count
};

struct ResultRecord {
  std::string suite;
  std::size_t case_id = 0;
  std::string inputs_digest;
  nlohmann::json measured;  // numbers pre-rounded to 12 significant digits
  nlohmann::json bounds;
  double slack = 0;
  bool pass = false;
  double wall_ms = 0;  // reported on stdout, never serialized
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

// Runs the named suite with seed-split deterministic generation.
std::vector<ResultRecord> run_suite(const ExperimentConfig& config);

// The serialized JSON-lines form (deterministic, sorted keys).
std::string record_to_json_line(const ResultRecord& r);

// Appends one line per record; returns the number of failing records.
std::size_t write_records(const std::string& path, const std::vector<ResultRecord>& records);

// Validates the suite name before touching the file, appends one line per
// record, returns the number of failing records.
std::size_t run_suite_to_file(const ExperimentConfig& config);

// Per-suite aggregate of a JSON-lines file as CSV; malformed lines are
// reported with their line number.
std::string emit_report(const std::string& jsonl_path);

}  // namespace qclab
