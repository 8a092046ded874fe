#include "qclab/common.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace qclab {

Party party_from_string(std::string_view s) {
  if (s == "alice") return Party::alice;
  if (s == "bob") return Party::bob;
  throw std::invalid_argument("unknown party: " + std::string(s));
}

namespace config {

namespace {
std::atomic<int> g_max_qubits{12};
std::atomic<long long> g_max_branches{10'000'000};
}  // namespace

int max_qubits() { return g_max_qubits.load(); }

void set_max_qubits(int n) {
  if (n < 1) throw std::invalid_argument("max_qubits must be >= 1");
  g_max_qubits.store(n);
}

long long max_branches() { return g_max_branches.load(); }

void set_max_branches(long long n) {
  if (n < 1) throw std::invalid_argument("max_branches must be >= 1");
  g_max_branches.store(n);
}

void load_env_overrides() {
  if (const char* s = std::getenv("QCLAB_CAP_QUBITS")) set_max_qubits(std::atoi(s));
  if (const char* s = std::getenv("QCLAB_CAP_BRANCHES")) set_max_branches(std::atoll(s));
}

}  // namespace config

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // normalise negative zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double round12(double v) { return std::strtod(format_real(v).c_str(), nullptr); }

}  // namespace qclab
