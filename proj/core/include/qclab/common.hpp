#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qclab {

enum class Party { alice, bob };

inline Party other(Party p) { return p == Party::alice ? Party::bob : Party::alice; }

inline const char* to_string(Party p) { return p == Party::alice ? "alice" : "bob"; }

Party party_from_string(std::string_view s);

// Thrown when an operation would exceed the desk-scale caps (qubits, branches).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace config {

// Hard cap on total qubits of any register layout (default 12).
int max_qubits();
void set_max_qubits(int n);

// Cap on exact enumeration branches in classical protocol evaluation.
long long max_branches();
void set_max_branches(long long n);

// Reads QCLAB_CAP_QUBITS / QCLAB_CAP_BRANCHES if set.
void load_env_overrides();

}  // namespace config

// Formats a real with 12 significant digits.
std::string format_real(double v);

// Parses a double back from a 12-significant-digit rendering; used to make
// serialized measurements deterministic.
double round12(double v);

}  // namespace qclab
