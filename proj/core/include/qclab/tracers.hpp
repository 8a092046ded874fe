#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qclab/biguint.hpp"
#include "qclab/rational.hpp"

namespace qclab {

// The iteration constants. The defining expressions are (4 ln 2) 12^4 and
// (4 ln 2) 6^4; the tracers use their integer ceilings so the parameter
// ledgers stay exact, which only enlarges the block counts and keeps every
// per-stage error increment at most 1/(12t) and 1/(6t) respectively.
inline constexpr std::int64_t kPredIterationConstant = 57493;  // ceil((4 ln 2) 12^4)
inline constexpr std::int64_t kGtIterationConstant = 3594;     // ceil((4 ln 2) 6^4)

struct GtTraceRow {
  std::size_t stage = 0;           // i
  std::int64_t k = 0;              // block count k_i = C t^4 l_i
  BigUint n_exact;                 // n_{i-1} / k_i before flooring, as (num, den)
  BigUint n_floor;                 // floor value actually carried forward
  bool division_exact = false;
  Rational eps;                    // 1/3 + i/(6t)
  std::string signature;
};

struct GtTrace {
  BigUint n;
  std::vector<int> lengths;
  bool precondition_ok = false;    // n >= (C t^3 sum l)^t
  std::vector<GtTraceRow> rows;
  Rational eps_final;
  bool eps_exactly_half = false;
  bool final_domain_nontrivial = false;  // n_t >= 1
  bool contradiction = false;
  std::string failure;             // empty when the ledger completes
};

// Replays the alternation of the self-reduction and round elimination for
// the greater-than game: k_i = C t^4 l_i, one exact error increment of
// 1/(6t) per stage, n_i tracked with recorded floors.
GtTrace trace_gt_bound(const BigUint& n, const std::vector<int>& lengths);

std::string gt_trace_csv(const GtTrace& trace);

struct PredecessorParams {
  BigUint log_m;                   // log2 of the universe size
  int c2 = 1;
  int c3 = 1;
  std::optional<int> rounds;       // t; derived from the theorem's formula when absent
  Rational delta = Rational(1, 3); // starting error
};

struct PredecessorTraceRow {
  std::size_t stage = 0;
  BigUint logm_term;               // floor(log m / (2 c1 a t^4)^i)
  BigUint n_term;                  // floor(n / (c1 b t^4)^i)
  Rational eps;                    // delta + 2i/(12t)
  std::string signature;           // (2t-2i, i(a+b), a, b)^A
  bool tag_room_ok = false;        // enough bits for the block tag after step A
  std::string note;
};

struct PredecessorTrace {
  BigUint log_m;
  BigUint log_n;
  BigUint a, b;
  int t = 0;
  Rational delta;
  std::vector<PredecessorTraceRow> rows;
  Rational eps_final;
  bool eps_below_half = false;
  bool logm_witness = false;        // final logm term >= sqrt(log m)
  bool n_witness = false;           // final n term >= sqrt(n)
  bool domain_collapse = false;
  std::size_t collapse_stage = 0;
  bool contradiction = false;
};

// Replays the two-sided parameter iteration for predecessor search with
// exact big integers, floor rounding recorded at every division.
PredecessorTrace trace_predecessor_bound(const PredecessorParams& params);

std::string predecessor_trace_csv(const PredecessorTrace& trace);

}  // namespace qclab
