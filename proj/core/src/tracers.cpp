#include "qclab/tracers.hpp"

#include <sstream>
#include <stdexcept>

#include "qclab/common.hpp"

namespace qclab {

namespace {

std::size_t floor_log2(const BigUint& v) {
  if (v.is_zero()) throw std::invalid_argument("log of zero");
  return v.bit_length() - 1;
}

std::string alternating_signature(std::size_t rounds, const std::string& overhead,
                                  const std::string& a, const std::string& b, bool alice) {
  std::string s = "(" + std::to_string(rounds) + "," + overhead + "," + a + "," + b + ")^";
  s += alice ? "A" : "B";
  return s;
}

}  // namespace

GtTrace trace_gt_bound(const BigUint& n, const std::vector<int>& lengths) {
  GtTrace trace;
  trace.n = n;
  trace.lengths = lengths;
  const int t = static_cast<int>(lengths.size());
  if (t < 1) throw std::invalid_argument("at least one round required");
  for (int l : lengths)
    if (l < 1) throw std::invalid_argument("message lengths must be positive");

  std::int64_t sum_l = 0;
  for (int l : lengths) sum_l += l;
  const BigUint c(static_cast<std::uint64_t>(kGtIterationConstant));
  // precondition: n >= (C t^3 sum l)^t
  const BigUint threshold =
      (c * BigUint(static_cast<std::uint64_t>(t) * t * t) * BigUint(static_cast<std::uint64_t>(sum_l)))
          .pow(static_cast<unsigned>(t));
  trace.precondition_ok = n >= threshold;
  if (!trace.precondition_ok) {
    trace.failure = "precondition";
    trace.eps_final = Rational(1, 3);
    return trace;
  }

  const std::int64_t t4 = static_cast<std::int64_t>(t) * t * t * t;
  BigUint current = n;
  Rational eps(1, 3);
  const Rational increment(1, 6 * static_cast<std::int64_t>(t));
  for (int i = 1; i <= t; ++i) {
    GtTraceRow row;
    row.stage = static_cast<std::size_t>(i);
    row.k = kGtIterationConstant * t4 * lengths[i - 1];
    auto [q, r] = BigUint::divmod(current, BigUint(static_cast<std::uint64_t>(row.k)));
    row.n_exact = current;
    row.n_floor = q;
    row.division_exact = r.is_zero();
    eps += increment;
    row.eps = eps;
    {
      std::string overhead = "0";
      std::int64_t acc = 0;
      for (int j = 0; j < i; ++j) acc += lengths[j];
      overhead = std::to_string(acc);
      std::string rest;
      for (int j = i; j < t; ++j) rest += (rest.empty() ? "" : ",") + std::to_string(lengths[j]);
      row.signature = "[" + std::to_string(t - i) + "," + overhead +
                      (rest.empty() ? "" : "," + rest) + "]^" + ((i % 2 == 1) ? "B" : "A");
    }
    current = q;
    trace.rows.push_back(std::move(row));
    if (current.is_zero()) {
      trace.failure = "domain collapse at stage " + std::to_string(i);
      break;
    }
  }
  trace.eps_final = eps;
  trace.eps_exactly_half = (eps == Rational(1, 2));
  trace.final_domain_nontrivial = !current.is_zero();
  trace.contradiction =
      trace.precondition_ok && trace.eps_exactly_half && trace.final_domain_nontrivial;
  return trace;
}

std::string gt_trace_csv(const GtTrace& trace) {
  std::ostringstream out;
  out << "stage,n_i,k_i,eps_rational,eps_decimal,division_exact,signature\n";
  out << "0," << trace.n.to_decimal() << ",,1/3," << format_real(1.0 / 3.0) << ",,"
      << "[" << trace.lengths.size() << ",0]^A\n";
  for (const GtTraceRow& row : trace.rows) {
    out << row.stage << "," << row.n_floor.to_decimal() << "," << row.k << "," << row.eps.str()
        << "," << format_real(row.eps.to_double()) << "," << (row.division_exact ? 1 : 0) << ","
        << row.signature << "\n";
  }
  return out.str();
}

PredecessorTrace trace_predecessor_bound(const PredecessorParams& params) {
  if (params.c2 < 1 || params.c3 < 1) throw std::invalid_argument("constants must be >= 1");
  if (params.log_m.bit_length() < 3)
    throw std::invalid_argument("universe too small: need log log m >= 2");

  PredecessorTrace trace;
  trace.log_m = params.log_m;
  trace.delta = params.delta;

  // n = 2^((log log m)^2 / log log log m), floors recorded
  const std::size_t llm = floor_log2(params.log_m);
  if (llm < 2) throw std::invalid_argument("universe too small: need log log log m >= 1");
  const std::size_t lllm = floor_log2(BigUint(static_cast<std::uint64_t>(llm)));
  const std::size_t log_n = (llm * llm) / std::max<std::size_t>(lllm, 1);
  trace.log_n = BigUint(static_cast<std::uint64_t>(log_n));

  const BigUint c1(static_cast<std::uint64_t>(kPredIterationConstant));
  trace.a = BigUint(static_cast<std::uint64_t>(params.c2)) * trace.log_n;
  trace.b = params.log_m.pow(static_cast<unsigned>(params.c3));

  int t;
  if (params.rounds) {
    t = *params.rounds;
  } else {
    const std::uint64_t denom =
        (static_cast<std::uint64_t>(kPredIterationConstant) + params.c2 + params.c3) * lllm;
    t = static_cast<int>(llm / denom);
  }
  if (t < 1)
    throw std::invalid_argument("parameters too small for at least one stage (derived t = 0)");
  trace.t = t;

  const BigUint t4(static_cast<std::uint64_t>(t) * t * t * t);
  const BigUint div_a = BigUint(2) * c1 * trace.a * t4;  // per-stage log m divisor
  const BigUint div_b = c1 * trace.b * t4;               // per-stage n divisor
  const std::size_t tag_bits = div_b.bit_length();       // log(c1 b t^4) rounded up

  BigUint logm_term = params.log_m;
  BigUint n_term = BigUint::pow2(log_n);
  Rational eps = params.delta;
  const Rational increment(2, 12 * static_cast<std::int64_t>(t));

  for (int i = 1; i <= t; ++i) {
    PredecessorTraceRow row;
    row.stage = static_cast<std::size_t>(i);
    // the A-side elimination shrinks log m by c1 a t^4; the halving absorbs
    // the tag and pad bits of the B-side reduction, recorded as a check
    const BigUint after_a = logm_term / (c1 * trace.a * t4);
    row.tag_room_ok = after_a >= BigUint(static_cast<std::uint64_t>(2 * (tag_bits + 1)));
    logm_term = logm_term / div_a;
    n_term = n_term / div_b;
    row.logm_term = logm_term;
    row.n_term = n_term;
    eps += increment;
    row.eps = eps;
    row.signature = alternating_signature(static_cast<std::size_t>(2 * (t - i)),
                                          std::to_string(i) + "(a+b)", "a", "b", true);
    row.note = "floor at both divisions";
    trace.rows.push_back(row);
    if (logm_term.is_zero() || n_term.is_zero()) {
      trace.domain_collapse = true;
      trace.collapse_stage = static_cast<std::size_t>(i);
      break;
    }
  }

  trace.eps_final = eps;
  trace.eps_below_half = eps < Rational(1, 2);
  if (!trace.domain_collapse) {
    trace.logm_witness = logm_term * logm_term >= params.log_m;
    trace.n_witness = n_term * n_term >= BigUint::pow2(log_n);
  }
  trace.contradiction =
      !trace.domain_collapse && trace.eps_below_half && trace.logm_witness && trace.n_witness;
  return trace;
}

std::string predecessor_trace_csv(const PredecessorTrace& trace) {
  std::ostringstream out;
  out << "stage,logm_term,n_term,eps_rational,eps_decimal,tag_room_ok,signature,note\n";
  out << "0," << trace.log_m.to_decimal() << "," << BigUint::pow2(trace.log_n.to_u64()).to_decimal()
      << "," << trace.delta.str() << "," << format_real(trace.delta.to_double()) << ",,"
      << alternating_signature(2 * static_cast<std::size_t>(trace.t), "0", "a", "b", true) << ",\n";
  for (const PredecessorTraceRow& row : trace.rows) {
    out << row.stage << "," << row.logm_term.to_decimal() << "," << row.n_term.to_decimal() << ","
        << row.eps.str() << "," << format_real(row.eps.to_double()) << ","
        << (row.tag_room_ok ? 1 : 0) << "," << row.signature << "," << row.note << "\n";
  }
  return out.str();
}

}  // namespace qclab
