#include <doctest.h>

#include <cmath>

#include "qclab/tracers.hpp"

using namespace qclab;

TEST_CASE("iteration constants are the integer ceilings of their formulas") {
  const double four_ln2 = 4.0 * std::log(2.0);
  CHECK(kPredIterationConstant == static_cast<std::int64_t>(std::ceil(four_ln2 * 12 * 12 * 12 * 12)));
  CHECK(kGtIterationConstant == static_cast<std::int64_t>(std::ceil(four_ln2 * 6 * 6 * 6 * 6)));
}

TEST_CASE("gt tracer reaches one half exactly") {
  for (int t = 1; t <= 3; ++t) {
    const int l = 4;
    std::vector<int> lengths(t, l);
    // n = (C t^3 sum l)^t: equal lengths make every division exact
    const BigUint n = (BigUint(kGtIterationConstant) *
                       BigUint(static_cast<std::uint64_t>(t) * t * t) *
                       BigUint(static_cast<std::uint64_t>(t) * l))
                          .pow(static_cast<unsigned>(t));
    auto trace = trace_gt_bound(n, lengths);
    CHECK(trace.precondition_ok);
    CHECK(trace.eps_exactly_half);
    CHECK(trace.eps_final == Rational(1, 2));
    CHECK(trace.final_domain_nontrivial);
    CHECK(trace.contradiction);
    // monotone ledger: eps up by exactly 1/(6t), n strictly down
    Rational prev_eps(1, 3);
    BigUint prev_n = n;
    for (const auto& row : trace.rows) {
      CHECK(row.eps - prev_eps == Rational(1, 6 * static_cast<std::int64_t>(t)));
      CHECK(row.n_floor < prev_n);
      prev_eps = row.eps;
      prev_n = row.n_floor;
    }
    // boundary: every division exact, n_t = 1
    CHECK(trace.rows.back().n_floor == BigUint(1));
    for (const auto& row : trace.rows) CHECK(row.division_exact);
  }
}

TEST_CASE("gt tracer flags a violated precondition") {
  auto trace = trace_gt_bound(BigUint(1000), {4, 4});
  CHECK_FALSE(trace.precondition_ok);
  CHECK(trace.failure == "precondition");
  CHECK(trace.rows.empty());
}

TEST_CASE("gt trace emits one csv row per stage") {
  std::vector<int> lengths{4};
  const BigUint n = BigUint(kGtIterationConstant * 4).pow(1);
  auto trace = trace_gt_bound(n, lengths);
  const std::string csv = gt_trace_csv(trace);
  CHECK(csv.find("stage,n_i,k_i") == 0);
  CHECK(csv.find("1/2") != std::string::npos);
  std::size_t lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 2 + trace.rows.size());  // header + initial row + stages
}

TEST_CASE("predecessor tracer replays the contradiction") {
  PredecessorParams params;
  params.log_m = BigUint::pow2(60);  // log m = 2^60
  params.c2 = 1;
  params.c3 = 1;
  params.rounds = 1;
  params.delta = Rational(1, 3) - Rational(1, 100);
  auto trace = trace_predecessor_bound(params);
  CHECK(trace.t == 1);
  CHECK_FALSE(trace.domain_collapse);
  // final error: delta + 2t/(12t) = delta + 1/6 < 1/2
  CHECK(trace.eps_final == params.delta + Rational(1, 6));
  CHECK(trace.eps_below_half);
  CHECK(trace.logm_witness);
  CHECK(trace.n_witness);
  CHECK(trace.contradiction);
  CHECK(trace.rows.size() == 1);
  CHECK(trace.rows.front().tag_room_ok);
}

TEST_CASE("predecessor tracer with two stages") {
  PredecessorParams params;
  params.log_m = BigUint::from_decimal("1000000000000000000000000000000000000000");  // 1e39
  params.rounds = 2;
  params.delta = Rational(1, 3) - Rational(1, 100);
  auto trace = trace_predecessor_bound(params);
  CHECK_FALSE(trace.domain_collapse);
  CHECK(trace.eps_final == params.delta + Rational(1, 6));
  CHECK(trace.logm_witness);
  CHECK(trace.contradiction);
  // monotone: strictly shrinking parameters, strictly growing error
  CHECK(trace.rows.size() == 2);
  CHECK(trace.rows[1].logm_term < trace.rows[0].logm_term);
  CHECK(trace.rows[1].n_term < trace.rows[0].n_term);
  CHECK(trace.rows[0].eps < trace.rows[1].eps);
}

TEST_CASE("too many rounds collapse the domain without a contradiction") {
  PredecessorParams params;
  params.log_m = BigUint(65536);  // log m = 2^16
  params.rounds = 2;
  auto trace = trace_predecessor_bound(params);
  CHECK(trace.domain_collapse);
  CHECK(trace.collapse_stage >= 1);
  CHECK_FALSE(trace.contradiction);
}

TEST_CASE("the theorem's derived round count needs an enormous universe") {
  PredecessorParams params;
  params.log_m = BigUint(65536);
  CHECK_THROWS_AS(trace_predecessor_bound(params), std::invalid_argument);
}

TEST_CASE("predecessor trace csv shape") {
  PredecessorParams params;
  params.log_m = BigUint::pow2(60);
  params.rounds = 1;
  auto trace = trace_predecessor_bound(params);
  const std::string csv = predecessor_trace_csv(trace);
  CHECK(csv.find("stage,logm_term,n_term") == 0);
  std::size_t lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 2 + trace.rows.size());
}
