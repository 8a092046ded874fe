#include <doctest.h>

#include "qclab/fks.hpp"
#include "qclab/gt_protocol.hpp"

using namespace qclab;

TEST_CASE("equal inputs never answer greater") {
  auto spec = make_gt_protocol(16, 2, 1.0 / 3.0);
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t x = rng.u64() & 0xffff;
    auto res = run_gt_trial(spec, x, x, rng);
    CHECK_FALSE(res.answered_greater);
    CHECK(res.correct);
  }
}

TEST_CASE("two-round protocol meets the error and communication targets") {
  auto spec = make_gt_protocol(16, 2, 1.0 / 3.0);
  CHECK(spec.fingerprint_bits == 7);  // ceil(log2(16 * 2 * 3))
  Rng rng(20240808);
  auto emp = gt_empirical_error(spec, 10000, rng);
  CHECK(emp.error_rate() <= 1.0 / 3.0);
  CHECK(emp.max_total_bits <= spec.comm_budget);
}

TEST_CASE("one-round protocol sends the string verbatim") {
  auto spec = make_gt_protocol(8, 1, 1.0 / 3.0);
  Rng rng(5);
  auto res = run_gt_trial(spec, 0b10110100, 0b10110011, rng);
  CHECK(res.correct);
  CHECK(res.message_bits.size() == 1);
  CHECK(res.message_bits[0] == 8);
  CHECK(res.total_bits <= 4 * 1 * 8 * spec.fingerprint_bits);
}

TEST_CASE("deeper rounds still decide correctly with high probability") {
  auto spec = make_gt_protocol(27, 3, 1.0 / 3.0);
  Rng rng(99);
  auto emp = gt_empirical_error(spec, 4000, rng);
  CHECK(emp.error_rate() <= 1.0 / 3.0);
  CHECK(emp.max_total_bits <= spec.comm_budget);
}

TEST_CASE("fks examples") {
  FksRankTable table = FksRankTable::build({2, 5, 9}, 16);
  auto r5 = table.query(5);
  CHECK(r5.member);
  CHECK(r5.rank == 2);
  CHECK(r5.probes <= 3);
  auto r7 = table.query(7);
  CHECK_FALSE(r7.member);
  CHECK(r7.probes <= 3);
  CHECK(table.audit({2, 5, 9}).implicit);
  CHECK(table.audit({2, 5, 9}).ranks_correct);
}

TEST_CASE("fks handles corner cases") {
  FksRankTable empty = FksRankTable::build({}, 8);
  CHECK_FALSE(empty.query(3).member);

  FksRankTable one = FksRankTable::build({7}, 8);
  CHECK(one.query(7).member);
  CHECK(one.query(7).rank == 1);
  CHECK_FALSE(one.query(6).member);

  CHECK_THROWS_AS(FksRankTable::build({3, 3}, 8), std::invalid_argument);
  CHECK_THROWS_AS(FksRankTable::build({9}, 8), std::invalid_argument);
}

TEST_CASE("fks exhaustive over a medium universe") {
  // all subsets of [16] with at most 3 members; acceptance covers m = 64
  const std::uint64_t m = 16;
  for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
    if (__builtin_popcountll(mask) > 3) continue;
    std::vector<std::uint64_t> members;
    for (std::uint64_t v = 0; v < m; ++v)
      if ((mask >> v) & 1u) members.push_back(v);
    FksRankTable table = FksRankTable::build(members, m);
    CHECK(table.cell_count() <= 6 * std::max<std::size_t>(members.size(), 1) + 2);
    for (std::uint64_t x = 0; x < m; ++x) {
      auto res = table.query(x);
      CHECK(res.probes <= 3);
      const bool want = (mask >> x) & 1u;
      CHECK(res.member == want);
      if (want) {
        std::size_t rank = 0;
        for (std::uint64_t y : members)
          if (y <= x) ++rank;
        CHECK(res.rank == rank);
      }
    }
    auto audit = table.audit(members);
    CHECK(audit.implicit);
    CHECK(audit.ranks_correct);
  }
}
