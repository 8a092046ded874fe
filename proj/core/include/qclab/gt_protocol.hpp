#pragma once

#include <cstdint>
#include <vector>

#include "qclab/sampling.hpp"

namespace qclab {

// Multi-round fingerprinting protocol deciding x > y on n-bit integers.
// Each round narrows the segment holding the first differing bit by a
// factor of about n^(1/t) using public-coin prefix fingerprints; the last
// message carries the remaining segment verbatim. The public coin is a
// stream of fresh inner-product bits per equality test, far too large for
// an explicit table, so evaluation is by seeded trials.
struct GtProtocolSpec {
  int n = 0;
  int t = 1;
  double delta = 1.0 / 3.0;
  int block_factor = 0;      // sub-blocks per narrowing round
  int fingerprint_bits = 0;  // bits per equality test
  long long comm_budget = 0; // 4 t ceil(n^(1/t)) ceil(log2(n t / delta))
};

GtProtocolSpec make_gt_protocol(int n, int t, double delta);

struct GtTrialResult {
  bool answered_greater = false;
  bool correct = false;
  int total_bits = 0;
  std::vector<int> message_bits;
};

GtTrialResult run_gt_trial(const GtProtocolSpec& spec, std::uint64_t x, std::uint64_t y,
                           Rng& coin);

struct GtEmpirical {
  std::size_t trials = 0;
  std::size_t wrong = 0;
  int max_total_bits = 0;
  double error_rate() const {
    return trials ? static_cast<double>(wrong) / static_cast<double>(trials) : 0.0;
  }
};

// Seeded Monte-Carlo over random pairs (with equal and adjacent pairs mixed
// in) and fresh public coins.
GtEmpirical gt_empirical_error(const GtProtocolSpec& spec, std::size_t trials, Rng& rng);

}  // namespace qclab
