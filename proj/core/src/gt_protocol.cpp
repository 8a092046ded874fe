#include "qclab/gt_protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace qclab {

namespace {

int ceil_log2_ll(long long v) {
  int b = 0;
  while ((1ll << b) < v) ++b;
  return b;
}

// k fresh inner products of the prefix bits [0, cut) of both strings.
// Returns true when every product agrees (the receiver-side comparison).
bool prefix_fingerprints_match(std::uint64_t x, std::uint64_t y, int n, int cut, int k,
                               Rng& coin) {
  bool match = true;
  for (int rep = 0; rep < k; ++rep) {
    int fx = 0, fy = 0;
    for (int pos = 0; pos < cut; ++pos) {
      const int r = static_cast<int>(coin.u64() & 1u);
      fx ^= r & static_cast<int>((x >> (n - 1 - pos)) & 1u);
      fy ^= r & static_cast<int>((y >> (n - 1 - pos)) & 1u);
    }
    if (fx != fy) match = false;  // keep drawing: coin usage is data-independent
  }
  return match;
}

}  // namespace

GtProtocolSpec make_gt_protocol(int n, int t, double delta) {
  if (n < 1 || n > 62) throw std::invalid_argument("n out of range");
  if (t < 1 || (1 << t) > 2 * n) throw std::invalid_argument("round count out of range");
  if (delta <= 0 || delta >= 1) throw std::invalid_argument("target error out of range");
  GtProtocolSpec spec;
  spec.n = n;
  spec.t = t;
  spec.delta = delta;
  spec.block_factor = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 1.0 / t)));
  if (spec.block_factor < 2) spec.block_factor = 2;
  spec.fingerprint_bits =
      ceil_log2_ll(static_cast<long long>(std::ceil(n * t / delta)));
  spec.comm_budget = 4ll * t * spec.block_factor * spec.fingerprint_bits;
  return spec;
}

GtTrialResult run_gt_trial(const GtProtocolSpec& spec, std::uint64_t x, std::uint64_t y,
                           Rng& coin) {
  const int n = spec.n, t = spec.t, b = spec.block_factor, k = spec.fingerprint_bits;
  GtTrialResult res;
  int lo = 0, hi = n;

  for (int round = 1; round < t; ++round) {
    // narrow [lo, hi) with prefix fingerprints at the interior cuts
    const int len = hi - lo;
    const int blocks = std::min(b, len);
    int bits = (round > 1) ? ceil_log2_ll(b) : 0;  // index syncing the segment
    int new_lo = lo, new_hi = hi;
    bool found = false;
    for (int j = 1; j < blocks; ++j) {
      const int cut = lo + (len * j) / blocks;
      bits += k;
      if (!found && !prefix_fingerprints_match(x, y, n, cut, k, coin)) {
        new_lo = lo + (len * (j - 1)) / blocks;
        new_hi = cut;
        found = true;
      }
    }
    if (!found) {
      new_lo = lo + (len * (blocks - 1)) / blocks;
      new_hi = hi;
    }
    lo = new_lo;
    hi = new_hi;
    res.message_bits.push_back(bits);
    res.total_bits += bits;
  }

  // final message: the segment itself, plus the index that synced it
  {
    int bits = (t > 1) ? ceil_log2_ll(b) : 0;
    bits += hi - lo;
    res.message_bits.push_back(bits);
    res.total_bits += bits;
  }
  // the recipient compares the raw segments; ties fall back to "not greater"
  const std::uint64_t mask = (hi - lo >= 64) ? ~0ull : ((std::uint64_t(1) << (hi - lo)) - 1);
  const std::uint64_t xs = (x >> (n - hi)) & mask;
  const std::uint64_t ys = (y >> (n - hi)) & mask;
  res.answered_greater = xs > ys;
  res.correct = (res.answered_greater == (x > y));
  return res;
}

GtEmpirical gt_empirical_error(const GtProtocolSpec& spec, std::size_t trials, Rng& rng) {
  GtEmpirical emp;
  emp.trials = trials;
  const std::uint64_t mask = (std::uint64_t(1) << spec.n) - 1;
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t x = rng.u64() & mask;
    std::uint64_t y;
    switch (i % 4) {
      case 0: y = rng.u64() & mask; break;
      case 1: y = x; break;                    // equal pair
      case 2: y = (x + 1) & mask; break;       // adjacent pairs
      default: y = (x - 1) & mask; break;
    }
    const GtTrialResult r = run_gt_trial(spec, x, y, rng);
    if (!r.correct) ++emp.wrong;
    emp.max_total_bits = std::max(emp.max_total_bits, r.total_bits);
  }
  return emp;
}

}  // namespace qclab
