#include "qclab/fks.hpp"

#include <algorithm>
#include <stdexcept>

namespace qclab {

namespace {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

int bit_width_u64(std::uint64_t v) {
  int b = 0;
  while (v) {
    ++b;
    v >>= 1;
  }
  return std::max(b, 1);
}

std::size_t hash_mod(std::uint64_t a, std::uint64_t z, std::uint64_t p, std::size_t s) {
  return static_cast<std::size_t>(((a * z) % p) % s);
}

}  // namespace

std::uint64_t next_prime_after(std::uint64_t v) {
  std::uint64_t c = v + 1;
  while (!is_prime(c)) ++c;
  return c;
}

FksRankTable FksRankTable::build(const std::vector<std::uint64_t>& members,
                                 std::uint64_t universe) {
  for (std::uint64_t y : members)
    if (y >= universe) throw std::invalid_argument("member outside the universe");
  std::vector<std::uint64_t> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate members");

  FksRankTable table;
  table.universe_ = universe;
  table.n_ = sorted.size();
  const std::size_t n = sorted.size();
  const std::uint64_t p = next_prime_after(std::max<std::uint64_t>(universe, 3));
  const std::size_t s1 = std::max<std::size_t>(n, 1);

  // Level 1: scan multipliers until the bucket sizes are light. The
  // expectation bound guarantees some multiplier reaches 3n.
  std::vector<std::vector<std::uint64_t>> buckets;
  std::uint64_t a1 = 0;
  for (std::uint64_t a = 1; a < p; ++a) {
    std::vector<std::vector<std::uint64_t>> cand(s1);
    for (std::uint64_t y : sorted) cand[hash_mod(a, y, p, s1)].push_back(y);
    std::size_t sq = 0;
    for (const auto& b : cand) sq += b.size() * b.size();
    if (sq <= 3 * n || n == 0) {
      buckets = std::move(cand);
      a1 = a;
      break;
    }
  }
  if (a1 == 0) throw std::runtime_error("no light level-1 multiplier found");

  // Level 2 sizes and multipliers: injective within each bucket.
  std::vector<std::size_t> sizes(s1), offsets(s1);
  std::vector<std::uint64_t> mults(s1, 1);
  std::size_t total = 1 + s1;
  for (std::size_t j = 0; j < s1; ++j) {
    const std::size_t bj = buckets[j].size();
    sizes[j] = (bj <= 1) ? std::max<std::size_t>(bj, 1) : 2 * bj * (bj - 1) + 1;
    offsets[j] = total;
    total += sizes[j];
  }
  for (std::size_t j = 0; j < s1; ++j) {
    if (buckets[j].size() <= 1) continue;
    bool found = false;
    for (std::uint64_t a = 1; a < p && !found; ++a) {
      std::vector<bool> used(sizes[j], false);
      bool ok = true;
      for (std::uint64_t y : buckets[j]) {
        const std::size_t slot = hash_mod(a, y, p, sizes[j]);
        if (used[slot]) {
          ok = false;
          break;
        }
        used[slot] = true;
      }
      if (ok) {
        mults[j] = a;
        found = true;
      }
    }
    if (!found) throw std::runtime_error("no injective level-2 multiplier found");
  }

  // Lane width covering every stored field.
  std::uint64_t max_field = std::max<std::uint64_t>({p, total, n + 1});
  table.lane_bits_ = bit_width_u64(max_field);
  const int lane = table.lane_bits_;

  table.cells_.assign(total, 0);
  table.cells_[0] = p | (a1 << lane) | (static_cast<std::uint64_t>(s1) << (2 * lane)) |
                    (static_cast<std::uint64_t>(n) << (3 * lane));
  for (std::size_t j = 0; j < s1; ++j)
    table.cells_[1 + j] = mults[j] | (static_cast<std::uint64_t>(offsets[j]) << lane) |
                          (static_cast<std::uint64_t>(sizes[j]) << (2 * lane));
  for (std::size_t j = 0; j < s1; ++j)
    for (std::uint64_t y : buckets[j]) {
      const std::size_t rank =
          1 + static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), y) -
                                       sorted.begin());
      const std::size_t slot = offsets[j] + hash_mod(mults[j], y, p, sizes[j]);
      table.cells_[slot] = 1 + y * (n + 1) + rank;
    }

  std::uint64_t max_cell = 1;
  for (std::uint64_t c : table.cells_) max_cell = std::max(max_cell, c);
  table.word_bits_ = bit_width_u64(max_cell);
  return table;
}

FksRankTable::QueryResult FksRankTable::query(std::uint64_t x) const {
  QueryResult res;
  const int lane = lane_bits_;
  const std::uint64_t mask = (lane >= 64) ? ~0ull : ((std::uint64_t(1) << lane) - 1);

  const std::uint64_t header = cells_[0];
  ++res.probes;
  const std::uint64_t p = header & mask;
  const std::uint64_t a1 = (header >> lane) & mask;
  const std::size_t s1 = static_cast<std::size_t>((header >> (2 * lane)) & mask);
  const std::size_t n = static_cast<std::size_t>((header >> (3 * lane)) & mask);
  if (n == 0) return res;

  const std::uint64_t desc = cells_[1 + hash_mod(a1, x, p, s1)];
  ++res.probes;
  const std::uint64_t aj = desc & mask;
  const std::size_t offset = static_cast<std::size_t>((desc >> lane) & mask);
  const std::size_t size = static_cast<std::size_t>((desc >> (2 * lane)) & mask);
  if (size == 0) return res;

  const std::uint64_t slot = cells_[offset + hash_mod(aj, x, p, size)];
  ++res.probes;
  if (slot == 0) return res;
  const std::uint64_t packed = slot - 1;
  if (packed / (n + 1) != x) return res;  // another member's slot
  res.member = true;
  res.rank = static_cast<std::size_t>(packed % (n + 1));
  return res;
}

FksRankTable::Audit FksRankTable::audit(const std::vector<std::uint64_t>& members) const {
  Audit a;
  std::vector<std::uint64_t> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const std::size_t s1 = std::max<std::size_t>(n, 1);
  for (std::size_t c = 1 + s1; c < cells_.size(); ++c) {
    ++a.slots;
    if (cells_[c] == 0) continue;  // the empty mark is a pointer value
    const std::uint64_t packed = cells_[c] - 1;
    const std::uint64_t y = packed / (n + 1);
    const std::size_t rank = static_cast<std::size_t>(packed % (n + 1));
    if (!std::binary_search(sorted.begin(), sorted.end(), y)) a.implicit = false;
    const std::size_t want =
        1 + static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), y) -
                                     sorted.begin());
    if (rank != want) a.ranks_correct = false;
  }
  return a;
}

FksRankTable FksRankTable::from_parts(std::vector<std::uint64_t> cells, std::uint64_t universe,
                                      std::size_t n, int lane_bits, int word_bits) {
  FksRankTable t;
  t.cells_ = std::move(cells);
  t.universe_ = universe;
  t.n_ = n;
  t.lane_bits_ = lane_bits;
  t.word_bits_ = word_bits;
  return t;
}

}  // namespace qclab
