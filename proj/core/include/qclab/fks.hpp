#pragma once

#include <cstdint>
#include <vector>

namespace qclab {

// Two-level perfect hash table storing, per member y of S, the pair
// (y, rank of y in S) with 1-based ranks in sorted order. Lookups read the
// header, one bucket descriptor and one slot: three cells.
//
// Cell layout (lane width = `lane_bits` each):
//   cell 0           header: prime | a1 | bucket_count | n
//   cells 1..s1      bucket descriptors: a_j | offset_j | size_j
//   cells offset_j.. slots: 0 = empty, else 1 + y*(n+1) + rank
class FksRankTable {
 public:
  static FksRankTable build(const std::vector<std::uint64_t>& members, std::uint64_t universe);

  struct QueryResult {
    bool member = false;
    std::size_t rank = 0;  // 1-based when member
    int probes = 0;
  };
  QueryResult query(std::uint64_t x) const;

  std::size_t cell_count() const { return cells_.size(); }
  int word_bits() const { return word_bits_; }
  std::uint64_t universe() const { return universe_; }
  std::size_t size() const { return n_; }
  const std::vector<std::uint64_t>& cells() const { return cells_; }

  struct Audit {
    bool implicit = true;       // every slot holds a member or the empty mark
    bool ranks_correct = true;  // stored ranks match the sorted order
    std::size_t slots = 0;
  };
  Audit audit(const std::vector<std::uint64_t>& members) const;

  int lane_bits() const { return lane_bits_; }
  // Reassembles a table from its serialized parts.
  static FksRankTable from_parts(std::vector<std::uint64_t> cells, std::uint64_t universe,
                                 std::size_t n, int lane_bits, int word_bits);

 private:
  std::vector<std::uint64_t> cells_;
  std::uint64_t universe_ = 0;
  std::size_t n_ = 0;
  int lane_bits_ = 0;
  int word_bits_ = 0;
};

std::uint64_t next_prime_after(std::uint64_t v);

}  // namespace qclab
