#pragma once

#include <cstdint>
#include <vector>

namespace qclab {

// Fixed-length bit string, compared as an integer.
struct BitString {
  std::uint64_t value = 0;
  int length = 0;

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.value == b.value && a.length == b.length;
  }
  friend bool operator<=(const BitString& a, const BitString& b) { return a.value <= b.value; }
};

// Concatenation, first argument most significant.
BitString concat(const BitString& a, const BitString& b);
BitString zeros(int length);
BitString ones(int length);

enum class Parity { even, odd };

// Parity of |{y in S : y <= x}|; all strings share x's length.
Parity par_answer(const BitString& x, const std::vector<BitString>& s);

struct ParityInstance {
  BitString x;
  std::vector<BitString> s;
};

// Alice holds k strings and Bob an index, a set and a copy of the first
// i-1 strings; concatenation maps it to one rank-parity instance on k-fold
// longer strings, preserving the answer.
ParityInstance par_reduce_a(const std::vector<BitString>& xs, std::size_t i,
                            const std::vector<BitString>& s, std::size_t k);

struct ParityInstanceB {
  ParityInstance instance;
  bool size_bound_respected = false;  // |S-hat| <= q audit
  std::size_t padded_blocks = 0;
};

// Bob holds k sets; block tagging plus an odd-size pad maps it to one
// instance, localising the parity to block i. The size bound after padding
// is audited rather than assumed.
ParityInstanceB par_reduce_b(const BitString& x, std::size_t i,
                             const std::vector<std::vector<BitString>>& sets, std::size_t q);

struct GtInstance {
  BitString x;
  BitString y;
};

// Greater-than self-reduction: concatenate Alice's strings; Bob pads his
// with ones past block i. x-hat > y-hat iff x_i > y.
GtInstance gt_self_reduce(const std::vector<BitString>& xs, std::size_t i, const BitString& y,
                          std::size_t k);

}  // namespace qclab
