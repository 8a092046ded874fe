#include "qclab/rank_parity.hpp"

#include <stdexcept>

namespace qclab {

BitString concat(const BitString& a, const BitString& b) {
  return {(a.value << b.length) | b.value, a.length + b.length};
}

BitString zeros(int length) { return {0, length}; }

BitString ones(int length) {
  return {length == 0 ? 0 : ((std::uint64_t(1) << length) - 1), length};
}

Parity par_answer(const BitString& x, const std::vector<BitString>& s) {
  std::size_t rank = 0;
  for (const BitString& y : s) {
    if (y.length != x.length) throw std::invalid_argument("rank parity: length mismatch");
    if (y <= x) ++rank;
  }
  return (rank % 2 == 0) ? Parity::even : Parity::odd;
}

ParityInstance par_reduce_a(const std::vector<BitString>& xs, std::size_t i,
                            const std::vector<BitString>& s, std::size_t k) {
  if (xs.size() != k) throw std::invalid_argument("expected k strings");
  if (i < 1 || i > k) throw std::invalid_argument("index out of range");
  const int piece = xs.front().length;
  for (const BitString& x : xs)
    if (x.length != piece) throw std::invalid_argument("strings must share one length");

  ParityInstance out;
  out.x = zeros(0);
  for (const BitString& x : xs) out.x = concat(out.x, x);

  BitString prefix = zeros(0);
  for (std::size_t j = 0; j + 1 < i; ++j) prefix = concat(prefix, xs[j]);
  const int tail = static_cast<int>(k - i) * piece;
  for (const BitString& y : s) {
    if (y.length != piece) throw std::invalid_argument("set strings must share the piece length");
    out.s.push_back(concat(concat(prefix, y), zeros(tail)));
  }
  return out;
}

ParityInstanceB par_reduce_b(const BitString& x, std::size_t i,
                             const std::vector<std::vector<BitString>>& sets, std::size_t q) {
  const std::size_t k = sets.size();
  if (k == 0 || (k & (k - 1)) != 0)
    throw std::invalid_argument("the number of sets must be a power of two");
  if (q % k != 0) throw std::invalid_argument("the block count must divide the set bound");
  if (i < 1 || i > k) throw std::invalid_argument("index out of range");
  int logk = 0;
  while ((std::size_t(1) << logk) < k) ++logk;
  const int p = x.length + logk + 1;  // target string length

  ParityInstanceB out;
  BitString tag_i{static_cast<std::uint64_t>(i - 1), logk};
  out.instance.x = concat(concat(tag_i, zeros(1)), x);

  for (std::size_t j = 1; j <= k; ++j) {
    BitString tag{static_cast<std::uint64_t>(j - 1), logk};
    std::size_t count = 0;
    for (const BitString& y : sets[j - 1]) {
      if (y.length != x.length) throw std::invalid_argument("set strings length mismatch");
      out.instance.s.push_back(concat(concat(tag, zeros(1)), y));
      ++count;
    }
    if (count % 2 == 1) {
      // pad to even size with the block's maximal string (tag then ones)
      out.instance.s.push_back(concat(tag, ones(p - logk)));
      ++out.padded_blocks;
    }
  }
  out.size_bound_respected = out.instance.s.size() <= q;
  return out;
}

GtInstance gt_self_reduce(const std::vector<BitString>& xs, std::size_t i, const BitString& y,
                          std::size_t k) {
  if (xs.size() != k) throw std::invalid_argument("expected k strings");
  if (i < 1 || i > k) throw std::invalid_argument("index out of range");
  const int piece = xs.front().length;
  for (const BitString& x : xs)
    if (x.length != piece) throw std::invalid_argument("strings must share one length");
  if (y.length != piece) throw std::invalid_argument("y must share the piece length");

  GtInstance out;
  out.x = zeros(0);
  for (const BitString& x : xs) out.x = concat(out.x, x);
  out.y = zeros(0);
  for (std::size_t j = 0; j + 1 < i; ++j) out.y = concat(out.y, xs[j]);
  out.y = concat(out.y, y);
  out.y = concat(out.y, ones(static_cast<int>(k - i) * piece));
  return out;
}

}  // namespace qclab
