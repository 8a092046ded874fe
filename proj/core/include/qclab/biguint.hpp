#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qclab {

// Arbitrary-precision unsigned integer, base 2^32 little-endian limbs.
// Sized for the bound tracers (a few thousand bits); not tuned for speed.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v);  // NOLINT(implicit)

  static BigUint from_decimal(std::string_view s);
  static BigUint pow2(std::size_t k);

  std::string to_decimal() const;

  bool is_zero() const { return limbs_.empty(); }
  // Number of bits; zero has bit length 0.
  std::size_t bit_length() const;
  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t to_u64() const;

  BigUint pow(unsigned e) const;

  friend BigUint operator+(const BigUint& a, const BigUint& b);
  friend BigUint operator-(const BigUint& a, const BigUint& b);  // requires a >= b
  friend BigUint operator*(const BigUint& a, const BigUint& b);
  // Quotient and remainder; throws on division by zero.
  static std::pair<BigUint, BigUint> divmod(const BigUint& a, const BigUint& b);
  friend BigUint operator/(const BigUint& a, const BigUint& b) { return divmod(a, b).first; }
  friend BigUint operator%(const BigUint& a, const BigUint& b) { return divmod(a, b).second; }

  friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }
  friend bool operator!=(const BigUint& a, const BigUint& b) { return !(a == b); }
  friend bool operator<(const BigUint& a, const BigUint& b) { return cmp(a, b) < 0; }
  friend bool operator>(const BigUint& a, const BigUint& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const BigUint& a, const BigUint& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const BigUint& a, const BigUint& b) { return cmp(a, b) >= 0; }

 private:
  static int cmp(const BigUint& a, const BigUint& b);
  void trim();
  BigUint shifted_left_bits(std::size_t k) const;
  bool bit(std::size_t i) const;

  std::vector<std::uint32_t> limbs_;
};

}  // namespace qclab
