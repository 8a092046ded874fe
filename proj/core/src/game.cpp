#include "qclab/game.hpp"

#include <algorithm>
#include <stdexcept>

#include "qclab/common.hpp"

namespace qclab {

bool GameSpec::allowed(std::size_t x, std::size_t y) const {
  if (promise.empty()) return true;
  return std::find(promise.begin(), promise.end(),
                   std::make_pair(static_cast<int>(x), static_cast<int>(y))) != promise.end();
}

void GameSpec::validate() const {
  if (e_size == 0 || f_size == 0 || g_size == 0) throw std::invalid_argument("empty game sets");
  if (table.size() != e_size * f_size) throw std::invalid_argument("truth table must be total");
  for (int v : table)
    if (v < 0 || static_cast<std::size_t>(v) >= g_size)
      throw std::invalid_argument("truth table value out of range");
}

GameSpec GameSpec::equality(int bits) {
  GameSpec g;
  g.name = "eq" + std::to_string(bits);
  g.e_size = g.f_size = std::size_t(1) << bits;
  g.g_size = 2;
  g.table.resize(g.e_size * g.f_size);
  for (std::size_t x = 0; x < g.e_size; ++x)
    for (std::size_t y = 0; y < g.f_size; ++y) g.table[x * g.f_size + y] = (x == y) ? 1 : 0;
  return g;
}

GameSpec GameSpec::xor_game() {
  GameSpec g;
  g.name = "xor1";
  g.e_size = g.f_size = 2;
  g.g_size = 2;
  g.table = {0, 1, 1, 0};
  return g;
}

GameSpec GameSpec::greater_than(int bits) {
  GameSpec g;
  g.name = "gt" + std::to_string(bits);
  g.e_size = g.f_size = std::size_t(1) << bits;
  g.g_size = 2;
  g.table.resize(g.e_size * g.f_size);
  for (std::size_t x = 0; x < g.e_size; ++x)
    for (std::size_t y = 0; y < g.f_size; ++y) g.table[x * g.f_size + y] = (x > y) ? 1 : 0;
  return g;
}

std::vector<Rational> JointDistribution::marginal_x() const {
  std::vector<Rational> m(e_size, Rational(0));
  for (std::size_t x = 0; x < e_size; ++x)
    for (std::size_t y = 0; y < f_size; ++y) m[x] += prob(x, y);
  return m;
}

std::vector<Rational> JointDistribution::marginal_y() const {
  std::vector<Rational> m(f_size, Rational(0));
  for (std::size_t x = 0; x < e_size; ++x)
    for (std::size_t y = 0; y < f_size; ++y) m[y] += prob(x, y);
  return m;
}

void JointDistribution::validate() const {
  if (p.size() != e_size * f_size) throw std::invalid_argument("distribution size mismatch");
  Rational sum(0);
  for (const Rational& v : p) {
    if (v.is_negative()) throw std::invalid_argument("negative probability");
    sum += v;
  }
  if (sum != Rational(1)) throw std::invalid_argument("distribution must sum to 1");
}

JointDistribution JointDistribution::uniform(std::size_t e_size, std::size_t f_size) {
  JointDistribution d;
  d.e_size = e_size;
  d.f_size = f_size;
  d.p.assign(e_size * f_size, Rational(1, static_cast<std::int64_t>(e_size * f_size)));
  return d;
}

JointDistribution JointDistribution::uniform_allowed(const GameSpec& g) {
  if (!g.has_promise()) return uniform(g.e_size, g.f_size);
  JointDistribution d;
  d.e_size = g.e_size;
  d.f_size = g.f_size;
  d.p.assign(g.e_size * g.f_size, Rational(0));
  const auto count = static_cast<std::int64_t>(g.promise.size());
  for (const auto& [x, y] : g.promise) d.p[x * g.f_size + y] = Rational(1, count);
  return d;
}

std::uint64_t PowerGame::encode_x(const std::vector<int>& xs) const {
  if (xs.size() != n) throw std::invalid_argument("expected n strings");
  std::uint64_t v = 0;
  for (int x : xs) {
    if (x < 0 || static_cast<std::size_t>(x) >= base.e_size)
      throw std::invalid_argument("input out of range");
    v = v * base.e_size + static_cast<std::uint64_t>(x);
  }
  return v;
}

std::vector<int> PowerGame::decode_x(std::uint64_t v) const {
  std::vector<int> xs(n);
  for (std::size_t j = n; j-- > 0;) {
    xs[j] = static_cast<int>(v % base.e_size);
    v /= base.e_size;
  }
  return xs;
}

std::uint64_t PowerGame::encode_y(std::size_t i, int y, const std::vector<int>& prefix) const {
  if (i < 1 || i > n) throw std::invalid_argument("index out of range");
  if (prefix.size() != i - 1) throw std::invalid_argument("prefix must hold i-1 strings");
  std::uint64_t offset = 0, block = 1;
  for (std::size_t j = 1; j < i; ++j) {
    offset += block * base.f_size;
    block *= base.e_size;
  }
  std::uint64_t pv = 0;
  for (int x : prefix) pv = pv * base.e_size + static_cast<std::uint64_t>(x);
  return offset + pv * base.f_size + static_cast<std::uint64_t>(y);
}

PowerGame::YParts PowerGame::decode_y(std::uint64_t v) const {
  std::uint64_t offset = 0, block = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint64_t span = block * base.f_size;
    if (v < offset + span) {
      YParts parts;
      parts.i = i;
      std::uint64_t rest = v - offset;
      parts.y = static_cast<int>(rest % base.f_size);
      std::uint64_t pv = rest / base.f_size;
      parts.prefix.resize(i - 1);
      for (std::size_t j = i - 1; j-- > 0;) {
        parts.prefix[j] = static_cast<int>(pv % base.e_size);
        pv /= base.e_size;
      }
      return parts;
    }
    offset += span;
    block *= base.e_size;
  }
  throw std::invalid_argument("composite input out of range");
}

PowerGame game_power(const GameSpec& base, std::size_t n) {
  base.validate();
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  PowerGame pg;
  pg.base = base;
  pg.n = n;

  std::uint64_t e_size = 1;
  for (std::size_t j = 0; j < n; ++j) {
    e_size *= base.e_size;
    if (e_size > (1ull << 40)) throw CapacityError("composite input set too large");
  }
  std::uint64_t f_size = 0, block = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    f_size += block * base.f_size;
    block *= base.e_size;
  }
  if (e_size * f_size > static_cast<std::uint64_t>(config::max_branches()))
    throw CapacityError("composite game exceeds the enumeration cap");

  pg.game.name = base.name + "^" + std::to_string(n);
  pg.game.e_size = e_size;
  pg.game.f_size = f_size;
  pg.game.g_size = base.g_size;
  pg.game.table.resize(e_size * f_size);
  for (std::uint64_t xv = 0; xv < e_size; ++xv) {
    const std::vector<int> xs = pg.decode_x(xv);
    for (std::uint64_t yv = 0; yv < f_size; ++yv) {
      const auto parts = pg.decode_y(yv);
      pg.game.table[xv * f_size + yv] = base.value(xs[parts.i - 1], parts.y);
      bool consistent = true;
      for (std::size_t j = 0; j + 1 < parts.i; ++j)
        if (parts.prefix[j] != xs[j]) consistent = false;
      if (consistent)
        pg.game.promise.emplace_back(static_cast<int>(xv), static_cast<int>(yv));
    }
  }
  return pg;
}

JointDistribution build_product_distribution(const JointDistribution& d, std::size_t n,
                                             const PowerGame& pg) {
  d.validate();
  if (pg.n != n || pg.base.e_size != d.e_size || pg.base.f_size != d.f_size)
    throw std::invalid_argument("distribution does not match the composite game");
  const std::uint64_t pairs =
      static_cast<std::uint64_t>(pg.game.e_size) * pg.game.f_size;
  if (pairs > static_cast<std::uint64_t>(config::max_branches()))
    throw CapacityError("product distribution exceeds the enumeration cap");

  const std::vector<Rational> px = d.marginal_x();
  JointDistribution out;
  out.e_size = pg.game.e_size;
  out.f_size = pg.game.f_size;
  out.p.assign(out.e_size * out.f_size, Rational(0));
  const Rational inv_n(1, static_cast<std::int64_t>(n));
  for (std::uint64_t xv = 0; xv < out.e_size; ++xv) {
    const std::vector<int> xs = pg.decode_x(xv);
    for (std::size_t i = 1; i <= n; ++i) {
      // weight of the strings outside position i
      Rational rest(1);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i - 1) rest *= px[xs[j]];
      if (rest.is_zero()) continue;
      std::vector<int> prefix(xs.begin(), xs.begin() + (i - 1));
      for (std::size_t y = 0; y < d.f_size; ++y) {
        const Rational w = inv_n * rest * d.prob(xs[i - 1], y);
        if (w.is_zero()) continue;
        out.p[xv * out.f_size + pg.encode_y(i, static_cast<int>(y), prefix)] += w;
      }
    }
  }
  out.validate();
  return out;
}

}  // namespace qclab
