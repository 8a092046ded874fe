#include "qclab/classical_protocol.hpp"

#include <stdexcept>

namespace qclab {

void CoinSpace::validate() const {
  if (probs.empty()) return;
  Rational sum(0);
  for (const Rational& p : probs) {
    if (p.is_negative()) throw std::invalid_argument("negative coin probability");
    sum += p;
  }
  if (sum != Rational(1)) throw std::invalid_argument("coin probabilities must sum to 1");
}

Party ClassicalProtocol::sender(std::size_t round) const {
  return (round % 2 == 0) ? starter : other(starter);
}

Party ClassicalProtocol::answerer() const {
  if (rounds() == 0) return starter;  // zero rounds: answer from one input alone
  return other(sender(rounds() - 1));
}

int ClassicalProtocol::prefix_bits(std::size_t round) const {
  int bits = 0;
  for (std::size_t r = 0; r < round; ++r) bits += lengths[r];
  return bits;
}

int ClassicalProtocol::total_bits() const { return prefix_bits(rounds()); }

std::uint32_t ClassicalProtocol::message(std::size_t round, std::size_t input,
                                         std::uint64_t transcript, std::size_t coin,
                                         std::size_t pub) const {
  const std::size_t idx =
      ((input << prefix_bits(round) | transcript) * this->coin(sender(round)).size() + coin) *
          pub_size() +
      pub;
  return message_tables[round][idx];
}

int ClassicalProtocol::answer(std::size_t input, std::uint64_t transcript, std::size_t coin,
                              std::size_t pub) const {
  const std::size_t idx =
      ((input << total_bits() | transcript) * this->coin(answerer()).size() + coin) * pub_size() +
      pub;
  return static_cast<int>(answer_table[idx]);
}

bool ClassicalProtocol::aborts(std::size_t input, std::size_t pub) const {
  if (abort_table.empty()) return false;
  return abort_table[input * pub_size() + pub] != 0;
}

void ClassicalProtocol::validate() const {
  if (e_size == 0 || f_size == 0 || g_size == 0) throw std::invalid_argument("empty input sets");
  coin_a.validate();
  coin_b.validate();
  if (has_public_coin) public_coin.validate();
  if (total_bits() > 30) throw CapacityError("transcript exceeds 30 bits");
  for (int l : lengths)
    if (l < 0 || l > 20) throw std::invalid_argument("message length out of range");
  if (message_tables.size() != rounds())
    throw std::invalid_argument("one message table per round required");
  for (std::size_t r = 0; r < rounds(); ++r) {
    const std::size_t want = (input_size(sender(r)) << prefix_bits(r)) *
                             coin(sender(r)).size() * pub_size();
    if (message_tables[r].size() != want)
      throw std::invalid_argument("message table size mismatch at round " + std::to_string(r));
    for (std::uint32_t m : message_tables[r])
      if (m >= (std::uint32_t(1) << lengths[r]))
        throw std::invalid_argument("message exceeds its round length");
  }
  const std::size_t want_ans =
      (input_size(answerer()) << total_bits()) * coin(answerer()).size() * pub_size();
  if (answer_table.size() != want_ans) throw std::invalid_argument("answer table size mismatch");
  for (std::uint32_t a : answer_table)
    if (a >= g_size) throw std::invalid_argument("answer out of range");
  if (!abort_table.empty() &&
      abort_table.size() != input_size(abort_party) * pub_size())
    throw std::invalid_argument("abort table size mismatch");
}

ClassicalErrorReport eval_classical(const ClassicalProtocol& p, const GameSpec& g,
                                    const JointDistribution* d) {
  p.validate();
  g.validate();
  if (p.e_size != g.e_size || p.f_size != g.f_size || p.g_size != g.g_size)
    throw std::invalid_argument("protocol sets do not match the game");
  if (d) {
    d->validate();
    if (d->e_size != g.e_size || d->f_size != g.f_size)
      throw std::invalid_argument("distribution does not match the game");
  }

  const std::size_t na = p.coin_a.size(), nb = p.coin_b.size(), np = p.pub_size();
  const long long branches = static_cast<long long>(p.e_size) * p.f_size * na * nb * np;
  if (branches > config::max_branches())
    throw CapacityError("enumeration of " + std::to_string(branches) +
                        " branches exceeds the cap");

  ClassicalErrorReport rep;
  rep.grid.e_size = p.e_size;
  rep.grid.f_size = p.f_size;
  rep.grid.eps.assign(p.e_size * p.f_size, Rational(0));
  rep.lengths = p.lengths;
  rep.branches = branches;

  const Party answerer = p.answerer();
  for (std::size_t x = 0; x < p.e_size; ++x) {
    for (std::size_t y = 0; y < p.f_size; ++y) {
      Rational err(0);
      for (std::size_t pv = 0; pv < np; ++pv) {
        const Rational pp = p.has_public_coin ? p.public_coin.prob(pv) : Rational(1);
        if (pp.is_zero()) continue;
        const std::size_t abort_input = (p.abort_party == Party::alice) ? x : y;
        if (p.aborts(abort_input, pv)) {
          err += pp;  // charged as an outright error, all coins
          continue;
        }
        for (std::size_t ca = 0; ca < na; ++ca) {
          const Rational pa = p.coin_a.prob(ca);
          if (pa.is_zero()) continue;
          for (std::size_t cb = 0; cb < nb; ++cb) {
            const Rational pb = p.coin_b.prob(cb);
            if (pb.is_zero()) continue;
            std::uint64_t transcript = 0;
            for (std::size_t r = 0; r < p.rounds(); ++r) {
              const Party s = p.sender(r);
              const std::size_t input = (s == Party::alice) ? x : y;
              const std::size_t coin = (s == Party::alice) ? ca : cb;
              const std::uint32_t m = p.message(r, input, transcript, coin, pv);
              transcript = (transcript << p.lengths[r]) | m;
            }
            const std::size_t ans_input = (answerer == Party::alice) ? x : y;
            const std::size_t ans_coin = (answerer == Party::alice) ? ca : cb;
            const int ans = p.answer(ans_input, transcript, ans_coin, pv);
            if (ans != g.value(x, y)) err += pp * pa * pb;
          }
        }
      }
      rep.grid.at(x, y) = err;
    }
  }

  rep.eps_worst = Rational(0);
  for (std::size_t x = 0; x < p.e_size; ++x)
    for (std::size_t y = 0; y < p.f_size; ++y)
      if (g.allowed(x, y) && rep.grid.at(x, y) > rep.eps_worst)
        rep.eps_worst = rep.grid.at(x, y);

  if (d) {
    rep.has_distribution = true;
    rep.eps_d = Rational(0);
    for (std::size_t x = 0; x < p.e_size; ++x)
      for (std::size_t y = 0; y < p.f_size; ++y) rep.eps_d += d->prob(x, y) * rep.grid.at(x, y);
  }
  return rep;
}

FixedCoinResult fix_public_coin(const ClassicalProtocol& p, const GameSpec& g,
                                const JointDistribution& d) {
  if (!p.has_public_coin) throw std::invalid_argument("fix_public_coin: no public coin present");
  std::optional<FixedCoinResult> best;
  for (std::size_t pv = 0; pv < p.public_coin.size(); ++pv) {
    if (p.public_coin.prob(pv).is_zero()) continue;
    ClassicalProtocol q = p;
    q.has_public_coin = false;
    q.public_coin = CoinSpace{};
    for (std::size_t r = 0; r < p.rounds(); ++r) {
      const std::size_t n = p.message_tables[r].size() / p.pub_size();
      q.message_tables[r].resize(n);
      for (std::size_t i = 0; i < n; ++i)
        q.message_tables[r][i] = p.message_tables[r][i * p.pub_size() + pv];
    }
    {
      const std::size_t n = p.answer_table.size() / p.pub_size();
      q.answer_table.resize(n);
      for (std::size_t i = 0; i < n; ++i) q.answer_table[i] = p.answer_table[i * p.pub_size() + pv];
    }
    if (!p.abort_table.empty()) {
      const std::size_t n = p.abort_table.size() / p.pub_size();
      q.abort_table.resize(n);
      for (std::size_t i = 0; i < n; ++i) q.abort_table[i] = p.abort_table[i * p.pub_size() + pv];
    }
    const auto rep = eval_classical(q, g, &d);
    if (!best || rep.eps_d < best->eps_d) {
      best = FixedCoinResult{std::move(q), pv, rep.eps_d};
    }
  }
  if (!best) throw std::invalid_argument("public coin has empty support");
  return std::move(*best);
}

std::vector<std::vector<Rational>> first_message_table(const ClassicalProtocol& p) {
  if (p.rounds() == 0) throw std::invalid_argument("protocol has no messages");
  const std::size_t space = std::size_t(1) << p.lengths[0];
  const Party s = p.sender(0);
  const CoinSpace& coin = p.coin(s);
  std::vector<std::vector<Rational>> table(p.input_size(s),
                                           std::vector<Rational>(space, Rational(0)));
  for (std::size_t x = 0; x < p.input_size(s); ++x)
    for (std::size_t pv = 0; pv < p.pub_size(); ++pv) {
      const Rational pp = p.has_public_coin ? p.public_coin.prob(pv) : Rational(1);
      for (std::size_t c = 0; c < coin.size(); ++c)
        table[x][p.message(0, x, 0, c, pv)] += pp * coin.prob(c);
    }
  return table;
}

Encoding first_message_encoding(const ClassicalProtocol& p, const GameSpec& g,
                                const JointDistribution& d) {
  p.validate();
  if (p.rounds() == 0 || p.lengths[0] == 0)
    throw std::invalid_argument("first_message_encoding: empty first message");
  if (d.e_size != g.e_size || d.f_size != g.f_size)
    throw std::invalid_argument("distribution does not match the game");
  const Party s = p.sender(0);
  const std::vector<Rational> marginal =
      (s == Party::alice) ? d.marginal_x() : d.marginal_y();
  const auto table = first_message_table(p);
  std::vector<Rational> priors;
  std::vector<std::vector<Rational>> messages;
  for (std::size_t x = 0; x < marginal.size(); ++x) {
    if (marginal[x].is_zero()) continue;
    priors.push_back(marginal[x]);
    messages.push_back(table[x]);
  }
  return Encoding::classical(std::move(priors), std::move(messages));
}

}  // namespace qclab
