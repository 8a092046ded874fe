#include "qclab/round_elim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "qclab/linalg.hpp"

namespace qclab {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321;

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  const __int128 l = (__int128)(a / g) * b;
  if (l > INT64_MAX) throw std::overflow_error("coin denominator overflow");
  return static_cast<std::int64_t>(l);
}

std::string classical_signature(const ClassicalProtocol& p) {
  std::string s = "[" + std::to_string(p.rounds()) + ",0";
  for (int l : p.lengths) s += "," + std::to_string(l);
  s += "]^";
  s += (p.starter == Party::alice) ? "A" : "B";
  return s;
}

Encoding classical_first_message(const std::vector<Rational>& marginal,
                                 const std::vector<std::vector<Rational>>& table) {
  std::vector<Rational> priors;
  std::vector<std::vector<Rational>> msgs;
  for (std::size_t x = 0; x < marginal.size(); ++x) {
    if (marginal[x].is_zero()) continue;
    priors.push_back(marginal[x]);
    msgs.push_back(table[x]);
  }
  return Encoding::classical(std::move(priors), std::move(msgs));
}

}  // namespace

ClassicalReduction classical_round_reduce(const ClassicalProtocol& p, const GameSpec& g,
                                          const JointDistribution& d) {
  p.validate();
  g.validate();
  d.validate();
  if (p.has_public_coin)
    throw std::invalid_argument("round reduction starts from a private-coin protocol");
  if (!p.abort_table.empty())
    throw std::invalid_argument("input protocol already carries aborts");
  if (p.rounds() < 1) throw std::invalid_argument("no round to remove");
  if (p.e_size != g.e_size || p.f_size != g.f_size)
    throw std::invalid_argument("protocol sets do not match the game");
  if (d.e_size != g.e_size || d.f_size != g.f_size)
    throw std::invalid_argument("distribution does not match the game");

  const Party s = p.starter;
  const CoinSpace& scoin = p.coin(s);
  const std::size_t in_n = p.input_size(s);
  const std::size_t msg_space = std::size_t(1) << p.lengths[0];
  const std::vector<Rational> marginal =
      (s == Party::alice) ? d.marginal_x() : d.marginal_y();

  // sigma(m | x) and sigma(m)
  const std::vector<std::vector<Rational>> sig_mx = first_message_table(p);
  std::vector<Rational> sig_m(msg_space, Rational(0));
  for (std::size_t x = 0; x < in_n; ++x)
    for (std::size_t m = 0; m < msg_space; ++m) sig_m[m] += marginal[x] * sig_mx[x][m];

  auto first_msg = [&](std::size_t x, std::size_t r) { return p.message(0, x, 0, r, 0); };

  // Merged public coin: one value per (message, threshold segment), where a
  // segment resolves the old private coin identically for every input.
  std::vector<ReductionCoinValue> pubvals;
  std::vector<Rational> pubprobs;
  std::vector<std::vector<std::size_t>> resolution(in_n);  // [x][pub] -> coin or npos
  constexpr std::size_t kAbort = SIZE_MAX;

  for (std::size_t m = 0; m < msg_space; ++m) {
    if (sig_m[m].is_zero()) continue;
    std::int64_t common = 1;
    for (std::size_t x = 0; x < in_n; ++x) {
      if (sig_mx[x][m].is_zero()) continue;
      for (std::size_t r = 0; r < scoin.size(); ++r) {
        if (first_msg(x, r) != m) continue;
        const Rational q = scoin.prob(r) / sig_mx[x][m];
        if (!q.is_zero()) common = lcm64(common, q.den());
      }
    }
    std::set<std::int64_t> cuts{0, common};
    for (std::size_t x = 0; x < in_n; ++x) {
      if (sig_mx[x][m].is_zero()) continue;
      Rational cum(0);
      for (std::size_t r = 0; r < scoin.size(); ++r) {
        if (first_msg(x, r) != m) continue;
        cum += scoin.prob(r) / sig_mx[x][m];
        const Rational scaled = cum * Rational(common);
        if (scaled.den() != 1) throw std::logic_error("threshold not integral");
        cuts.insert(scaled.num());
      }
    }
    std::vector<std::int64_t> sorted(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
      const std::int64_t lo = sorted[k], hi = sorted[k + 1];
      if (lo >= hi) continue;
      pubvals.push_back({static_cast<std::uint32_t>(m), lo, hi, common});
      pubprobs.push_back(sig_m[m] * Rational(hi - lo, common));
      for (std::size_t x = 0; x < in_n; ++x) {
        if (sig_mx[x][m].is_zero()) {
          resolution[x].push_back(kAbort);
          continue;
        }
        Rational cum(0);
        std::size_t chosen = kAbort;
        for (std::size_t r = 0; r < scoin.size(); ++r) {
          if (first_msg(x, r) != m) continue;
          cum += scoin.prob(r) / sig_mx[x][m];
          if (Rational(lo) < cum * Rational(common)) {
            chosen = r;
            break;
          }
        }
        if (chosen == kAbort) throw std::logic_error("threshold resolution failed");
        resolution[x].push_back(chosen);
      }
    }
  }
  const std::size_t np = pubvals.size();

  // Assemble the reduced protocol.
  ClassicalProtocol q;
  q.starter = other(s);
  q.e_size = p.e_size;
  q.f_size = p.f_size;
  q.g_size = p.g_size;
  q.lengths.assign(p.lengths.begin() + 1, p.lengths.end());
  if (s == Party::alice) {
    q.coin_a = CoinSpace{};
    q.coin_b = p.coin_b;
  } else {
    q.coin_b = CoinSpace{};
    q.coin_a = p.coin_a;
  }
  q.has_public_coin = true;
  q.public_coin.probs = pubprobs;
  q.abort_party = s;
  q.abort_table.assign(in_n * np, 0);
  for (std::size_t x = 0; x < in_n; ++x)
    for (std::size_t k = 0; k < np; ++k)
      q.abort_table[x * np + k] = (resolution[x][k] == kAbort) ? 1 : 0;

  for (std::size_t r = 0; r < q.rounds(); ++r) {
    const Party snd = q.sender(r);
    const std::size_t inputs = q.input_size(snd);
    const std::size_t ncoin = q.coin(snd).size();
    const int qbits = q.prefix_bits(r);
    std::vector<std::uint32_t> table((inputs << qbits) * ncoin * np, 0);
    for (std::size_t in = 0; in < inputs; ++in)
      for (std::uint64_t tv = 0; tv < (std::uint64_t(1) << qbits); ++tv)
        for (std::size_t c = 0; c < ncoin; ++c)
          for (std::size_t k = 0; k < np; ++k) {
            const std::uint64_t full_tv = (std::uint64_t(pubvals[k].message) << qbits) | tv;
            std::uint32_t m = 0;
            if (snd == s) {
              if (resolution[in][k] != kAbort)
                m = p.message(r + 1, in, full_tv, resolution[in][k], 0);
            } else {
              m = p.message(r + 1, in, full_tv, c, 0);
            }
            table[((in << qbits | tv) * ncoin + c) * np + k] = m;
          }
    q.message_tables.push_back(std::move(table));
  }
  {
    const Party ans = q.answerer();
    const std::size_t inputs = q.input_size(ans);
    const std::size_t ncoin = q.coin(ans).size();
    const int qbits = q.total_bits();
    q.answer_table.assign((inputs << qbits) * ncoin * np, 0);
    for (std::size_t in = 0; in < inputs; ++in)
      for (std::uint64_t tv = 0; tv < (std::uint64_t(1) << qbits); ++tv)
        for (std::size_t c = 0; c < ncoin; ++c)
          for (std::size_t k = 0; k < np; ++k) {
            const std::uint64_t full_tv = (std::uint64_t(pubvals[k].message) << qbits) | tv;
            std::uint32_t a = 0;
            if (ans == s) {
              if (resolution[in][k] != kAbort)
                a = static_cast<std::uint32_t>(p.answer(in, full_tv, resolution[in][k], 0));
            } else {
              a = static_cast<std::uint32_t>(p.answer(in, full_tv, c, 0));
            }
            q.answer_table[((in << qbits | tv) * ncoin + c) * np + k] = a;
          }
  }
  q.validate();

  // Certificate for the step.
  const auto rep_p = eval_classical(p, g, &d);
  const auto rep_q = eval_classical(q, g, &d);
  const Encoding enc = classical_first_message(marginal, sig_mx);
  const double info = encoding_mutual_information(enc);

  ClassicalReduction out;
  out.protocol = std::move(q);
  out.coin_values = std::move(pubvals);
  out.message_given_input = sig_mx;
  out.message_average = sig_m;
  EliminationCertificate& cert = out.certificate;
  cert.kind = "classical_round_reduction";
  cert.input_signature = classical_signature(p);
  cert.output_signature = classical_signature(out.protocol);
  cert.exact = true;
  cert.eps_before_exact = rep_p.eps_d;
  cert.eps_after_exact = rep_q.eps_d;
  cert.eps_before = rep_p.eps_d.to_double();
  cert.eps_after = rep_q.eps_d.to_double();
  cert.information = info;
  cert.bound = cert.eps_before + 0.5 * std::sqrt(2.0 * kLn2 * std::max(0.0, info));
  cert.slack = cert.bound - cert.eps_after;
  return out;
}

ClassicalProtocol restrict_to_piece(const ClassicalProtocol& p, const PowerGame& pg,
                                    std::size_t i, const std::vector<int>& prefix,
                                    const JointDistribution& d) {
  if (p.has_public_coin) throw std::invalid_argument("fix the public coin before restricting");
  if (p.starter != Party::alice)
    throw std::invalid_argument("composite-game protocols start with the string holder");
  if (i < 1 || i > pg.n || prefix.size() != i - 1)
    throw std::invalid_argument("bad piece index or prefix");
  const std::vector<Rational> px = d.marginal_x();

  // Enumerate positive-probability suffixes x_{i+1..n}.
  const std::size_t suffix_len = pg.n - i;
  std::vector<std::vector<int>> suffixes;
  std::vector<Rational> sprobs;
  {
    std::vector<int> cur(suffix_len, 0);
    const std::size_t count = static_cast<std::size_t>(std::pow(pg.base.e_size, suffix_len));
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t v = idx;
      Rational w(1);
      for (std::size_t k = 0; k < suffix_len; ++k) {
        cur[k] = static_cast<int>(v % pg.base.e_size);
        v /= pg.base.e_size;
        w *= px[cur[k]];
      }
      if (w.is_zero()) continue;
      suffixes.push_back(cur);
      sprobs.push_back(w);
    }
  }
  if (suffixes.empty()) throw std::invalid_argument("marginal has empty support");

  ClassicalProtocol q;
  q.starter = Party::alice;
  q.e_size = pg.base.e_size;
  q.f_size = pg.base.f_size;
  q.g_size = pg.base.g_size;
  q.lengths = p.lengths;
  const std::size_t ns = suffixes.size();
  q.coin_a.probs.clear();
  for (std::size_t ca = 0; ca < p.coin_a.size(); ++ca)
    for (std::size_t sdx = 0; sdx < ns; ++sdx)
      q.coin_a.probs.push_back(p.coin_a.prob(ca) * sprobs[sdx]);
  q.coin_b = p.coin_b;

  auto alice_value = [&](std::size_t x, std::size_t sdx) {
    std::vector<int> xs(prefix);
    xs.push_back(static_cast<int>(x));
    xs.insert(xs.end(), suffixes[sdx].begin(), suffixes[sdx].end());
    return pg.encode_x(xs);
  };
  auto bob_value = [&](std::size_t y) { return pg.encode_y(i, static_cast<int>(y), prefix); };

  for (std::size_t r = 0; r < q.rounds(); ++r) {
    const Party snd = q.sender(r);
    const std::size_t inputs = q.input_size(snd);
    const std::size_t ncoin = q.coin(snd).size();
    const int bits = q.prefix_bits(r);
    std::vector<std::uint32_t> table((inputs << bits) * ncoin, 0);
    for (std::size_t in = 0; in < inputs; ++in)
      for (std::uint64_t tv = 0; tv < (std::uint64_t(1) << bits); ++tv)
        for (std::size_t c = 0; c < ncoin; ++c) {
          std::uint32_t m;
          if (snd == Party::alice)
            m = p.message(r, alice_value(in, c % ns), tv, c / ns, 0);
          else
            m = p.message(r, bob_value(in), tv, c, 0);
          table[(in << bits | tv) * ncoin + c] = m;
        }
    q.message_tables.push_back(std::move(table));
  }
  {
    const Party ans = q.answerer();
    const std::size_t inputs = q.input_size(ans);
    const std::size_t ncoin = q.coin(ans).size();
    const int bits = q.total_bits();
    q.answer_table.assign((inputs << bits) * ncoin, 0);
    for (std::size_t in = 0; in < inputs; ++in)
      for (std::uint64_t tv = 0; tv < (std::uint64_t(1) << bits); ++tv)
        for (std::size_t c = 0; c < ncoin; ++c) {
          std::uint32_t a;
          if (ans == Party::alice)
            a = static_cast<std::uint32_t>(p.answer(alice_value(in, c % ns), tv, c / ns, 0));
          else
            a = static_cast<std::uint32_t>(p.answer(bob_value(in), tv, c, 0));
          q.answer_table[(in << bits | tv) * ncoin + c] = a;
        }
  }
  q.validate();
  return q;
}

namespace {

// Shared info-side checks of an elimination: total information against the
// budget, additivity across the strings and the averaging decomposition.
struct PowerInfoChecks {
  double total_information = 0;
  double additivity_residual = 0;
  double averaging_residual = 0;
  double expected_conditional = 0;  // E_{i, prefix} I((X_i : M) | prefix)
};

// Conditional encoding (X_i : M) given a fixed prefix of string components.
double conditional_piece_information(const Encoding& e,
                                     const std::vector<std::vector<int>>& labels, std::size_t i,
                                     const std::vector<int>& prefix, Rational* weight_out) {
  std::map<int, std::vector<std::size_t>> by_xi;
  Rational total(0);
  for (std::size_t v = 0; v < e.values(); ++v) {
    bool match = true;
    for (std::size_t j = 0; j < prefix.size(); ++j)
      if (labels[v][j] != prefix[j]) match = false;
    if (!match) continue;
    by_xi[labels[v][i - 1]].push_back(v);
    total += e.priors()[v];
  }
  if (weight_out) *weight_out = total;
  if (total.is_zero()) return 0;
  std::vector<Rational> priors;
  std::vector<std::vector<Rational>> cmsgs;
  std::vector<DensityMatrix> qmsgs;
  for (const auto& [xi, members] : by_xi) {
    Rational pg(0);
    for (std::size_t v : members) pg += e.priors()[v];
    priors.push_back(pg / total);
    if (e.is_classical()) {
      std::vector<Rational> avg(e.classical_messages().front().size(), Rational(0));
      for (std::size_t v : members)
        for (std::size_t m = 0; m < avg.size(); ++m)
          avg[m] += (e.priors()[v] / pg) * e.classical_messages()[v][m];
      cmsgs.push_back(std::move(avg));
    } else {
      const std::size_t dim = e.quantum_messages().front().dim();
      ComplexMatrix avg(dim, dim);
      for (std::size_t v : members) {
        const double w = (e.priors()[v] / pg).to_double();
        for (std::size_t a = 0; a < dim; ++a)
          for (std::size_t bcol = 0; bcol < dim; ++bcol)
            avg(a, bcol) += w * e.quantum_messages()[v].matrix()(a, bcol);
      }
      qmsgs.emplace_back(e.quantum_messages().front().layout(), std::move(avg));
    }
  }
  const Encoding cond = e.is_classical() ? Encoding::classical(priors, cmsgs)
                                         : Encoding::quantum(priors, qmsgs);
  return encoding_mutual_information(cond);
}

PowerInfoChecks power_info_checks(const Encoding& e, const std::vector<std::vector<int>>& labels,
                                  std::size_t n) {
  PowerInfoChecks out;
  out.total_information = encoding_mutual_information(e);
  double sum_terms = 0;
  double sum_cond = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double term = conditional_information_term(e, labels, i - 1);
    sum_terms += term;
    // averaging route: prefixes grouped over the first i-1 components
    std::map<std::vector<int>, Rational> prefixes;
    for (std::size_t v = 0; v < e.values(); ++v) {
      std::vector<int> key(labels[v].begin(), labels[v].begin() + (i - 1));
      prefixes.try_emplace(key, Rational(0)).first->second += e.priors()[v];
    }
    double route = 0;
    for (const auto& [prefix, w] : prefixes) {
      Rational check(0);
      route += w.to_double() * conditional_piece_information(e, labels, i, prefix, &check);
    }
    sum_cond += route;
    out.averaging_residual = std::max(out.averaging_residual, std::abs(term - route));
  }
  out.additivity_residual = std::abs(out.total_information - sum_terms);
  out.expected_conditional = sum_cond / static_cast<double>(n);
  return out;
}

std::vector<std::vector<int>> power_labels(const PowerGame& pg,
                                           const std::vector<std::size_t>& kept_values) {
  std::vector<std::vector<int>> labels;
  labels.reserve(kept_values.size());
  for (std::size_t v : kept_values) labels.push_back(pg.decode_x(v));
  return labels;
}

}  // namespace

ClassicalElimination classical_round_eliminate(const ClassicalProtocol& p, const GameSpec& g,
                                               std::size_t n, const JointDistribution* base_d) {
  g.validate();
  const PowerGame pg = game_power(g, n);
  if (p.e_size != pg.game.e_size || p.f_size != pg.game.f_size || p.g_size != pg.game.g_size)
    throw std::invalid_argument("protocol does not have the composite-game shape");
  if (p.starter != Party::alice)
    throw std::invalid_argument("composite-game protocols start with the string holder");
  if (p.rounds() < 1) throw std::invalid_argument("no round to remove");
  const JointDistribution d = base_d ? *base_d : JointDistribution::uniform(g.e_size, g.f_size);
  const JointDistribution dstar = build_product_distribution(d, n, pg);

  const auto rep_in = eval_classical(p, pg.game);
  const ClassicalProtocol pstar =
      p.has_public_coin ? fix_public_coin(p, pg.game, dstar).protocol : p;
  const auto rep_star = eval_classical(pstar, pg.game, &dstar);

  const std::vector<Rational> px = d.marginal_x();
  struct Piece {
    Rational weight;
    ClassicalReduction red;
  };
  std::vector<Piece> pieces;
  const Rational inv_n(1, static_cast<std::int64_t>(n));
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t prefix_count = static_cast<std::size_t>(std::pow(g.e_size, i - 1));
    for (std::size_t pv = 0; pv < prefix_count; ++pv) {
      std::vector<int> prefix(i - 1);
      std::size_t v = pv;
      for (std::size_t k = i - 1; k-- > 0;) {
        prefix[k] = static_cast<int>(v % g.e_size);
        v /= g.e_size;
      }
      Rational w = inv_n;
      for (int xj : prefix) w *= px[xj];
      if (w.is_zero()) continue;
      ClassicalProtocol piece = restrict_to_piece(pstar, pg, i, prefix, d);
      pieces.push_back({w, classical_round_reduce(piece, g, d)});
    }
  }

  // Mix the reduced pieces into one public coin.
  const ClassicalProtocol& first = pieces.front().red.protocol;
  ClassicalProtocol out;
  out.starter = first.starter;
  out.e_size = first.e_size;
  out.f_size = first.f_size;
  out.g_size = first.g_size;
  out.lengths = first.lengths;
  out.coin_a = first.coin_a;
  out.coin_b = first.coin_b;
  out.has_public_coin = true;
  out.abort_party = first.abort_party;
  std::size_t total_pub = 0;
  for (const Piece& piece : pieces) total_pub += piece.red.protocol.pub_size();
  out.public_coin.probs.reserve(total_pub);
  for (const Piece& piece : pieces)
    for (std::size_t k = 0; k < piece.red.protocol.pub_size(); ++k)
      out.public_coin.probs.push_back(piece.weight * piece.red.protocol.public_coin.prob(k));

  const std::size_t abort_n = out.input_size(out.abort_party);
  out.abort_table.assign(abort_n * total_pub, 0);
  for (std::size_t r = 0; r < out.rounds(); ++r) {
    const Party snd = out.sender(r);
    const std::size_t inputs = out.input_size(snd);
    const std::size_t ncoin = out.coin(snd).size();
    const int bits = out.prefix_bits(r);
    out.message_tables.emplace_back((inputs << bits) * ncoin * total_pub, 0);
  }
  {
    const Party ans = out.answerer();
    out.answer_table.assign((out.input_size(ans) << out.total_bits()) * out.coin(ans).size() *
                                total_pub,
                            0);
  }
  std::size_t offset = 0;
  for (const Piece& piece : pieces) {
    const ClassicalProtocol& q = piece.red.protocol;
    const std::size_t np = q.pub_size();
    for (std::size_t x = 0; x < abort_n; ++x)
      for (std::size_t k = 0; k < np; ++k)
        out.abort_table[x * total_pub + offset + k] = q.abort_table[x * np + k];
    for (std::size_t r = 0; r < out.rounds(); ++r) {
      const Party snd = out.sender(r);
      const std::size_t inputs = out.input_size(snd);
      const std::size_t ncoin = out.coin(snd).size();
      const int bits = out.prefix_bits(r);
      for (std::size_t base = 0; base < (inputs << bits) * ncoin; ++base)
        for (std::size_t k = 0; k < np; ++k)
          out.message_tables[r][base * total_pub + offset + k] =
              q.message_tables[r][base * np + k];
    }
    {
      const Party ans = out.answerer();
      const std::size_t rows = (out.input_size(ans) << out.total_bits()) * out.coin(ans).size();
      for (std::size_t base = 0; base < rows; ++base)
        for (std::size_t k = 0; k < np; ++k)
          out.answer_table[base * total_pub + offset + k] = q.answer_table[base * np + k];
    }
    offset += np;
  }
  out.validate();

  // Ledger.
  const auto rep_out = eval_classical(out, g, &d);
  const int l1 = p.lengths[0];
  const double term = 0.5 * std::sqrt(2.0 * l1 * kLn2 / static_cast<double>(n));

  ClassicalElimination result;
  result.protocol = std::move(out);
  EliminationLedger& led = result.ledger;
  EliminationCertificate& cert = led.certificate;
  cert.kind = "classical_round_elimination";
  cert.input_signature = classical_signature(p);
  cert.output_signature = classical_signature(result.protocol);
  cert.exact = true;
  cert.eps_before_exact = rep_in.eps_worst;
  cert.eps_after_exact = rep_out.eps_worst;
  cert.eps_before = rep_in.eps_worst.to_double();
  cert.eps_after = rep_out.eps_worst.to_double();
  cert.bound = cert.eps_before + term;
  cert.slack = cert.bound - cert.eps_after;
  led.eps_dstar_in = rep_star.eps_d.to_double();
  led.eps_d_out = rep_out.eps_d.to_double();
  led.bound_d = led.eps_dstar_in + term;
  led.slack_d = led.bound_d - led.eps_d_out;
  led.pieces = pieces.size();
  led.info_budget = static_cast<double>(l1) / static_cast<double>(n);
  double measured = 0;
  for (const Piece& piece : pieces)
    measured += piece.weight.to_double() * piece.red.certificate.information;
  led.info_measured = measured;

  // Identity cross-checks on the fixed protocol's first message.
  {
    const std::vector<Rational> mx = dstar.marginal_x();
    const auto table = first_message_table(pstar);
    std::vector<std::size_t> kept;
    std::vector<Rational> priors;
    std::vector<std::vector<Rational>> msgs;
    for (std::size_t v = 0; v < mx.size(); ++v) {
      if (mx[v].is_zero()) continue;
      kept.push_back(v);
      priors.push_back(mx[v]);
      msgs.push_back(table[v]);
    }
    const Encoding enc = Encoding::classical(std::move(priors), std::move(msgs));
    const auto checks = power_info_checks(enc, power_labels(pg, kept), n);
    led.additivity_residual = checks.additivity_residual;
    led.averaging_residual = checks.averaging_residual;
    cert.information = checks.total_information;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Quantum round reduction
// ---------------------------------------------------------------------------

namespace {

// Splits every multi-qubit register initially owned by `party` into 1-qubit
// registers so the purification cut can fall anywhere.
QuantumProtocolBody split_registers(const QuantumProtocolBody& b, Party party) {
  std::map<std::string, std::vector<std::string>> expand;
  std::vector<Register> regs;
  for (const Register& r : b.layout.registers()) {
    if (r.owner == party && r.qubits > 1) {
      std::vector<std::string> parts;
      for (int k = 0; k < r.qubits; ++k) {
        parts.push_back(r.name + "." + std::to_string(k));
        regs.push_back({parts.back(), 1, r.owner});
      }
      expand[r.name] = std::move(parts);
    } else {
      regs.push_back(r);
      expand[r.name] = {r.name};
    }
  }
  auto map_list = [&](const std::vector<std::string>& in) {
    std::vector<std::string> out;
    for (const std::string& name : in) {
      const auto& parts = expand.at(name);
      out.insert(out.end(), parts.begin(), parts.end());
    }
    return out;
  };

  QuantumProtocolBody nb;
  nb.layout = RegisterLayout(std::move(regs));
  nb.input_a = {map_list(b.input_a.regs), b.input_a.embed};
  nb.input_b = {map_list(b.input_b.regs), b.input_b.embed};
  for (const StateInit& init : b.inits) nb.inits.push_back({map_list(init.regs), init.amps});
  for (const QuantumRound& round : b.round_list) {
    QuantumRound nr;
    for (const Gate& gate : round.gates) nr.gates.push_back({gate.matrix, map_list(gate.regs)});
    nr.transfer = map_list(round.transfer);
    nb.round_list.push_back(std::move(nr));
  }
  for (const Gate& gate : b.final_gates) nb.final_gates.push_back({gate.matrix, map_list(gate.regs)});
  nb.measurement = {map_list(b.measurement.regs), b.measurement.outcome_to_answer};
  nb.safe_regs = map_list(b.safe_regs);
  return nb;
}

// Extracts the sub-state on `keep` (in the given order); every other
// register must be in a fixed basis state.
PureState slice_state(const PureState& full, const std::vector<std::string>& keep) {
  const RegisterLayout& layout = full.layout();
  const int total = layout.total_qubits();
  std::vector<int> keep_pos;
  std::vector<Register> keep_regs;
  for (const std::string& name : keep) {
    const auto pos = layout.qubit_positions(name);
    keep_pos.insert(keep_pos.end(), pos.begin(), pos.end());
    keep_regs.push_back(layout.reg(name));
  }
  std::uint64_t keep_mask = 0;
  for (int pos : keep_pos) keep_mask |= std::uint64_t(1) << (total - 1 - pos);

  // locate the basis value of the complement
  std::uint64_t rest_base = 0;
  bool found = false;
  for (std::uint64_t idx = 0; idx < full.dim(); ++idx) {
    if (std::abs(full.amps()[idx]) <= 1e-12) continue;
    const std::uint64_t rest = idx & ~keep_mask;
    if (!found) {
      rest_base = rest;
      found = true;
    } else if (rest != rest_base) {
      throw std::logic_error("slice_state: complement is not in a basis state");
    }
  }
  if (!found) throw std::logic_error("slice_state: zero state");

  const std::size_t k = keep_pos.size();
  std::vector<cd> amps(std::size_t(1) << k, cd(0, 0));
  for (std::uint64_t sub = 0; sub < amps.size(); ++sub) {
    std::uint64_t idx = rest_base;
    for (std::size_t j = 0; j < k; ++j)
      if ((sub >> (k - 1 - j)) & 1u) idx |= std::uint64_t(1) << (total - 1 - keep_pos[j]);
    amps[sub] = full.amps()[idx];
  }
  PureState out(RegisterLayout(keep_regs), std::move(amps));
  return out;
}

std::vector<Register> with_owner(const std::vector<Register>& regs,
                                 const std::set<std::string>& names, Party owner) {
  std::vector<Register> out = regs;
  for (Register& r : out)
    if (names.count(r.name)) r.owner = owner;
  return out;
}

}  // namespace

QuantumReduction quantum_round_reduce(const QuantumSafeProtocol& p, const GameSpec& g,
                                      const JointDistribution& d) {
  p.validate();
  g.validate();
  d.validate();
  if (!p.is_coinless()) throw std::invalid_argument("round reduction starts from a coinless protocol");
  if (p.sig.rounds() < 1) throw std::invalid_argument("no round to remove");
  if (p.e_size != g.e_size || p.f_size != g.f_size)
    throw std::invalid_argument("protocol sets do not match the game");
  {
    const VerifyReport sec = verify_secure(p);
    if (!sec.pass)
      throw std::invalid_argument("round reduction requires a secure protocol: " + sec.detail);
  }

  const Party s = p.sig.starter;
  const int l1 = p.sig.lengths[0];
  const int c = p.sig.safe_qubits;
  const std::size_t t = p.sig.rounds();

  QuantumProtocolBody base = split_registers(p.body(), s);

  // Stage 1A: a secure copy of the starter's input feeds the protocol; the
  // original input registers become work space filled by a copy gate.
  const InputSpec& sin = (s == Party::alice) ? base.input_a : base.input_b;
  const std::vector<std::string> xregs = sin.regs;
  int xq = 0;
  for (const std::string& r : xregs) xq += base.layout.reg(r).qubits;

  std::vector<Register> regs = base.layout.registers();
  std::vector<std::string> cregs;
  for (int k = 0; k < xq; ++k) {
    cregs.push_back("sec" + std::to_string(k));
    regs.push_back({cregs.back(), 1, s});
  }

  // The kept register block A: the starter's registers minus the first
  // message and the secure copy, padded to at least l1 + c qubits.
  std::set<std::string> first_msg(base.round_list[0].transfer.begin(),
                                  base.round_list[0].transfer.end());
  std::vector<std::string> a_list;
  for (const Register& r : base.layout.registers())
    if (r.owner == s && !first_msg.count(r.name)) a_list.push_back(r.name);
  int a_qubits = 0;
  for (const std::string& name : a_list) a_qubits += base.layout.reg(name).qubits;
  std::vector<std::string> pads;
  while (a_qubits < l1 + c) {
    pads.push_back("pad" + std::to_string(pads.size()));
    regs.push_back({pads.back(), 1, s});
    a_list.push_back(pads.back());
    ++a_qubits;
  }

  QuantumProtocolBody ptilde;
  ptilde.layout = RegisterLayout(regs);  // may throw CapacityError
  ptilde.input_a = (s == Party::alice) ? InputSpec{cregs, sin.embed} : base.input_a;
  ptilde.input_b = (s == Party::bob) ? InputSpec{cregs, sin.embed} : base.input_b;
  ptilde.inits = base.inits;
  ptilde.round_list = base.round_list;
  {
    std::vector<std::string> copy_regs = cregs;
    copy_regs.insert(copy_regs.end(), xregs.begin(), xregs.end());
    Gate copy{xor_copy_gate(xq), copy_regs};
    ptilde.round_list[0].gates.insert(ptilde.round_list[0].gates.begin(), copy);
  }
  ptilde.final_gates = base.final_gates;
  ptilde.measurement = base.measurement;
  ptilde.safe_regs = base.safe_regs;

  // First-message states per input and for the superposed input.
  const std::size_t in_n = (s == Party::alice) ? p.e_size : p.f_size;
  const std::vector<Rational> marginal =
      (s == Party::alice) ? d.marginal_x() : d.marginal_y();
  std::vector<std::string> am_list = a_list;
  std::vector<std::string> m_list(base.round_list[0].transfer);
  am_list.insert(am_list.end(), m_list.begin(), m_list.end());

  auto starter_state = [&](const QuantumProtocolBody& body, std::uint64_t v,
                           const std::vector<StateInit>& extra) {
    const std::uint64_t x = (s == Party::alice) ? v : 0;
    const std::uint64_t y = (s == Party::bob) ? v : 0;
    return slice_state(run_rounds(body, initial_state(body, x, y, extra), 1), am_list);
  };

  std::vector<PureState> theta;
  theta.reserve(in_n);
  for (std::uint64_t v = 0; v < in_n; ++v) theta.push_back(starter_state(ptilde, v, {}));

  // The averaged-input state: the superposition goes straight into the old
  // input registers and the secure copy stays out of the picture.
  QuantumProtocolBody psi_body = ptilde;
  psi_body.round_list[0].gates.erase(psi_body.round_list[0].gates.begin());
  std::vector<cd> psi(std::uint64_t(1) << xq, cd(0, 0));
  for (std::uint64_t v = 0; v < in_n; ++v)
    psi[sin.embed[v]] = std::sqrt(marginal[v].to_double());
  PureState theta_psi = starter_state(psi_body, 0, {StateInit{xregs, psi}});

  const std::set<std::string> a_set(a_list.begin(), a_list.end());
  const std::set<std::string> m_set(m_list.begin(), m_list.end());

  // The average message and its canonical purification on (M, R).
  const DensityMatrix sigma = reduced_density(theta_psi, m_set);
  const PureState purified = purify(sigma, "purifier", other(s));

  // R: the trailing l1 + c qubits of A, handed to the receiver who prepares
  // the purification there.
  std::size_t r_from = a_list.size();
  int r_qubits = 0;
  while (r_from > 0 && r_qubits < l1 + c) {
    --r_from;
    r_qubits += ptilde.layout.reg(a_list[r_from]).qubits;
  }
  if (r_qubits != l1 + c) throw std::logic_error("purification cut misaligned");
  const std::vector<std::string> r_list(a_list.begin() + r_from, a_list.end());

  // Embedded target: |0..0> on G with the purification on (M, R), laid out
  // on the same (A, M) register order as the theta states.
  PureState embedded = [&] {
    const int mbits = l1 + c;
    std::vector<cd> amps(std::uint64_t(1) << (a_qubits + mbits), cd(0, 0));
    for (std::uint64_t r = 0; r < (std::uint64_t(1) << mbits); ++r)
      for (std::uint64_t m = 0; m < (std::uint64_t(1) << mbits); ++m)
        amps[(r << mbits) | m] = purified.amps()[(m << mbits) | r];
    return PureState(theta_psi.layout(), std::move(amps));
  }();

  std::vector<ComplexMatrix> vx(std::uint64_t(1) << xq,
                                ComplexMatrix::identity(std::uint64_t(1) << a_qubits));
  for (std::uint64_t v = 0; v < in_n; ++v) {
    const auto ux = max_overlap_local_unitary(theta[v], theta_psi, a_set);
    const PureState theta_prime = apply_gate(theta_psi, ux.u, a_list);
    const auto fix = max_overlap_local_unitary(theta_prime, embedded, a_set);
    if (fix.overlap < 1.0 - 1e-6)
      throw std::logic_error("purification alignment failed (overlap " +
                             std::to_string(fix.overlap) + ")");
    vx[sin.embed[v]] = fix.u;
  }
  Gate ctrl_v{controlled_unitary(xq, vx), [&] {
                std::vector<std::string> regs_v = cregs;
                regs_v.insert(regs_v.end(), a_list.begin(), a_list.end());
                return regs_v;
              }()};
  Gate prep{preparation_unitary(purified.amps()), [&] {
              std::vector<std::string> regs_p = m_list;
              regs_p.insert(regs_p.end(), r_list.begin(), r_list.end());
              return regs_p;
            }()};

  // Assemble the reduced protocol.
  QuantumProtocolBody qb;
  {
    std::set<std::string> to_receiver(m_list.begin(), m_list.end());
    to_receiver.insert(r_list.begin(), r_list.end());
    qb.layout = RegisterLayout(with_owner(ptilde.layout.registers(), to_receiver, other(s)));
  }
  qb.input_a = ptilde.input_a;
  qb.input_b = ptilde.input_b;
  for (const StateInit& init : ptilde.inits) {
    // Preparations on the starter's side (by the original ownership) are
    // absorbed into the repair unitary; the rest stay.
    if (ptilde.layout.reg(init.regs.front()).owner != s) qb.inits.push_back(init);
  }
  qb.measurement = ptilde.measurement;
  qb.safe_regs = r_list;

  if (t == 1) {
    qb.final_gates.push_back(prep);
    qb.final_gates.insert(qb.final_gates.end(), ptilde.final_gates.begin(),
                          ptilde.final_gates.end());
    qb.safe_regs.clear();
  } else {
    QuantumRound round1;
    round1.gates.push_back(prep);
    round1.gates.insert(round1.gates.end(), ptilde.round_list[1].gates.begin(),
                        ptilde.round_list[1].gates.end());
    round1.transfer = r_list;
    round1.transfer.insert(round1.transfer.end(), ptilde.round_list[1].transfer.begin(),
                           ptilde.round_list[1].transfer.end());
    qb.round_list.push_back(std::move(round1));
    if (t == 2) {
      qb.final_gates.push_back(ctrl_v);
      qb.final_gates.insert(qb.final_gates.end(), ptilde.final_gates.begin(),
                            ptilde.final_gates.end());
    } else {
      for (std::size_t r = 2; r < t; ++r) {
        QuantumRound round = ptilde.round_list[r];
        if (r == 2) round.gates.insert(round.gates.begin(), ctrl_v);
        qb.round_list.push_back(std::move(round));
      }
      qb.final_gates = ptilde.final_gates;
    }
  }

  QuantumSafeProtocol q;
  q.sig.starter = other(s);
  q.sig.safe_qubits = c + l1;
  q.sig.lengths.assign(p.sig.lengths.begin() + 1, p.sig.lengths.end());
  q.e_size = p.e_size;
  q.f_size = p.f_size;
  q.g_size = p.g_size;
  q.branches.emplace_back(Rational(1), std::move(qb));
  q.validate();

  const auto rep_p = eval_quantum(p, g, &d);
  const auto rep_q = eval_quantum(q, g, &d);
  const Encoding enc = first_message_encoding(p, g, d);
  const double info = encoding_mutual_information(enc);

  QuantumReduction out;
  out.protocol = std::move(q);
  EliminationCertificate& cert = out.certificate;
  cert.kind = "quantum_round_reduction";
  cert.input_signature = p.sig.str();
  cert.output_signature = out.protocol.sig.str();
  cert.eps_before = rep_p.eps_d;
  cert.eps_after = rep_q.eps_d;
  cert.information = info;
  cert.bound = cert.eps_before + std::pow(2.0 * kLn2 * std::max(0.0, info), 0.25);
  cert.slack = cert.bound - cert.eps_after;
  return out;
}

QuantumSafeProtocol restrict_to_piece(const QuantumSafeProtocol& p, const PowerGame& pg,
                                      std::size_t i, const std::vector<int>& prefix,
                                      const JointDistribution& d) {
  if (!p.is_coinless()) throw std::invalid_argument("fix the public coin before restricting");
  if (p.sig.starter != Party::alice)
    throw std::invalid_argument("composite-game protocols start with the string holder");
  if (i < 1 || i > pg.n || prefix.size() != i - 1)
    throw std::invalid_argument("bad piece index or prefix");
  const QuantumProtocolBody& b = p.body();
  if (b.input_a.regs.size() != pg.n)
    throw std::invalid_argument("expected one input register per string");

  const std::vector<Rational> px = d.marginal_x();
  QuantumProtocolBody nb = b;
  nb.input_a.regs = {b.input_a.regs[i - 1]};
  nb.input_a.embed.assign(pg.base.e_size, 0);
  const int sq = b.layout.reg(b.input_a.regs[i - 1]).qubits;
  for (std::size_t x = 0; x < pg.base.e_size; ++x) nb.input_a.embed[x] = x;
  if ((std::uint64_t(1) << sq) < pg.base.e_size)
    throw std::invalid_argument("string register too small for the base game");

  for (std::size_t j = 0; j < pg.n; ++j) {
    if (j == i - 1) continue;
    const std::string& reg = b.input_a.regs[j];
    const std::uint64_t dim = std::uint64_t(1) << b.layout.reg(reg).qubits;
    std::vector<cd> amps(dim, cd(0, 0));
    if (j < i - 1) {
      amps[prefix[j]] = 1.0;  // Bob's copy, fixed
    } else {
      for (std::size_t x = 0; x < pg.base.e_size; ++x)
        amps[x] = std::sqrt(px[x].to_double());
    }
    nb.inits.push_back({{reg}, std::move(amps)});
  }

  nb.input_b.embed.assign(pg.base.f_size, 0);
  for (std::size_t y = 0; y < pg.base.f_size; ++y)
    nb.input_b.embed[y] = pg.encode_y(i, static_cast<int>(y), prefix);

  QuantumSafeProtocol out;
  out.sig = p.sig;
  out.e_size = pg.base.e_size;
  out.f_size = pg.base.f_size;
  out.g_size = pg.base.g_size;
  out.branches.emplace_back(Rational(1), std::move(nb));
  out.validate();
  return out;
}

QuantumElimination quantum_round_eliminate(const QuantumSafeProtocol& p, const GameSpec& g,
                                           std::size_t n, const JointDistribution* base_d) {
  g.validate();
  const PowerGame pg = game_power(g, n);
  if (p.e_size != pg.game.e_size || p.f_size != pg.game.f_size || p.g_size != pg.game.g_size)
    throw std::invalid_argument("protocol does not have the composite-game shape");
  if (p.sig.rounds() < 1) throw std::invalid_argument("no round to remove");
  const JointDistribution d = base_d ? *base_d : JointDistribution::uniform(g.e_size, g.f_size);
  const JointDistribution dstar = build_product_distribution(d, n, pg);

  const auto rep_in = eval_quantum(p, pg.game);
  const QuantumSafeProtocol pstar =
      p.is_coinless() ? p : fix_public_coin(p, pg.game, dstar).protocol;
  const auto rep_star = eval_quantum(pstar, pg.game, &dstar);

  const std::vector<Rational> px = d.marginal_x();
  struct Piece {
    Rational weight;
    QuantumReduction red;
  };
  std::vector<Piece> pieces;
  const Rational inv_n(1, static_cast<std::int64_t>(n));
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t prefix_count = static_cast<std::size_t>(std::pow(g.e_size, i - 1));
    for (std::size_t pv = 0; pv < prefix_count; ++pv) {
      std::vector<int> prefix(i - 1);
      std::size_t v = pv;
      for (std::size_t k = i - 1; k-- > 0;) {
        prefix[k] = static_cast<int>(v % g.e_size);
        v /= g.e_size;
      }
      Rational w = inv_n;
      for (int xj : prefix) w *= px[xj];
      if (w.is_zero()) continue;
      QuantumSafeProtocol piece = restrict_to_piece(pstar, pg, i, prefix, d);
      pieces.push_back({w, quantum_round_reduce(piece, g, d)});
    }
  }

  QuantumSafeProtocol out;
  out.sig = pieces.front().red.protocol.sig;
  out.e_size = g.e_size;
  out.f_size = g.f_size;
  out.g_size = g.g_size;
  for (const Piece& piece : pieces)
    out.branches.emplace_back(piece.weight, piece.red.protocol.branches.front().second);
  out.validate();

  const auto rep_out = eval_quantum(out, g, &d);
  const int l1 = p.sig.lengths[0];
  const double term = std::pow(4.0 * l1 * kLn2 / static_cast<double>(n), 0.25);

  QuantumElimination result;
  result.protocol = out;
  EliminationLedger& led = result.ledger;
  EliminationCertificate& cert = led.certificate;
  cert.kind = "quantum_round_elimination";
  cert.input_signature = p.sig.str();
  cert.output_signature = out.sig.str();
  cert.eps_before = rep_in.eps_worst;
  cert.eps_after = rep_out.eps_worst;
  cert.bound = cert.eps_before + term;
  cert.slack = cert.bound - cert.eps_after;
  led.eps_dstar_in = rep_star.eps_d;
  led.eps_d_out = rep_out.eps_d;
  led.bound_d = led.eps_dstar_in + term;
  led.slack_d = led.bound_d - led.eps_d_out;
  led.pieces = pieces.size();
  led.info_budget = 2.0 * l1 / static_cast<double>(n);
  double measured = 0;
  for (const Piece& piece : pieces)
    measured += piece.weight.to_double() * piece.red.certificate.information;
  led.info_measured = measured;

  {
    const std::vector<Rational> mx = dstar.marginal_x();
    std::vector<std::size_t> kept;
    std::vector<Rational> priors;
    for (std::size_t v = 0; v < mx.size(); ++v)
      if (!mx[v].is_zero()) {
        kept.push_back(v);
        priors.push_back(mx[v]);
      }
    // first-message densities for every kept tuple value
    const QuantumProtocolBody& b = pstar.branches.front().second;
    std::vector<DensityMatrix> msgs;
    for (std::size_t v : kept) {
      const PureState at_send = run_rounds(b, initial_state(b, v, 0), 1);
      const std::set<std::string> msg(b.round_list[0].transfer.begin(),
                                      b.round_list[0].transfer.end());
      msgs.push_back(reduced_density(at_send, msg));
    }
    const Encoding enc = Encoding::quantum(std::move(priors), std::move(msgs));
    const auto checks = power_info_checks(enc, power_labels(pg, kept), n);
    led.additivity_residual = checks.additivity_residual;
    led.averaging_residual = checks.averaging_residual;
    cert.information = checks.total_information;
  }
  return result;
}

}  // namespace qclab
