#include "qclab/info.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qclab/linalg.hpp"

namespace qclab {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321;

double entropy_of_spectrum(const std::vector<double>& spectrum) {
  double h = 0;
  for (double l : spectrum) {
    if (l <= 0) continue;  // clamps the numerical PSD noise at zero
    h -= l * std::log2(l);
  }
  return h;
}

double entropy_of_hermitian(const ComplexMatrix& m) {
  return entropy_of_spectrum(hermitian_eig(m).values);
}

void validate_priors(const std::vector<Rational>& priors) {
  if (priors.empty()) throw std::invalid_argument("encoding with no values");
  Rational sum(0);
  for (const Rational& p : priors) {
    if (p <= Rational(0)) throw std::invalid_argument("encoding priors must be positive");
    sum += p;
  }
  if (sum != Rational(1)) throw std::invalid_argument("encoding priors must sum to 1");
}

void validate_distribution(const std::vector<Rational>& p) {
  Rational sum(0);
  for (const Rational& v : p) {
    if (v.is_negative()) throw std::invalid_argument("negative probability");
    sum += v;
  }
  if (sum != Rational(1)) throw std::invalid_argument("distribution must sum to 1");
}

}  // namespace

Encoding Encoding::classical(std::vector<Rational> priors,
                             std::vector<std::vector<Rational>> message_dists) {
  validate_priors(priors);
  if (message_dists.size() != priors.size())
    throw std::invalid_argument("encoding needs one message distribution per value");
  const std::size_t space = message_dists.front().size();
  for (const auto& d : message_dists) {
    if (d.size() != space)
      throw std::invalid_argument("message distributions must share one sample space");
    validate_distribution(d);
  }
  Encoding e;
  e.priors_ = std::move(priors);
  e.classical_ = std::move(message_dists);
  return e;
}

Encoding Encoding::quantum(std::vector<Rational> priors, std::vector<DensityMatrix> messages) {
  validate_priors(priors);
  if (messages.size() != priors.size())
    throw std::invalid_argument("encoding needs one message state per value");
  for (const DensityMatrix& m : messages)
    if (!(m.layout() == messages.front().layout()))
      throw std::invalid_argument("message states must share one layout");
  Encoding e;
  e.priors_ = std::move(priors);
  e.quantum_ = std::move(messages);
  return e;
}

std::vector<Rational> Encoding::average_classical() const {
  if (!is_classical()) throw std::invalid_argument("not a classical encoding");
  std::vector<Rational> avg(classical_.front().size(), Rational(0));
  for (std::size_t x = 0; x < priors_.size(); ++x)
    for (std::size_t m = 0; m < avg.size(); ++m) avg[m] += priors_[x] * classical_[x][m];
  return avg;
}

DensityMatrix Encoding::average_quantum() const {
  if (is_classical()) throw std::invalid_argument("not a quantum encoding");
  ComplexMatrix avg(quantum_.front().dim(), quantum_.front().dim());
  for (std::size_t x = 0; x < priors_.size(); ++x) {
    const double w = priors_[x].to_double();
    const ComplexMatrix& m = quantum_[x].matrix();
    for (std::size_t i = 0; i < avg.rows(); ++i)
      for (std::size_t j = 0; j < avg.cols(); ++j) avg(i, j) += w * m(i, j);
  }
  return DensityMatrix(quantum_.front().layout(), std::move(avg));
}

double shannon_entropy(const std::vector<Rational>& p) {
  Rational sum(0);
  for (const Rational& v : p) {
    if (v.is_negative()) throw std::invalid_argument("negative probability");
    sum += v;
  }
  if (sum != Rational(1)) throw std::invalid_argument("distribution must sum to 1");
  std::vector<double> d;
  d.reserve(p.size());
  for (const Rational& v : p) d.push_back(v.to_double());
  return entropy_of_spectrum(d);
}

double shannon_entropy_real(const std::vector<double>& p) {
  double sum = 0;
  for (double v : p) {
    if (v < -1e-12) throw std::invalid_argument("negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("distribution must sum to 1");
  return entropy_of_spectrum(p);
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of_hermitian(rho.matrix()); }

double mutual_information(const DensityMatrix& rho, const std::set<std::string>& cut) {
  if (cut.empty()) throw std::invalid_argument("mutual_information: empty cut");
  std::set<std::string> rest;
  for (const Register& r : rho.layout().registers())
    if (!cut.count(r.name)) rest.insert(r.name);
  if (rest.empty()) throw std::invalid_argument("mutual_information: cut must be proper");
  const double sa = von_neumann_entropy(partial_trace(rho, cut));
  const double sb = von_neumann_entropy(partial_trace(rho, rest));
  const double sab = von_neumann_entropy(rho);
  return sa + sb - sab;
}

double encoding_mutual_information(const Encoding& e) {
  if (e.is_classical()) {
    double avg_h = shannon_entropy(e.average_classical());
    double cond = 0;
    for (std::size_t x = 0; x < e.values(); ++x)
      cond += e.priors()[x].to_double() * shannon_entropy(e.classical_messages()[x]);
    return avg_h - cond;
  }
  double avg_s = von_neumann_entropy(e.average_quantum());
  double cond = 0;
  for (std::size_t x = 0; x < e.values(); ++x)
    cond += e.priors()[x].to_double() * von_neumann_entropy(e.quantum_messages()[x]);
  return avg_s - cond;
}

Rational total_variation(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: sample space mismatch");
  Rational sum(0);
  for (std::size_t i = 0; i < p.size(); ++i) sum += (p[i] - q[i]).abs();
  return sum;
}

EncodingGap average_encoding_gap(const Encoding& e) {
  EncodingGap g{};
  if (e.is_classical()) {
    const auto avg = e.average_classical();
    Rational lhs(0);
    for (std::size_t x = 0; x < e.values(); ++x)
      lhs += e.priors()[x] * total_variation(e.classical_messages()[x], avg);
    g.lhs = lhs.to_double();
  } else {
    const DensityMatrix avg = e.average_quantum();
    double lhs = 0;
    for (std::size_t x = 0; x < e.values(); ++x)
      lhs += e.priors()[x].to_double() *
             trace_norm(e.quantum_messages()[x].matrix() - avg.matrix());
    g.lhs = lhs;
  }
  const double info = encoding_mutual_information(e);
  g.rhs = std::sqrt(2.0 * kLn2 * std::max(0.0, info));
  g.slack = g.rhs - g.lhs;
  return g;
}

MeasurementDistance measurement_distance_check(const DensityMatrix& rho1,
                                               const DensityMatrix& rho2,
                                               const std::vector<ComplexMatrix>& povm) {
  if (!(rho1.layout() == rho2.layout()))
    throw std::invalid_argument("measurement_distance_check: layout mismatch");
  if (povm.empty()) throw std::invalid_argument("empty POVM");
  ComplexMatrix sum(rho1.dim(), rho1.dim());
  for (const ComplexMatrix& el : povm) {
    if (el.rows() != rho1.dim() || el.cols() != rho1.dim())
      throw std::invalid_argument("POVM element dimension mismatch");
    if (!el.is_hermitian(1e-8)) throw std::invalid_argument("POVM element not Hermitian");
    const auto eig = hermitian_eig(el);
    if (!eig.values.empty() && eig.values.back() < -1e-8)
      throw std::invalid_argument("POVM element not PSD");
    sum = sum + el;
  }
  if ((sum - ComplexMatrix::identity(rho1.dim())).max_abs() > 1e-8)
    throw std::invalid_argument("POVM does not sum to identity");

  MeasurementDistance out{};
  for (const ComplexMatrix& el : povm) {
    const double p1 = (el * rho1.matrix()).trace().real();
    const double p2 = (el * rho2.matrix()).trace().real();
    out.l1 += std::abs(p1 - p2);
  }
  out.tn = trace_norm(rho1.matrix() - rho2.matrix());
  return out;
}

IdentityReport check_chain_identity(const DensityMatrix& rho, const std::set<std::string>& a,
                                    const std::set<std::string>& b,
                                    const std::set<std::string>& c) {
  auto join = [](const std::set<std::string>& x, const std::set<std::string>& y) {
    std::set<std::string> u = x;
    u.insert(y.begin(), y.end());
    return u;
  };
  std::set<std::string> all = join(join(a, b), c);
  if (all.size() != a.size() + b.size() + c.size() || all.size() != rho.layout().size())
    throw std::invalid_argument("chain identity needs a partition of the layout");
  const double i_a_bc = mutual_information(rho, a);
  const double i_b_c = mutual_information(partial_trace(rho, join(b, c)), b);
  const double i_a_b = mutual_information(partial_trace(rho, join(a, b)), a);
  // I(AB:C) over the cut AB
  const double i_ab_c = mutual_information(rho, join(a, b));
  IdentityReport r;
  r.identity = "chain";
  r.lhs = i_a_bc;
  r.rhs = i_a_b + i_ab_c - i_b_c;
  r.residual = std::abs(r.lhs - r.rhs);
  r.is_equality = true;
  r.pass = r.residual <= 1e-7;
  return r;
}

IdentityReport check_safe_information_bound(const Encoding& e,
                                            const std::set<std::string>& main_regs) {
  if (e.is_classical())
    throw std::invalid_argument("use the classical variant for classical encodings");
  const RegisterLayout& layout = e.quantum_messages().front().layout();
  std::set<std::string> overhead;
  int main_qubits = 0;
  for (const Register& r : layout.registers()) {
    if (main_regs.count(r.name))
      main_qubits += r.qubits;
    else
      overhead.insert(r.name);
  }
  if (main_qubits == 0) throw std::invalid_argument("empty main part");
  if (!overhead.empty()) {
    const DensityMatrix ref = partial_trace(e.quantum_messages().front(), overhead);
    for (const DensityMatrix& m : e.quantum_messages()) {
      const DensityMatrix red = partial_trace(m, overhead);
      if ((red.matrix() - ref.matrix()).max_abs() > 1e-8)
        throw std::invalid_argument("overhead part depends on the encoded value");
    }
  }
  IdentityReport r;
  r.identity = "safe_bound";
  r.lhs = encoding_mutual_information(e);
  r.rhs = 2.0 * main_qubits;
  r.residual = r.rhs - r.lhs;
  r.is_equality = false;
  r.pass = r.residual >= -1e-7;
  return r;
}

IdentityReport check_safe_information_bound_classical(const Encoding& e, std::size_t size1,
                                                      std::size_t size2) {
  if (!e.is_classical()) throw std::invalid_argument("classical encoding required");
  if (size1 * size2 != e.classical_messages().front().size())
    throw std::invalid_argument("split does not match the sample space");
  // marginal on the second part must be value-independent (exact)
  std::vector<Rational> ref;
  for (std::size_t x = 0; x < e.values(); ++x) {
    std::vector<Rational> marg(size2, Rational(0));
    for (std::size_t m1 = 0; m1 < size1; ++m1)
      for (std::size_t m2 = 0; m2 < size2; ++m2)
        marg[m2] += e.classical_messages()[x][m1 * size2 + m2];
    if (x == 0)
      ref = marg;
    else if (marg != ref)
      throw std::invalid_argument("overhead part depends on the encoded value");
  }
  IdentityReport r;
  r.identity = "safe_bound_classical";
  r.lhs = encoding_mutual_information(e);
  r.rhs = std::log2(static_cast<double>(size1));
  r.residual = r.rhs - r.lhs;
  r.is_equality = false;
  r.pass = r.residual >= -1e-7;
  return r;
}

double cq_entropy(const Encoding& e) {
  double h = shannon_entropy(e.priors());
  for (std::size_t x = 0; x < e.values(); ++x) {
    const double w = e.priors()[x].to_double();
    if (e.is_classical())
      h += w * shannon_entropy(e.classical_messages()[x]);
    else
      h += w * von_neumann_entropy(e.quantum_messages()[x]);
  }
  return h;
}

namespace {

// Entropy of (X_S, M) for an encoding with component labels: groups values
// by the selected components and averages the messages inside each group.
double grouped_cq_entropy(const Encoding& e, const std::vector<std::vector<int>>& labels,
                          const std::vector<int>& components) {
  std::map<std::vector<int>, std::vector<std::size_t>> groups;
  for (std::size_t x = 0; x < e.values(); ++x) {
    std::vector<int> key;
    for (int c : components) key.push_back(labels[x][c]);
    groups[key].push_back(x);
  }
  std::vector<Rational> group_priors;
  double cond = 0;
  for (const auto& [key, members] : groups) {
    Rational pg(0);
    for (std::size_t x : members) pg += e.priors()[x];
    group_priors.push_back(pg);
    const double w = pg.to_double();
    if (e.is_classical()) {
      std::vector<Rational> avg(e.classical_messages().front().size(), Rational(0));
      for (std::size_t x : members)
        for (std::size_t m = 0; m < avg.size(); ++m)
          avg[m] += (e.priors()[x] / pg) * e.classical_messages()[x][m];
      cond += w * shannon_entropy(avg);
    } else {
      const std::size_t d = e.quantum_messages().front().dim();
      ComplexMatrix avg(d, d);
      for (std::size_t x : members) {
        const double wx = (e.priors()[x] / pg).to_double();
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) avg(i, j) += wx * e.quantum_messages()[x].matrix()(i, j);
      }
      cond += w * entropy_of_hermitian(avg);
    }
  }
  return shannon_entropy(group_priors) + cond;
}

// Entropy of the classical marginal on selected components.
double label_entropy(const Encoding& e, const std::vector<std::vector<int>>& labels,
                     const std::vector<int>& components) {
  std::map<std::vector<int>, Rational> groups;
  for (std::size_t x = 0; x < e.values(); ++x) {
    std::vector<int> key;
    for (int c : components) key.push_back(labels[x][c]);
    groups.try_emplace(key, Rational(0)).first->second += e.priors()[x];
  }
  std::vector<Rational> p;
  for (const auto& [k, v] : groups) p.push_back(v);
  return shannon_entropy(p);
}

}  // namespace

double grouped_mutual_information(const Encoding& e,
                                  const std::vector<std::vector<int>>& value_labels,
                                  const std::vector<int>& side_components) {
  // I(X_S : M X_T) with T = all components not in S.
  const std::size_t n = value_labels.front().size();
  std::vector<int> rest;
  for (std::size_t c = 0; c < n; ++c)
    if (std::find(side_components.begin(), side_components.end(), static_cast<int>(c)) ==
        side_components.end())
      rest.push_back(static_cast<int>(c));
  std::vector<int> all(side_components);
  all.insert(all.end(), rest.begin(), rest.end());
  const double s_side = label_entropy(e, value_labels, side_components);
  const double s_mrest = grouped_cq_entropy(e, value_labels, rest);
  const double s_all = grouped_cq_entropy(e, value_labels, all);
  return s_side + s_mrest - s_all;
}

double conditional_information_term(const Encoding& e,
                                    const std::vector<std::vector<int>>& value_labels,
                                    std::size_t component) {
  std::vector<int> side{static_cast<int>(component)};
  std::vector<int> prefix;
  for (std::size_t j = 0; j < component; ++j) prefix.push_back(static_cast<int>(j));
  std::vector<int> both = prefix;
  both.push_back(static_cast<int>(component));
  return label_entropy(e, value_labels, side) + grouped_cq_entropy(e, value_labels, prefix) -
         grouped_cq_entropy(e, value_labels, both);
}

IdentityReport check_additivity(const Encoding& e,
                                const std::vector<std::vector<int>>& value_labels) {
  if (value_labels.size() != e.values())
    throw std::invalid_argument("one component label per encoded value required");
  const std::size_t n = value_labels.front().size();
  for (const auto& l : value_labels)
    if (l.size() != n) throw std::invalid_argument("inconsistent component labels");

  // Precondition: components independent (exact factorisation of the label law).
  std::vector<std::map<int, Rational>> marginals(n);
  for (std::size_t x = 0; x < e.values(); ++x)
    for (std::size_t c = 0; c < n; ++c) {
      marginals[c].try_emplace(value_labels[x][c], Rational(0)).first->second += e.priors()[x];
    }
  for (std::size_t x = 0; x < e.values(); ++x) {
    Rational prod(1);
    for (std::size_t c = 0; c < n; ++c) prod *= marginals[c].at(value_labels[x][c]);
    if (prod != e.priors()[x])
      throw std::invalid_argument("components are not independent");
  }

  IdentityReport r;
  r.identity = "additivity";
  r.lhs = encoding_mutual_information(e);
  r.rhs = 0;
  for (std::size_t i = 0; i < n; ++i) r.rhs += conditional_information_term(e, value_labels, i);
  r.residual = std::abs(r.lhs - r.rhs);
  r.is_equality = true;
  r.pass = r.residual <= 1e-7;
  return r;
}

DensityMatrix encoding_joint_density(const Encoding& e, const std::string& label_reg,
                                     const std::string& msg_reg) {
  int label_qubits = 1;
  while ((std::size_t(1) << label_qubits) < e.values()) ++label_qubits;

  RegisterLayout layout;
  std::size_t msg_dim;
  if (e.is_classical()) {
    msg_dim = e.classical_messages().front().size();
    int msg_qubits = 1;
    while ((std::size_t(1) << msg_qubits) < msg_dim) ++msg_qubits;
    layout = RegisterLayout(
        {{label_reg, label_qubits, Party::alice}, {msg_reg, msg_qubits, Party::bob}});
    msg_dim = std::size_t(1) << msg_qubits;
  } else {
    std::vector<Register> regs{{label_reg, label_qubits, Party::alice}};
    for (const Register& r : e.quantum_messages().front().layout().registers()) regs.push_back(r);
    layout = RegisterLayout(std::move(regs));
    msg_dim = e.quantum_messages().front().dim();
  }

  ComplexMatrix joint(layout.dim(), layout.dim());
  for (std::size_t x = 0; x < e.values(); ++x) {
    const double w = e.priors()[x].to_double();
    const std::size_t base = x * msg_dim;
    if (e.is_classical()) {
      const auto& dist = e.classical_messages()[x];
      for (std::size_t m = 0; m < dist.size(); ++m)
        joint(base + m, base + m) += w * dist[m].to_double();
    } else {
      const ComplexMatrix& mm = e.quantum_messages()[x].matrix();
      for (std::size_t i = 0; i < msg_dim; ++i)
        for (std::size_t j = 0; j < msg_dim; ++j) joint(base + i, base + j) += w * mm(i, j);
    }
  }
  return DensityMatrix(std::move(layout), std::move(joint));
}

IdentityReport check_averaging(const Encoding& e,
                               const std::vector<std::pair<int, int>>& value_labels) {
  if (value_labels.size() != e.values())
    throw std::invalid_argument("one (x, y) label per encoded value required");
  std::vector<std::vector<int>> labels;
  labels.reserve(value_labels.size());
  for (const auto& [x, y] : value_labels) labels.push_back({x, y});

  // lhs: I(Y : M X)
  const double lhs = grouped_mutual_information(e, labels, {1});

  // rhs: I(X:Y) + E_X[I((Y:M)|X=x)]
  const double i_xy =
      label_entropy(e, labels, {0}) + label_entropy(e, labels, {1}) - label_entropy(e, labels, {0, 1});
  std::map<int, std::vector<std::size_t>> by_x;
  for (std::size_t v = 0; v < e.values(); ++v) by_x[value_labels[v].first].push_back(v);
  double expect = 0;
  for (const auto& [x, members] : by_x) {
    Rational px(0);
    for (std::size_t v : members) px += e.priors()[v];
    std::vector<Rational> cond_priors;
    for (std::size_t v : members) cond_priors.push_back(e.priors()[v] / px);
    double i_cond;
    if (e.is_classical()) {
      std::vector<std::vector<Rational>> msgs;
      for (std::size_t v : members) msgs.push_back(e.classical_messages()[v]);
      i_cond = encoding_mutual_information(Encoding::classical(cond_priors, msgs));
    } else {
      std::vector<DensityMatrix> msgs;
      for (std::size_t v : members) msgs.push_back(e.quantum_messages()[v]);
      i_cond = encoding_mutual_information(Encoding::quantum(cond_priors, msgs));
    }
    expect += px.to_double() * i_cond;
  }

  IdentityReport r;
  r.identity = "averaging";
  r.lhs = lhs;
  r.rhs = i_xy + expect;
  r.residual = std::abs(r.lhs - r.rhs);
  r.is_equality = true;
  r.pass = r.residual <= 1e-7;
  return r;
}

}  // namespace qclab
