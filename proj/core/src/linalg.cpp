#include "qclab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qclab {

namespace {

struct Rotation {
  double c;
  cd s_col;   // applied on columns: new_p = c*p - conj(s_col)*... see apply
  cd phase;   // e^{-i arg}
  double s;
};

// 2x2 unitary G with G† [[app, apq],[apq*, aqq]] G diagonal.
// G_pp = c, G_pq = s, G_qp = -s e^{-iφ}, G_qq = c e^{-iφ}, φ = arg(apq).
Rotation make_rotation(double app, double aqq, cd apq) {
  const double norm = std::abs(apq);
  const cd phase = apq / norm;  // e^{iφ}
  const double tau = (aqq - app) / (2.0 * norm);
  const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  Rotation r;
  r.c = c;
  r.s = t * c;
  r.phase = std::conj(phase);  // e^{-iφ}
  r.s_col = r.s * r.phase;     // -s e^{-iφ} lives at G_qp
  return r;
}

// cols p,q of m <- m * G
void apply_right(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const cd mp = m(i, p), mq = m(i, q);
    m(i, p) = r.c * mp - r.s_col * mq;
    m(i, q) = r.s * mp + r.c * r.phase * mq;
  }
}

// rows p,q of m <- G† * m
void apply_left_adjoint(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const cd conj_phase = std::conj(r.phase);  // e^{iφ}
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const cd mp = m(p, j), mq = m(q, j);
    m(p, j) = r.c * mp - r.s * conj_phase * mq;
    m(q, j) = r.s * mp + r.c * conj_phase * mq;
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

std::vector<std::size_t> descending_order(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

}  // namespace

EigResult hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermitian_eig: non-square input");
  if (!m.all_finite()) throw std::invalid_argument("hermitian_eig: non-finite entries");
  const double scale = std::max(1.0, m.max_abs());
  if (!m.is_hermitian(1e-9 * scale)) throw std::invalid_argument("hermitian_eig: input not Hermitian");

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  // Symmetrise away the sub-tolerance asymmetry so Jacobi sees an exactly
  // Hermitian matrix.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = cd(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cd v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double tol = 1e-14 * std::max(1.0, a.frobenius_norm());
  for (int sweep = 0; sweep < 80; ++sweep) {
    if (off_diagonal_norm(a) <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cd apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const Rotation r = make_rotation(a(p, p).real(), a(q, q).real(), apq);
        apply_right(a, p, q, r);
        apply_left_adjoint(a, p, q, r);
        apply_right(v, p, q, r);
      }
    }
  }

  std::vector<double> evals(n);
  for (std::size_t i = 0; i < n; ++i) evals[i] = a(i, i).real();
  const auto order = descending_order(evals);
  EigResult res;
  res.values.resize(n);
  res.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.values[k] = evals[order[k]];
    for (std::size_t i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
  }
  return res;
}

SvdResult svd(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("svd: non-square input");
  const std::size_t n = a.rows();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.max_abs());

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double hpp = 0, hqq = 0;
        cd hpq = 0;
        for (std::size_t i = 0; i < n; ++i) {
          hpp += std::norm(w(i, p));
          hqq += std::norm(w(i, q));
          hpq += std::conj(w(i, p)) * w(i, q);
        }
        if (std::abs(hpq) <= 1e-15 * scale * scale + 1e-14 * std::sqrt(hpp * hqq)) continue;
        converged = false;
        const Rotation r = make_rotation(hpp, hqq, hpq);
        apply_right(w, p, q, r);
        apply_right(v, p, q, r);
      }
    }
    if (converged) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(w(i, j));
    sigma[j] = std::sqrt(s);
  }
  const auto order = descending_order(sigma);

  SvdResult res;
  res.singular_values.resize(n);
  res.u = ComplexMatrix(n, n);
  res.v = ComplexMatrix(n, n);
  const double zero_tol = (sigma.empty() ? 0.0 : sigma[order[0]]) * 1e-13;
  std::vector<std::vector<cd>> ucols;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    res.singular_values[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) res.v(i, k) = v(i, j);
    if (sigma[j] > zero_tol && sigma[j] > 0) {
      std::vector<cd> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = w(i, j) / sigma[j];
      ucols.push_back(std::move(col));
    } else {
      res.singular_values[k] = 0.0;
    }
  }
  // Complete the orthonormal set for zero singular values.
  for (std::size_t e = 0; e < n && ucols.size() < n; ++e) {
    std::vector<cd> cand(n, cd(0, 0));
    cand[e] = 1.0;
    for (const auto& u : ucols) {
      cd dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(u[i]) * cand[i];
      for (std::size_t i = 0; i < n; ++i) cand[i] -= dot * u[i];
    }
    double nrm = 0;
    for (const cd& c : cand) nrm += std::norm(c);
    nrm = std::sqrt(nrm);
    if (nrm > 1e-6) {
      for (cd& c : cand) c /= nrm;
      ucols.push_back(std::move(cand));
    }
  }
  if (ucols.size() != n) throw std::runtime_error("svd: failed to complete left basis");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) res.u(i, k) = ucols[k][i];
  return res;
}

double trace_norm(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("trace_norm: non-square input");
  const double scale = std::max(1.0, a.max_abs());
  if (a.is_hermitian(1e-11 * scale)) {
    ComplexMatrix h = a;
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j)
        h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    const EigResult e = hermitian_eig(h);
    double s = 0;
    for (double l : e.values) s += std::abs(l);
    return s;
  }
  const SvdResult s = svd(a);
  double t = 0;
  for (double x : s.singular_values) t += x;
  return t;
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& h) {
  const EigResult e = hermitian_eig(h);
  const std::size_t n = h.rows();
  ComplexMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double l = e.values[k];
    if (l < -1e-7) throw std::invalid_argument("sqrtm_psd: matrix not PSD");
    const double sl = std::sqrt(std::max(0.0, l));
    if (sl == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        r(i, j) += sl * e.vectors(i, k) * std::conj(e.vectors(j, k));
  }
  return r;
}

double fidelity_via_sqrtm(const ComplexMatrix& r1, const ComplexMatrix& r2) {
  const ComplexMatrix s1 = sqrtm_psd(r1);
  ComplexMatrix m = s1 * r2 * s1;
  // Hermitise against roundoff before the final eigendecomposition.
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      const cd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  const EigResult e = hermitian_eig(m);
  double f = 0;
  for (double l : e.values) f += std::sqrt(std::max(0.0, l));
  return f;
}

ComplexMatrix preparation_unitary(const std::vector<cd>& target) {
  const std::size_t n = target.size();
  double nrm = 0;
  for (const cd& c : target) nrm += std::norm(c);
  if (std::abs(nrm - 1.0) > 1e-9) throw std::invalid_argument("preparation_unitary: target not normalised");
  std::vector<std::vector<cd>> cols;
  cols.push_back(target);
  for (std::size_t e = 0; e < n && cols.size() < n; ++e) {
    std::vector<cd> cand(n, cd(0, 0));
    cand[e] = 1.0;
    for (const auto& u : cols) {
      cd dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(u[i]) * cand[i];
      for (std::size_t i = 0; i < n; ++i) cand[i] -= dot * u[i];
    }
    double cn = 0;
    for (const cd& c : cand) cn += std::norm(c);
    cn = std::sqrt(cn);
    if (cn > 1e-6) {
      for (cd& c : cand) c /= cn;
      cols.push_back(std::move(cand));
    }
  }
  if (cols.size() != n) throw std::runtime_error("preparation_unitary: completion failed");
  ComplexMatrix u(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) u(i, k) = cols[k][i];
  return u;
}

}  // namespace qclab
