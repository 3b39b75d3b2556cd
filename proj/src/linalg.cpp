#include "qcfa/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <set>
#include <stdexcept>

namespace qcfa {

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("mat_mul: inner dimensions disagree");
  }
  return a * b;
}

bool all_finite(const CMatrix& m) { return m.allFinite(); }

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) {
    throw std::invalid_argument("is_unitary: matrix is not square");
  }
  if (!u.allFinite()) return false;
  const CMatrix gram = u.adjoint() * u;
  return max_abs(gram - CMatrix::Identity(u.rows(), u.cols())) <= tol;
}

bool is_projector(const CMatrix& p, double tol) {
  if (p.rows() != p.cols()) {
    throw std::invalid_argument("is_projector: matrix is not square");
  }
  if (!p.allFinite()) return false;
  return max_abs(p * p - p) <= tol && max_abs(p.adjoint() - p) <= tol;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() - m) <= tol;
}

bool is_normalized(const CVector& v, double tol) {
  return v.allFinite() && std::abs(v.squaredNorm() - 1.0) <= tol;
}

double trace_real(const CMatrix& m) { return m.trace().real(); }

bool is_valid_density(const CMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  const double mass = trace_real(m);
  return mass >= -tol && mass <= 1.0 + tol;
}

Eigen::Index MeasurementFamily::dim() const {
  return outcomes.empty() ? 0 : outcomes.front().projector.rows();
}

const CMatrix* MeasurementFamily::find(const std::string& label) const {
  for (const auto& o : outcomes) {
    if (o.label == label) return &o.projector;
  }
  return nullptr;
}

MeasurementFamily trivial_measurement(Eigen::Index dim) {
  MeasurementFamily m;
  m.outcomes.push_back({kTrivialOutcomeLabel, CMatrix::Identity(dim, dim)});
  return m;
}

bool is_trivial_measurement(const MeasurementFamily& m) {
  return m.outcomes.size() == 1 &&
         m.outcomes.front().projector ==
             CMatrix::Identity(m.dim(), m.dim());
}

bool is_valid_measurement(const MeasurementFamily& m, double tol) {
  if (m.outcomes.empty()) return false;
  const Eigen::Index n = m.dim();
  std::set<std::string> labels;
  for (const auto& o : m.outcomes) {
    if (o.projector.rows() != n || o.projector.cols() != n) {
      throw std::invalid_argument(
          "is_valid_measurement: projector dimension mismatch");
    }
    if (!labels.insert(o.label).second) return false;
    if (!is_projector(o.projector, tol)) return false;
  }
  CMatrix sum = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < m.outcomes.size(); ++i) {
    sum += m.outcomes[i].projector;
    for (std::size_t j = i + 1; j < m.outcomes.size(); ++j) {
      if (max_abs(m.outcomes[i].projector * m.outcomes[j].projector) > tol) {
        return false;
      }
    }
  }
  return max_abs(sum - CMatrix::Identity(n, n)) <= tol;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

CMatrix tensor_power(const CMatrix& a, int t) {
  if (t < 1) throw std::invalid_argument("tensor_power: t must be >= 1");
  CMatrix out = a;
  for (int i = 1; i < t; ++i) out = tensor(out, a);
  return out;
}

CVector tensor_power(const CVector& a, int t) {
  if (t < 1) throw std::invalid_argument("tensor_power: t must be >= 1");
  CVector out = a;
  for (int i = 1; i < t; ++i) out = tensor(out, a);
  return out;
}

CMatrix householder_map_to_basis(const CVector& src, Eigen::Index target) {
  const Eigen::Index n = src.size();
  if (n == 0 || src.norm() == 0.0) {
    throw std::invalid_argument("householder_map_to_basis: zero vector");
  }
  if (target < 0 || target >= n) {
    throw std::invalid_argument("householder_map_to_basis: bad target index");
  }
  const CVector x = src / src.norm();
  // Phase of the target entry; 1 when that entry vanishes.
  const Complex alpha =
      std::abs(x(target)) > 0.0 ? x(target) / std::abs(x(target)) : Complex(1);
  CVector u = x;
  u(target) -= alpha;
  const double un2 = u.squaredNorm();
  CMatrix refl = CMatrix::Identity(n, n);
  if (un2 > 0.0) {
    refl -= (2.0 / un2) * (u * u.adjoint());
  }
  // refl maps x to alpha*e_target; the conjugate phase makes it exact.
  return std::conj(alpha) * refl;
}

}  // namespace qcfa
