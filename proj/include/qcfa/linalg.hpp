#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace qcfa {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Validation tolerance for structural checks (unitarity, projectors,
// measurement completeness) and for cross-engine probability comparison.
inline constexpr double kTol = 1e-9;

/// Largest entry magnitude, zero for empty matrices.
double max_abs(const CMatrix& m);

/// Dimension-checked product; throws std::invalid_argument when the inner
/// dimensions disagree. (Plain operator* is fine once shapes are known.)
CMatrix mat_mul(const CMatrix& a, const CMatrix& b);

bool all_finite(const CMatrix& m);

/// True iff ||U†U - I||_max <= tol. Throws std::invalid_argument on
/// non-square input.
bool is_unitary(const CMatrix& u, double tol = kTol);

/// True iff ||P² - P||_max <= tol and ||P† - P||_max <= tol.
bool is_projector(const CMatrix& p, double tol = kTol);

bool is_hermitian(const CMatrix& m, double tol = kTol);

bool is_normalized(const CVector& v, double tol = kTol);

/// Real part of the trace. Density-matrix mass lives here; the imaginary
/// part of a Hermitian trace is numerical noise.
double trace_real(const CMatrix& m);

/// Cheap plausibility check for (possibly unnormalized) density matrices:
/// Hermitian within tol and real trace in [-tol, 1+tol]. Positivity is not
/// decided here; the engines only ever build sums of P rho P terms.
bool is_valid_density(const CMatrix& m, double tol = kTol);

// One labeled outcome of a projective measurement.
struct MeasurementOutcome {
  std::string label;
  CMatrix projector;
};

// A finite projective measurement: labeled, pairwise-orthogonal projectors
// that sum to the identity. The one-outcome family {("eps", I)} stands for
// "no measurement"; its result is reported with certainty.
struct MeasurementFamily {
  std::vector<MeasurementOutcome> outcomes;

  Eigen::Index dim() const;
  const CMatrix* find(const std::string& label) const;
};

inline const std::string kTrivialOutcomeLabel = "eps";

MeasurementFamily trivial_measurement(Eigen::Index dim);

/// True for a one-outcome family whose projector is exactly the identity.
bool is_trivial_measurement(const MeasurementFamily& m);

/// Checks idempotent-Hermitian projectors, pairwise orthogonality
/// (||P_i P_j||_max <= tol for i != j), completeness (sum within tol of I)
/// and label distinctness. Throws on dimension mismatch among projectors.
bool is_valid_measurement(const MeasurementFamily& m, double tol = kTol);

/// Kronecker product with the left factor major: entry
/// (i1*r2+i2, j1*c2+j2) = a(i1,j1) * b(i2,j2). Joint measurement outcomes
/// of product machines rely on this index routing; do not change it.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);

/// t-fold Kronecker power (t >= 1).
CMatrix tensor_power(const CMatrix& a, int t);
CVector tensor_power(const CVector& a, int t);

/// Unitary V with V*src = e_target exactly (the usual Householder map
/// composed with a phase). Real input yields a real orthogonal V.
/// Throws on a zero vector or an out-of-range target index.
CMatrix householder_map_to_basis(const CVector& src, Eigen::Index target);

}  // namespace qcfa
