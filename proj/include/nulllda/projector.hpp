#pragma once

#include "nulllda/total_scatter.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nulllda {

/// Bases derived from Q = Σ1⁻¹ U1ᵀ H_b.
///
/// With QQᵀ = R Λ Rᵀ, the columns of U1 Σ1⁻¹ R split into Û1 (first c-1,
/// the unit eigenspace of G = S_T† S_B) and Û2 (the rest, annihilated by G).
/// `certificate_basis` is M = U1 Q̂ R̂1 where Σ1⁻¹ R = Q̂ R̂; Mᵀ Û1 = I, so
/// Mᵀ Y gives the Û1 coordinates of a sketch Y.
template <typename Scalar>
struct ProjectorBasis {
  Matrix<Scalar> u_hat1;             // d x (c-1)
  Matrix<Scalar> certificate_basis;  // d x (c-1), M
  Matrix<Scalar> rotation;           // r x r, R (eigenvectors of QQᵀ)
  Vector<Scalar> lambda;             // r, eigenvalues of QQᵀ, nonincreasing
  Index c_minus_1 = 0;
};

/// Allowed deviation of each eigenvalue of QQᵀ from 0 or 1: 1e-8, widened
/// for scalar types coarser than double.
template <typename Scalar>
constexpr Scalar kLambdaTolerance = std::max(Scalar(1e-8), Scalar(100) * unit_roundoff<Scalar>());

template <typename Scalar>
ProjectorBasis<Scalar> build_projector_basis(const TotalScatterEigen<Scalar>& e,
                                             const ScatterFactors<Scalar>& f) {
  const Index r = e.rank();
  const Index k = f.num_classes() - 1;
  if (e.u1.rows() != f.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "eigenbasis does not match scatter factors");
  }
  if (k > r) {
    throw Error(ErrorKind::StructureViolated,
                "scatter structure violated: rank(S_T) = " + std::to_string(r) +
                    " is below c-1 = " + std::to_string(k));
  }

  Matrix<Scalar> q = e.u1.transpose() * f.between;
  q.array().colwise() /= e.sigma1.array();

  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es((q * q.transpose()).eval());
  ProjectorBasis<Scalar> b;
  b.c_minus_1 = k;
  b.lambda = es.eigenvalues().reverse();
  b.rotation = es.eigenvectors().rowwise().reverse();

  const Scalar tol = kLambdaTolerance<Scalar>;
  for (Index i = 0; i < r; ++i) {
    const Scalar target = i < k ? Scalar(1) : Scalar(0);
    if (std::abs(b.lambda(i) - target) > tol) {
      std::ostringstream msg;
      msg << "scatter structure violated: eigenvalue " << i << " of QQ^T is " << b.lambda(i)
          << ", expected " << target;
      throw Error(ErrorKind::StructureViolated, msg.str());
    }
  }
  normalize_column_signs(b.rotation);

  // Σ1⁻¹ R = Q̂ R̂ with a positive diagonal on R̂.
  Matrix<Scalar> scaled = b.rotation;
  scaled.array().colwise() /= e.sigma1.array();
  Eigen::HouseholderQR<Matrix<Scalar>> qr(scaled);
  Matrix<Scalar> q_hat = qr.householderQ();
  Matrix<Scalar> r_hat = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index i = 0; i < r; ++i) {
    if (r_hat(i, i) < Scalar(0)) {
      r_hat.row(i) = -r_hat.row(i);
      q_hat.col(i) = -q_hat.col(i);
    }
  }

  // R̂1 = (first c-1 rows of R̂⁻¹)ᵀ, from R̂ᵀ X = [I_{c-1}; 0].
  const Matrix<Scalar> rhs = Matrix<Scalar>::Identity(r, k);
  const Matrix<Scalar> r_hat1 =
      r_hat.transpose().template triangularView<Eigen::Lower>().solve(rhs);

  b.certificate_basis = e.u1 * (q_hat * r_hat1);
  b.u_hat1 = e.u1 * scaled.leftCols(k);
  return b;
}

/// Û2: the columns of U1 Σ1⁻¹ R beyond c-1. Only needed by checks.
template <typename Scalar>
Matrix<Scalar> trailing_basis(const TotalScatterEigen<Scalar>& e, const ProjectorBasis<Scalar>& b) {
  Matrix<Scalar> scaled = b.rotation.rightCols(e.rank() - b.c_minus_1);
  scaled.array().colwise() /= e.sigma1.array();
  return e.u1 * scaled;
}

}  // namespace nulllda
