#pragma once

#include "nulllda/numerics.hpp"
#include "nulllda/scatter.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace nulllda {

/// Range basis of S_T = U1 diag(sigma1²) U1ᵀ. The null-space complement U2 is
/// never stored; use `complement_apply` to project onto it.
template <typename Scalar>
struct TotalScatterEigen {
  Matrix<Scalar> u1;      // d x r, orthonormal columns
  Vector<Scalar> sigma1;  // r, positive, nonincreasing

  Index rank() const noexcept { return sigma1.size(); }
};

/// Eigendecomposition of S_T through the n x n Gram matrix H_tᵀ H_t.
///
/// Eigenvalues of the Gram matrix are the squared singular values of H_t, so
/// the cut is applied on that scale: lambda > tol * lambda_max, with tol
/// defaulting to max(d, n) * u. Each retained eigenpair (lambda, v) yields the
/// column H_t v / sqrt(lambda).
template <typename Scalar>
TotalScatterEigen<Scalar> eigen_total(const ScatterFactors<Scalar>& f, Scalar tol = Scalar(0)) {
  const Index d = f.dim();
  const Index n = f.num_samples();
  if (tol <= Scalar(0)) tol = default_rank_tolerance<Scalar>(d, n);

  const Matrix<Scalar> gram = f.total.transpose() * f.total;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(gram);
  // Eigen returns ascending eigenvalues.
  const Vector<Scalar> lambda = es.eigenvalues().reverse();
  const Matrix<Scalar> v = es.eigenvectors().rowwise().reverse();

  const Scalar lambda_max = lambda.size() > 0 ? lambda(0) : Scalar(0);
  if (!(lambda_max > Scalar(0))) {
    throw Error(ErrorKind::DegenerateDataset, "degenerate dataset: total scatter is zero");
  }
  Index r = 0;
  while (r < lambda.size() && lambda(r) > tol * lambda_max) ++r;

  TotalScatterEigen<Scalar> out;
  out.sigma1 = lambda.head(r).cwiseSqrt();
  out.u1 = f.total * v.leftCols(r);
  for (Index j = 0; j < r; ++j) out.u1.col(j) /= out.sigma1(j);
  normalize_column_signs(out.u1);
  return out;
}

/// S_T† V = U1 Σ1⁻² U1ᵀ V.
template <typename Scalar, typename Derived>
Matrix<Scalar> pinv_apply(const TotalScatterEigen<Scalar>& e, const Eigen::MatrixBase<Derived>& v) {
  Matrix<Scalar> coeffs = e.u1.transpose() * v;
  coeffs.array().colwise() /= e.sigma1.array().square();
  return e.u1 * coeffs;
}

/// (I - U1 U1ᵀ) V: the component of V in the null space of S_T.
template <typename Scalar, typename Derived>
Matrix<Scalar> complement_apply(const TotalScatterEigen<Scalar>& e,
                                const Eigen::MatrixBase<Derived>& v_expr) {
  const Matrix<Scalar> v = v_expr;
  return v - e.u1 * (e.u1.transpose() * v);
}

/// G V = S_T† S_B V evaluated right to left through the factors.
template <typename Scalar, typename Derived>
Matrix<Scalar> g_apply(const ScatterFactors<Scalar>& f, const TotalScatterEigen<Scalar>& e,
                       const Eigen::MatrixBase<Derived>& v) {
  return pinv_apply(e, scatter_apply(f, Scatter::Between, v));
}

}  // namespace nulllda
