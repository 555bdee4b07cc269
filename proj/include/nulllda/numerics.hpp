#pragma once

#include "nulllda/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nulllda {

/// Default relative rank threshold max(rows, cols) * u.
template <typename Scalar>
Scalar default_rank_tolerance(Index rows, Index cols) {
  return static_cast<Scalar>(std::max(rows, cols)) * unit_roundoff<Scalar>();
}

/// Singular values of `a`, nonincreasing.
template <typename Derived>
Vector<typename Derived::Scalar> singular_values(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.size() == 0) return Vector<Scalar>();
  Eigen::JacobiSVD<Matrix<Scalar>> svd(a.eval());
  return svd.singularValues();
}

/// Count of singular values strictly above `tol * reference`.
///
/// With `reference` left at zero the largest singular value is used, which is
/// the usual relative convention. An all-zero spectrum has rank 0.
template <typename Scalar>
Index rank_from_singular_values(const Vector<Scalar>& sv, Scalar tol, Scalar reference = Scalar(0)) {
  if (sv.size() == 0) return 0;
  const Scalar ref = reference > Scalar(0) ? reference : sv.maxCoeff();
  const Scalar cut = tol * ref;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return rank;
}

template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return rank_from_singular_values<Scalar>(singular_values(a),
                                           default_rank_tolerance<Scalar>(a.rows(), a.cols()));
}

template <typename Derived>
typename Derived::Scalar spectral_norm(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.size() == 0) return Scalar(0);
  return singular_values(a)(0);
}

/// Orthonormal basis for the column span of a full-column-rank matrix.
///
/// Throws ErrorKind::RankDeficient when `a` has numerical rank below its
/// column count.
template <typename Derived>
Matrix<typename Derived::Scalar> orthonormal_basis(const Eigen::MatrixBase<Derived>& a,
                                                   const char* what = "matrix") {
  using Scalar = typename Derived::Scalar;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(a.eval(), Eigen::ComputeThinU);
  const Index rank = rank_from_singular_values<Scalar>(
      svd.singularValues(), default_rank_tolerance<Scalar>(a.rows(), a.cols()));
  if (rank < a.cols() || a.cols() == 0) {
    throw Error(ErrorKind::RankDeficient, std::string(what) + " not full column rank");
  }
  return svd.matrixU();
}

/// Principal angles between two subspaces given orthonormal bases.
///
/// Cosines come from the singular values of qaᵀqb. The largest angle is
/// taken from the sine side when it is small, because arccos loses half the
/// digits near 1.
template <typename Scalar>
struct PrincipalAngles {
  Vector<Scalar> cosines;  // nonincreasing
  Scalar largest_angle = 0;
  Scalar smallest_cosine = 0;
};

template <typename Scalar>
PrincipalAngles<Scalar> principal_angles(const Matrix<Scalar>& qa, const Matrix<Scalar>& qb) {
  PrincipalAngles<Scalar> out;
  out.cosines = singular_values((qa.transpose() * qb).eval());
  out.smallest_cosine = std::clamp(out.cosines.minCoeff(), Scalar(0), Scalar(1));
  if (out.smallest_cosine < Scalar(1) / std::sqrt(Scalar(2))) {
    out.largest_angle = std::acos(out.smallest_cosine);
  } else {
    // Vectors of the smaller subspace leaving span(qb): sines of the angles.
    const Matrix<Scalar>& small = qa.cols() <= qb.cols() ? qa : qb;
    const Matrix<Scalar>& large = qa.cols() <= qb.cols() ? qb : qa;
    const Matrix<Scalar> residual = small - large * (large.transpose() * small);
    const Scalar sine = std::clamp(spectral_norm(residual), Scalar(0), Scalar(1));
    out.largest_angle = std::asin(sine);
  }
  return out;
}

/// Flip column signs so the first entry of non-negligible magnitude is positive.
template <typename Scalar>
void normalize_column_signs(Matrix<Scalar>& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    const Scalar cut = std::sqrt(unit_roundoff<Scalar>()) * a.col(j).cwiseAbs().maxCoeff();
    for (Index i = 0; i < a.rows(); ++i) {
      if (std::abs(a(i, j)) > cut) {
        if (a(i, j) < Scalar(0)) a.col(j) = -a.col(j);
        break;
      }
    }
  }
}

}  // namespace nulllda
