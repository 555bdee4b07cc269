#pragma once

#include "nulllda/total_scatter.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

namespace nulllda {

/// Classical null-space LDA: null space of S_W first, then principal
/// components of S_B inside it.
///
/// Works in range(S_T) coordinates. The null space of U1ᵀ S_W U1 comes from
/// the SVD of H_wᵀ U1; its eigenvalues are the squared singular values, and
/// those below (n-1) u lambda_max count as zero. Returns orthonormal columns.
template <typename Scalar>
Matrix<Scalar> exact_null_lda(const ScatterFactors<Scalar>& f, const TotalScatterEigen<Scalar>& e) {
  const Index r = e.rank();
  const Index k = f.num_classes() - 1;
  const Index n = f.num_samples();

  const Matrix<Scalar> a = f.within.transpose() * e.u1;  // n x r
  Eigen::JacobiSVD<Matrix<Scalar>> svd(a, Eigen::ComputeFullV);
  const Vector<Scalar> lambda = svd.singularValues().array().square();
  const Scalar lambda_max = lambda.size() > 0 ? lambda.maxCoeff() : Scalar(0);
  const Scalar cut = static_cast<Scalar>(n - 1) * unit_roundoff<Scalar>() * lambda_max;

  Index nonzero = 0;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > cut) ++nonzero;
  }
  const Index null_dim = r - nonzero;
  if (null_dim != k) {
    throw Error(ErrorKind::RankAssumption,
                "rank assumption violated: null space of projected S_W has dimension " +
                    std::to_string(null_dim) + ", expected " + std::to_string(k));
  }
  const Matrix<Scalar> null_basis = svd.matrixV().rightCols(null_dim);

  const Matrix<Scalar> hb = null_basis.transpose() * (e.u1.transpose() * f.between);  // k x c
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es((hb * hb.transpose()).eval());
  const Vector<Scalar> mu = es.eigenvalues().reverse();
  if (k > 0 && !(mu(k - 1) > static_cast<Scalar>(k) * unit_roundoff<Scalar>() * mu(0))) {
    throw Error(ErrorKind::RankAssumption,
                "rank assumption violated: S_B vanishes on part of the null space of S_W");
  }
  Matrix<Scalar> w = e.u1 * (null_basis * es.eigenvectors().rowwise().reverse());
  normalize_column_signs(w);
  return w;
}

/// Largest principal angle between span(a) and span(b).
template <typename Derived1, typename Derived2>
typename Derived1::Scalar span_distance(const Eigen::MatrixBase<Derived1>& a,
                                        const Eigen::MatrixBase<Derived2>& b) {
  using Scalar = typename Derived1::Scalar;
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "span_distance: row counts differ");
  }
  return principal_angles<Scalar>(orthonormal_basis(a, "first operand"),
                                  orthonormal_basis(b, "second operand"))
      .largest_angle;
}

/// Pass thresholds on the scaled residuals.
template <typename Scalar>
struct CriteriaThresholds {
  Scalar within = Scalar(1e-8);       // ‖S_W W‖_F / (‖H_w‖² ‖W‖_F) at most
  Scalar between = Scalar(1e-6);      // ‖S_B w‖ / (‖H_b‖² ‖w‖) above, per column
  Scalar fixed_point = Scalar(1e-8);  // ‖G W - W‖_F / ‖W‖_F at most
  Scalar span_angle = Scalar(1e-8);   // radians
};

template <typename Scalar>
struct VerificationReport {
  Scalar within_residual = 0;
  std::vector<Scalar> between_norms;
  Index rank_w = 0;
  std::optional<Scalar> fixed_point_residual;
  std::optional<Scalar> span_angle_vs_oracle;

  bool within_pass = false;
  bool between_pass = false;
  bool rank_pass = false;
  bool fixed_point_pass = false;
  bool span_pass = false;

  bool all_pass() const noexcept {
    return within_pass && between_pass && rank_pass && fixed_point_pass && span_pass;
  }
};

namespace detail {
template <typename Scalar>
Scalar safe_ratio(Scalar num, Scalar den) {
  return den > Scalar(0) ? num / den : (num > Scalar(0) ? std::numeric_limits<Scalar>::infinity() : Scalar(0));
}
}  // namespace detail

/// Null-LDA criteria S_W W = 0 and S_B w != 0 for every column, in scaled form.
/// Fills the criteria fields of the report only.
template <typename Scalar, typename Derived>
VerificationReport<Scalar> criteria_check(const ScatterFactors<Scalar>& f,
                                          const Eigen::MatrixBase<Derived>& w_expr,
                                          const CriteriaThresholds<Scalar>& t = {}) {
  const Matrix<Scalar> w = w_expr;
  if (w.rows() != f.dim() || w.cols() != f.num_classes() - 1) {
    throw Error(ErrorKind::DimensionMismatch,
                "orientation must be " + std::to_string(f.dim()) + " x " +
                    std::to_string(f.num_classes() - 1));
  }
  VerificationReport<Scalar> rep;
  const Scalar hw = spectral_norm(f.within);
  const Scalar hb = spectral_norm(f.between);

  rep.within_residual = detail::safe_ratio(scatter_apply(f, Scatter::Within, w).norm(), hw * hw * w.norm());
  rep.within_pass = rep.within_residual <= t.within;

  const Matrix<Scalar> sbw = scatter_apply(f, Scatter::Between, w);
  rep.between_pass = w.cols() > 0;
  for (Index j = 0; j < w.cols(); ++j) {
    const Scalar scaled = detail::safe_ratio(sbw.col(j).norm(), hb * hb * w.col(j).norm());
    rep.between_norms.push_back(scaled);
    if (!(scaled > t.between)) rep.between_pass = false;
  }

  rep.rank_w = w.norm() > Scalar(0) ? numerical_rank(w) : 0;
  rep.rank_pass = rep.rank_w == w.cols();
  return rep;
}

/// ‖G W - W‖_F / max(‖W‖_F, floor) with G = S_T† S_B in factored form.
template <typename Scalar, typename Derived>
Scalar fixed_point_check(const ScatterFactors<Scalar>& f, const TotalScatterEigen<Scalar>& e,
                         const Eigen::MatrixBase<Derived>& w_expr) {
  const Matrix<Scalar> w = w_expr;
  const Scalar den = std::max(w.norm(), std::numeric_limits<Scalar>::min());
  return (g_apply(f, e, w) - w).norm() / den;
}

/// Full report: criteria, fixed point, and agreement with `exact_null_lda`.
/// When the oracle cannot be built (rank assumptions fail) the span fields
/// stay empty and fail.
template <typename Scalar>
VerificationReport<Scalar> verify_orientation(const ScatterFactors<Scalar>& f,
                                              const TotalScatterEigen<Scalar>& e,
                                              const Matrix<Scalar>& w,
                                              const CriteriaThresholds<Scalar>& t = {}) {
  auto rep = criteria_check(f, w, t);
  rep.fixed_point_residual = fixed_point_check(f, e, w);
  rep.fixed_point_pass = *rep.fixed_point_residual <= t.fixed_point;
  try {
    const Matrix<Scalar> oracle = exact_null_lda(f, e);
    if (rep.rank_pass) {
      rep.span_angle_vs_oracle = span_distance(w, oracle);
      rep.span_pass = *rep.span_angle_vs_oracle <= t.span_angle;
    }
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::RankAssumption) throw;
  }
  return rep;
}

}  // namespace nulllda
