#pragma once

#include "nulllda/dataset.hpp"
#include "nulllda/numerics.hpp"

#include <cmath>
#include <vector>

namespace nulllda {

template <typename Scalar>
struct Centroids {
  Matrix<Scalar> per_class;  // d x c, column j is the mean of class j
  Vector<Scalar> global;     // d
};

template <typename Scalar>
Centroids<Scalar> compute_centroids(const LabeledDataset<Scalar>& dataset) {
  const Index d = dataset.dim();
  const Index n = dataset.num_samples();
  const Index c = dataset.num_classes();

  Centroids<Scalar> out{Matrix<Scalar>::Zero(d, c), Vector<Scalar>::Zero(d)};
  for (Index i = 0; i < n; ++i) {
    out.per_class.col(dataset.class_of(i)) += dataset.data().col(i);
  }
  const auto& counts = dataset.class_counts();
  for (Index j = 0; j < c; ++j) {
    out.per_class.col(j) /= static_cast<Scalar>(counts[static_cast<std::size_t>(j)]);
  }
  out.global = dataset.data().rowwise().sum() / static_cast<Scalar>(n);
  return out;
}

/// Tall factors H with S = H Hᵀ for the within-class, between-class and total
/// scatter matrices. No d x d matrix is ever formed from these.
template <typename Scalar>
struct ScatterFactors {
  Matrix<Scalar> within;   // H_w, d x n: x_i - mu_class(i)
  Matrix<Scalar> between;  // H_b, d x c: sqrt(n_j) (mu_j - mu)
  Matrix<Scalar> total;    // H_t, d x n: x_i - mu
  Matrix<Scalar> class_centroids;
  Vector<Scalar> global_centroid;
  std::vector<Index> class_counts;

  Index dim() const noexcept { return total.rows(); }
  Index num_samples() const noexcept { return total.cols(); }
  Index num_classes() const noexcept { return between.cols(); }
};

template <typename Scalar>
ScatterFactors<Scalar> build_factors(const LabeledDataset<Scalar>& dataset) {
  auto centroids = compute_centroids(dataset);
  const Index n = dataset.num_samples();
  const Index c = dataset.num_classes();

  ScatterFactors<Scalar> f;
  f.total = dataset.data().colwise() - centroids.global;
  f.within.resize(dataset.dim(), n);
  for (Index i = 0; i < n; ++i) {
    f.within.col(i) = dataset.data().col(i) - centroids.per_class.col(dataset.class_of(i));
  }
  f.between.resize(dataset.dim(), c);
  for (Index j = 0; j < c; ++j) {
    const auto nj = static_cast<Scalar>(dataset.class_counts()[static_cast<std::size_t>(j)]);
    f.between.col(j) = std::sqrt(nj) * (centroids.per_class.col(j) - centroids.global);
  }
  f.class_centroids = std::move(centroids.per_class);
  f.global_centroid = std::move(centroids.global);
  f.class_counts = dataset.class_counts();
  return f;
}

enum class Scatter { Within, Between, Total };

template <typename Scalar>
const Matrix<Scalar>& factor_of(const ScatterFactors<Scalar>& f, Scatter which) {
  switch (which) {
    case Scatter::Within: return f.within;
    case Scatter::Between: return f.between;
    case Scatter::Total: break;
  }
  return f.total;
}

/// S * V evaluated as H (Hᵀ V).
template <typename Scalar, typename Derived>
Matrix<Scalar> scatter_apply(const ScatterFactors<Scalar>& f, Scatter which,
                             const Eigen::MatrixBase<Derived>& v) {
  if (v.rows() != f.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "operand has " + std::to_string(v.rows()) + " rows, expected " +
                    std::to_string(f.dim()));
  }
  const Matrix<Scalar>& h = factor_of(f, which);
  const Matrix<Scalar> inner = h.transpose() * v;
  return h * inner;
}

template <typename Scalar>
struct RankReport {
  Index within = 0, between = 0, total = 0;
  Index expected_within = 0, expected_between = 0, expected_total = 0;
  bool within_ok = false, between_ok = false, total_ok = false;

  bool all_ok() const noexcept { return within_ok && between_ok && total_ok; }
};

/// Numerical ranks of S_W, S_B, S_T from the singular values of their factors.
///
/// `tol` is relative to the largest singular value of each factor; a
/// nonpositive value selects max(d, n) * u. Disagreement with the
/// linearly-independent-sample ranks (n-c, c-1, n-1) is reported, not thrown.
template <typename Scalar>
RankReport<Scalar> rank_report(const ScatterFactors<Scalar>& f, Scalar tol = Scalar(0)) {
  const Index d = f.dim();
  const Index n = f.num_samples();
  const Index c = f.num_classes();
  if (tol <= Scalar(0)) tol = default_rank_tolerance<Scalar>(d, n);

  RankReport<Scalar> r;
  r.within = rank_from_singular_values<Scalar>(singular_values(f.within), tol);
  r.between = rank_from_singular_values<Scalar>(singular_values(f.between), tol);
  r.total = rank_from_singular_values<Scalar>(singular_values(f.total), tol);
  r.expected_within = n - c;
  r.expected_between = c - 1;
  r.expected_total = n - 1;
  r.within_ok = r.within == r.expected_within;
  r.between_ok = r.between == r.expected_between;
  r.total_ok = r.total == r.expected_total;
  return r;
}

}  // namespace nulllda
