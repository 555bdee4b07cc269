#pragma once

// Test-only data generators and dense reference computations. The dense
// routines assemble d x d matrices on purpose: they are the independent
// oracles the factored code is checked against, at test scale only.

#include "nulllda/nulllda.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nulllda::testing {

using Mat = Matrix<double>;
using Vec = Vector<double>;

inline std::string class_label(Index j) { return "k" + std::to_string(j); }

/// Gaussian samples; the first c samples cover every class once, the rest
/// get uniformly random classes. Generic when d >= n.
inline LabeledDataset<double> random_dataset(Index d, Index n, Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat x = gaussian_matrix<double>(d, n, rng);
  std::uniform_int_distribution<Index> pick(0, c - 1);
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) labels.push_back(class_label(i < c ? i : pick(rng)));
  return LabeledDataset<double>(std::move(x), std::move(labels));
}

/// Classes centred far apart relative to their spread.
inline LabeledDataset<double> separated_dataset(Index d, Index per_class, Index c, std::uint64_t seed,
                                                double separation = 20.0, double spread = 0.5) {
  std::mt19937_64 rng(seed);
  const Mat centres = separation * gaussian_matrix<double>(d, c, rng);
  Mat x(d, per_class * c);
  std::vector<std::string> labels;
  for (Index s = 0; s < per_class * c; ++s) {
    const Index j = s % c;
    x.col(s) = centres.col(j) + spread * gaussian_matrix<double>(d, 1, rng);
    labels.push_back(class_label(j));
  }
  return LabeledDataset<double>(std::move(x), std::move(labels));
}

struct RandomInstance {
  Index d = 0, n = 0, c = 0;
  std::uint64_t seed = 0;
};

/// Sizes drawn from d in [max(8, n+1), 64], n in [4, 12], c in [2, min(5, n-1)].
inline RandomInstance random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 13);
  RandomInstance inst;
  inst.seed = seed;
  inst.n = std::uniform_int_distribution<Index>(4, 12)(rng);
  inst.c = std::uniform_int_distribution<Index>(2, std::min<Index>(5, inst.n - 1))(rng);
  inst.d = std::uniform_int_distribution<Index>(std::max<Index>(8, inst.n + 1), 64)(rng);
  return inst;
}

inline Mat assemble(const Mat& h) { return h * h.transpose(); }

/// Moore-Penrose inverse of a symmetric PSD matrix from its full eigendecomposition.
inline Mat dense_pinv(const Mat& s, double rel_tol = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  const Vec lambda = es.eigenvalues();
  const double cut = rel_tol * lambda.cwiseAbs().maxCoeff();
  Vec inv = Vec::Zero(lambda.size());
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > cut) inv(i) = 1.0 / lambda(i);
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

/// G = S_T† S_B assembled densely.
inline Mat dense_g(const ScatterFactors<double>& f) {
  return dense_pinv(assemble(f.total)) * assemble(f.between);
}

/// Basis of the eigenvalue-1 eigenspace of a dense G.
inline Mat dense_unit_eigenspace(const Mat& g, Index k) {
  Eigen::EigenSolver<Mat> es(g);
  std::vector<std::pair<double, Index>> order;
  for (Index i = 0; i < g.rows(); ++i) order.emplace_back(-std::abs(es.eigenvalues()(i) - 1.0), i);
  std::sort(order.begin(), order.end(), [](auto a, auto b) { return a.first > b.first; });
  Mat out(g.rows(), k);
  for (Index j = 0; j < k; ++j) out.col(j) = es.eigenvectors().col(order[static_cast<std::size_t>(j)].second).real();
  return out;
}

/// Sketch with `orthogonal` columns orthogonal to span(M) and the rest inside it.
inline Mat mixed_sketch(const ProjectorBasis<double>& b, Index orthogonal, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Mat& m = b.certificate_basis;
  const Index k = b.c_minus_1;
  const Mat qm = orthonormal_basis(m);
  Mat y(m.rows(), k);
  for (Index j = 0; j < k; ++j) {
    if (j < orthogonal) {
      Vec v = gaussian_matrix<double>(m.rows(), 1, rng);
      for (int pass = 0; pass < 2; ++pass) v -= qm * (qm.transpose() * v);
      y.col(j) = v;
    } else {
      y.col(j) = m * gaussian_matrix<double>(k, 1, rng);
    }
  }
  return y;
}

inline double rel_err(const Mat& a, const Mat& b) {
  const double den = std::max(a.norm(), b.norm());
  return den > 0 ? (a - b).norm() / den : 0.0;
}

}  // namespace nulllda::testing
