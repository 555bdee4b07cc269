#pragma once

#include "nulllda/certificate.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nulllda {

/// W = S_T† S_B Y, evaluated right to left through the factors in
/// O(d n c) work. Columns are not normalized.
template <typename Scalar, typename Derived>
Matrix<Scalar> fast_null_lda(const ScatterFactors<Scalar>& f, const TotalScatterEigen<Scalar>& e,
                             const Eigen::MatrixBase<Derived>& y) {
  if (y.rows() != f.dim() || y.cols() != f.num_classes() - 1) {
    throw Error(ErrorKind::DimensionMismatch,
                "sketch must be " + std::to_string(f.dim()) + " x " +
                    std::to_string(f.num_classes() - 1));
  }
  return g_apply(f, e, y);
}

/// Numerical rank of an unnormalized W = S_T† S_B Y.
///
/// Singular values are compared against the roundoff level of the product,
/// 10 max(d, n) u ‖S_T†‖ ‖S_B‖ ‖Y‖, not against the largest singular value
/// of W itself: a W that is zero up to rounding has rank 0.
template <typename Scalar>
Index orientation_rank(const ScatterFactors<Scalar>& f, const TotalScatterEigen<Scalar>& e,
                       const Matrix<Scalar>& y, const Matrix<Scalar>& w) {
  const Scalar hb = spectral_norm(f.between);
  const Scalar sr = e.sigma1(e.rank() - 1);
  const Scalar scale = hb * hb / (sr * sr) * spectral_norm(y);
  const Scalar floor = singular_floor<Scalar>(f.dim(), f.num_samples());
  return rank_from_singular_values<Scalar>(singular_values(w), floor, scale);
}

/// Everything about a dataset that does not depend on the sketch.
template <typename Scalar>
struct FitContext {
  ScatterFactors<Scalar> factors;
  TotalScatterEigen<Scalar> eigen;
  ProjectorBasis<Scalar> basis;
  std::vector<std::string> class_names;
};

template <typename Scalar>
FitContext<Scalar> prepare_fit(const LabeledDataset<Scalar>& dataset) {
  FitContext<Scalar> ctx;
  ctx.factors = build_factors(dataset);
  ctx.eigen = eigen_total(ctx.factors);
  ctx.basis = build_projector_basis(ctx.eigen, ctx.factors);
  ctx.class_names = dataset.class_names();
  return ctx;
}

template <typename Scalar>
struct NullLdaModel {
  Matrix<Scalar> orientation;        // W, d x (c-1), unit columns
  std::vector<std::string> class_names;
  Matrix<Scalar> reduced_centroids;  // (c-1) x c, Wᵀ mu_j
  std::uint64_t seed = 0;
  int retries = 0;
  CertificateReport<Scalar> certificate;

  Index dim() const noexcept { return orientation.rows(); }
  Index num_classes() const noexcept { return static_cast<Index>(class_names.size()); }
};

/// Builds a model from a sketch whose certificate is already known to be
/// acceptable.
template <typename Scalar>
NullLdaModel<Scalar> model_from_sketch(const FitContext<Scalar>& ctx, const Matrix<Scalar>& y,
                                       CertificateReport<Scalar> cert) {
  NullLdaModel<Scalar> m;
  m.orientation = fast_null_lda(ctx.factors, ctx.eigen, y);
  m.orientation.colwise().normalize();
  m.class_names = ctx.class_names;
  m.reduced_centroids = m.orientation.transpose() * ctx.factors.class_centroids;
  m.certificate = std::move(cert);
  return m;
}

/// Fits with a caller-supplied sketch. Throws ErrorKind::SketchRejected
/// unless the certificate verdict is nonsingular.
template <typename Scalar>
NullLdaModel<Scalar> fit_with_sketch(const FitContext<Scalar>& ctx, const Matrix<Scalar>& y,
                                     Scalar threshold = kNearSingularThreshold<Scalar>) {
  auto cert = certificate(ctx.basis, y, threshold);
  if (cert.verdict != Verdict::Nonsingular) {
    throw Error(ErrorKind::SketchRejected,
                "sketch rejected: certificate is " + std::string(to_string(cert.verdict)));
  }
  return model_from_sketch(ctx, y, std::move(cert));
}

/// Standard-normal d x k sketch from a seeded generator.
template <typename Scalar, typename Rng>
Matrix<Scalar> gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  Matrix<Scalar> y(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) y(i, j) = normal(rng);
  }
  return y;
}

struct FitOptions {
  std::uint64_t seed = 0;
  int max_retries = 5;
  double threshold = 1e-8;
};

/// Draws Gaussian sketches until the certificate is nonsingular, at most
/// 1 + max_retries draws. Deterministic for a given seed.
template <typename Scalar>
NullLdaModel<Scalar> fit_with_retry(const FitContext<Scalar>& ctx, const FitOptions& opts = {}) {
  std::mt19937_64 rng(opts.seed);
  const auto threshold = static_cast<Scalar>(opts.threshold);
  const Index d = ctx.factors.dim();
  const Index k = ctx.basis.c_minus_1;
  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    Matrix<Scalar> y = gaussian_matrix<Scalar>(d, k, rng);
    auto cert = certificate(ctx.basis, y, threshold);
    if (cert.verdict == Verdict::Nonsingular) {
      auto model = model_from_sketch(ctx, y, std::move(cert));
      model.seed = opts.seed;
      model.retries = attempt;
      return model;
    }
  }
  throw Error(ErrorKind::RetriesExhausted,
              "no full-rank sketch found after " + std::to_string(opts.max_retries + 1) +
                  " draws");
}

template <typename Scalar>
NullLdaModel<Scalar> fit_with_retry(const LabeledDataset<Scalar>& dataset, const FitOptions& opts = {}) {
  return fit_with_retry(prepare_fit(dataset), opts);
}

/// A sketch that defeats the fast method: full column rank, yet orthogonal to
/// span(M) = span(Û1), so that S_T† S_B Y = 0.
///
/// Half of the raw draw is taken inside range(S_T) so the result has real
/// components along Û2 as well as along the null space of S_T.
template <typename Scalar>
Matrix<Scalar> adversarial_sketch(const ProjectorBasis<Scalar>& b, const TotalScatterEigen<Scalar>& e,
                                  std::uint64_t seed) {
  const Index d = e.u1.rows();
  const Index k = b.c_minus_1;
  if (d - k < k) {
    throw Error(ErrorKind::InvalidInput,
                "dimension too small: need d - (c-1) >= c-1 for an orthogonal sketch");
  }
  std::mt19937_64 rng(seed);
  Matrix<Scalar> y = gaussian_matrix<Scalar>(d, k, rng);
  y += e.u1 * gaussian_matrix<Scalar>(e.rank(), k, rng);

  const Matrix<Scalar> qm = orthonormal_basis(b.certificate_basis, "certificate basis");
  for (int pass = 0; pass < 2; ++pass) y -= qm * (qm.transpose() * y);
  return y;
}

template <typename Scalar>
struct Counterexample {
  LabeledDataset<Scalar> dataset;
  Matrix<Scalar> sketch;  // d x 1
};

/// Two classes of two samples each with centroids ê and 2ê,
/// ê = (1, 0, 1, 1, ..., 1), and the sketch Y = alpha e_2.
///
/// The in-class offsets v = (1, 0, -1, 0, ...)/√2 and w = (1, 0, 1, -2, 0, ...)/√6
/// are orthonormal, orthogonal to ê and to e_2, so S_B = êêᵀ, rank(S_T) = 3
/// and S_B Y = 0 exactly.
template <typename Scalar>
Counterexample<Scalar> counterexample(Index d, Scalar alpha) {
  if (d < 4) {
    throw Error(ErrorKind::InvalidInput, "counterexample needs d >= 4");
  }
  if (!(alpha > Scalar(0) && alpha < Scalar(1))) {
    throw Error(ErrorKind::InvalidInput, "counterexample needs 0 < alpha < 1");
  }
  Vector<Scalar> e_hat = Vector<Scalar>::Ones(d);
  e_hat(1) = Scalar(0);
  Vector<Scalar> v = Vector<Scalar>::Zero(d);
  v(0) = Scalar(1);
  v(2) = Scalar(-1);
  v /= std::sqrt(Scalar(2));
  Vector<Scalar> w = Vector<Scalar>::Zero(d);
  w(0) = Scalar(1);
  w(2) = Scalar(1);
  w(3) = Scalar(-2);
  w /= std::sqrt(Scalar(6));

  Matrix<Scalar> x(d, 4);
  x.col(0) = e_hat + v;
  x.col(1) = e_hat - v;
  x.col(2) = Scalar(2) * e_hat + w;
  x.col(3) = Scalar(2) * e_hat - w;

  Matrix<Scalar> y = Matrix<Scalar>::Zero(d, 1);
  y(1, 0) = alpha;
  return {LabeledDataset<Scalar>(std::move(x), {"omega_1", "omega_1", "omega_2", "omega_2"}),
          std::move(y)};
}

}  // namespace nulllda
