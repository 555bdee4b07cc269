#pragma once

#include "nulllda/projector.hpp"

#include <algorithm>
#include <numbers>
#include <string_view>

namespace nulllda {

enum class Verdict { Nonsingular, NearSingular, Singular };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Nonsingular: return "nonsingular";
    case Verdict::NearSingular: return "near_singular";
    case Verdict::Singular: return "singular";
  }
  return "unknown";
}

/// Default ratio sigma_min / sigma_max below which the certificate is near singular.
template <typename Scalar>
constexpr Scalar kNearSingularThreshold = Scalar(1e-8);

/// Safety multiplier on the roundoff floor for declaring exact singularity.
template <typename Scalar>
constexpr Scalar kSingularSafety = Scalar(10);

/// Roundoff floor for a product of two d x k matrices with unit-norm scale.
template <typename Scalar>
Scalar singular_floor(Index d, Index k) {
  return kSingularSafety<Scalar> * static_cast<Scalar>(std::max(d, k)) * unit_roundoff<Scalar>();
}

template <typename Scalar>
struct CertificateReport {
  Matrix<Scalar> z_hat1;  // (c-1) x (c-1)
  Scalar sigma_min = 0;
  Scalar sigma_max = 0;
  Scalar threshold = kNearSingularThreshold<Scalar>;
  Scalar floor = 0;  // absolute singular floor actually applied
  Verdict verdict = Verdict::Singular;
};

/// Ẑ1 = Mᵀ Y, whose nonsingularity is equivalent to rank(S_T† S_B Y) = c-1.
///
/// Singular when sigma_min <= floor, with floor = 10 max(d, c-1) u ‖M‖ ‖Y‖
/// (the roundoff level of Mᵀ Y); otherwise near singular when
/// sigma_min / sigma_max < threshold.
template <typename Scalar, typename Derived>
CertificateReport<Scalar> certificate(const ProjectorBasis<Scalar>& b,
                                      const Eigen::MatrixBase<Derived>& y,
                                      Scalar threshold = kNearSingularThreshold<Scalar>) {
  const Matrix<Scalar>& m = b.certificate_basis;
  if (y.rows() != m.rows() || y.cols() != b.c_minus_1) {
    throw Error(ErrorKind::DimensionMismatch,
                "sketch must be " + std::to_string(m.rows()) + " x " + std::to_string(b.c_minus_1));
  }
  CertificateReport<Scalar> rep;
  rep.threshold = threshold;
  rep.z_hat1 = m.transpose() * y;
  const Vector<Scalar> sv = singular_values(rep.z_hat1);
  rep.sigma_max = sv(0);
  rep.sigma_min = sv(sv.size() - 1);
  rep.floor = singular_floor<Scalar>(m.rows(), b.c_minus_1) * spectral_norm(m) * spectral_norm(y);

  if (rep.sigma_min <= rep.floor) {
    rep.verdict = Verdict::Singular;
  } else if (rep.sigma_min < threshold * rep.sigma_max) {
    rep.verdict = Verdict::NearSingular;
  } else {
    rep.verdict = Verdict::Nonsingular;
  }
  return rep;
}

template <typename Scalar>
struct GeometricReport {
  Scalar largest_angle = 0;    // radians, in [0, pi/2]
  Scalar smallest_cosine = 0;  // cos of largest_angle
  bool singular = false;       // some direction of span(Y) is orthogonal to span(M)
};

/// Largest principal angle between span(Y) and span(M).
///
/// The certificate is singular exactly when this angle is pi/2; the test is
/// applied to its cosine with the same roundoff floor as `certificate`, on
/// orthonormal bases.
template <typename Scalar, typename Derived>
GeometricReport<Scalar> geometric_check(const ProjectorBasis<Scalar>& b,
                                        const Eigen::MatrixBase<Derived>& y) {
  const Matrix<Scalar>& m = b.certificate_basis;
  if (y.rows() != m.rows() || y.cols() != b.c_minus_1) {
    throw Error(ErrorKind::DimensionMismatch,
                "sketch must be " + std::to_string(m.rows()) + " x " + std::to_string(b.c_minus_1));
  }
  const Matrix<Scalar> qy = orthonormal_basis(y, "Y");
  const Matrix<Scalar> qm = orthonormal_basis(m, "certificate basis");
  const auto angles = principal_angles(qy, qm);

  GeometricReport<Scalar> rep;
  rep.largest_angle = angles.largest_angle;
  rep.smallest_cosine = angles.smallest_cosine;
  rep.singular = angles.smallest_cosine <= singular_floor<Scalar>(m.rows(), b.c_minus_1);
  return rep;
}

}  // namespace nulllda
