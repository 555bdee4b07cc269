#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace nulllda {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

enum class ErrorKind {
  InvalidInput,        // malformed dataset, bad parameters
  DimensionMismatch,
  DegenerateDataset,   // S_T = 0
  StructureViolated,   // eigenvalues of QQ^T are not {1 x (c-1), 0 x rest}
  RankAssumption,      // exact null-LDA oracle found the wrong null-space dimension
  RankDeficient,       // a basis argument lacks full column rank
  RetriesExhausted,
  SketchRejected,
  DegenerateModel,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Unit roundoff of the working precision.
template <typename Scalar>
constexpr Scalar unit_roundoff() {
  return std::numeric_limits<Scalar>::epsilon() / Scalar(2);
}

}  // namespace nulllda
