#pragma once

#include "nulllda/types.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nulllda {

/// Samples stored column-wise (d x n) together with their class labels.
///
/// Class identifiers are arbitrary strings; they are mapped to contiguous
/// indices 0..c-1 in order of first appearance. Construction validates the
/// dataset and the object is immutable afterwards.
template <typename Scalar>
class LabeledDataset {
 public:
  LabeledDataset(Matrix<Scalar> data, std::vector<std::string> labels)
      : data_(std::move(data)), labels_(std::move(labels)) {
    if (data_.rows() < 1) {
      throw Error(ErrorKind::InvalidInput, "dataset needs at least one feature");
    }
    if (static_cast<Index>(labels_.size()) != data_.cols()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "label count " + std::to_string(labels_.size()) +
                      " does not match sample count " + std::to_string(data_.cols()));
    }
    if (data_.cols() < 2) {
      throw Error(ErrorKind::InvalidInput, "dataset needs at least two samples");
    }
    if (!data_.allFinite()) {
      throw Error(ErrorKind::InvalidInput, "dataset contains non-finite feature values");
    }

    std::unordered_map<std::string, Index> index;
    class_of_.reserve(labels_.size());
    for (const auto& label : labels_) {
      auto [it, inserted] = index.try_emplace(label, static_cast<Index>(class_names_.size()));
      if (inserted) {
        class_names_.push_back(label);
        class_counts_.push_back(0);
      }
      class_of_.push_back(it->second);
      ++class_counts_[it->second];
    }
    if (class_names_.size() < 2) {
      throw Error(ErrorKind::InvalidInput, "dataset needs at least two classes");
    }
  }

  const Matrix<Scalar>& data() const noexcept { return data_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  Index dim() const noexcept { return data_.rows(); }
  Index num_samples() const noexcept { return data_.cols(); }
  Index num_classes() const noexcept { return static_cast<Index>(class_names_.size()); }

  /// Contiguous class index of sample i.
  Index class_of(Index i) const { return class_of_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& class_indices() const noexcept { return class_of_; }

  /// Class identifiers in index order.
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }
  const std::vector<Index>& class_counts() const noexcept { return class_counts_; }

 private:
  Matrix<Scalar> data_;
  std::vector<std::string> labels_;
  std::vector<Index> class_of_;
  std::vector<std::string> class_names_;
  std::vector<Index> class_counts_;
};

}  // namespace nulllda
