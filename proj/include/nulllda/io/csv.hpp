#pragma once

#include "nulllda/dataset.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nulllda::io {

/// Raw comma-separated table after header detection.
struct CsvTable {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
  bool had_header = false;
};

/// Splits `in` into rows of fields. Blank lines are skipped. The first row is
/// treated as a header when none of the fields in `numeric_columns` of that row
/// parse as numbers; a negative count means "all but the last field".
CsvTable read_table(std::istream& in, int numeric_columns = -1);

/// Parses a full-field decimal number; std::nullopt when the field is not one.
std::optional<double> parse_number(const std::string& field);

/// One sample per row, features followed by the label. With `transpose`, one
/// feature per row and the labels on the final row.
LabeledDataset<double> read_dataset(std::istream& in, bool transpose = false);
LabeledDataset<double> read_dataset_file(const std::string& path, bool transpose = false);

/// Unlabelled or labelled samples for an already-fitted model of dimension d.
/// Rows with d + 1 fields carry a trailing label that is returned separately.
struct Samples {
  Matrix<double> data;  // d x m
  std::vector<std::string> labels;  // empty when the file has none
};
Samples read_samples_file(const std::string& path, Index dim, bool transpose = false);

/// Dense matrix, one matrix row per line.
Matrix<double> read_matrix_file(const std::string& path);

void write_matrix(std::ostream& out, const Matrix<double>& m);

/// Dataset in the row-per-sample layout read by `read_dataset`.
void write_dataset(std::ostream& out, const LabeledDataset<double>& dataset);

/// Decimal with 17 significant digits.
std::string format_number(double x);

}  // namespace nulllda::io
