#include "nulllda/io/csv.hpp"

#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace nulllda::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); }

double parse_or_fail(const std::string& field, std::size_t line) {
  auto v = parse_number(field);
  if (!v) fail("line " + std::to_string(line) + ": non-numeric feature value '" + field + "'");
  return *v;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::optional<double> parse_number(const std::string& field) {
  if (field.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

CsvTable read_table(std::istream& in, int numeric_columns) {
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    t.rows.push_back(split(line));
    t.line_numbers.push_back(lineno);
  }
  if (!t.rows.empty()) {
    const auto& first = t.rows.front();
    const std::size_t count = numeric_columns < 0
                                  ? (first.empty() ? 0 : first.size() - 1)
                                  : std::min<std::size_t>(first.size(), static_cast<std::size_t>(numeric_columns));
    bool any_numeric = false;
    for (std::size_t i = 0; i < count; ++i) any_numeric = any_numeric || parse_number(first[i]).has_value();
    if (count > 0 && !any_numeric) {
      t.had_header = true;
      t.rows.erase(t.rows.begin());
      t.line_numbers.erase(t.line_numbers.begin());
    }
  }
  return t;
}

LabeledDataset<double> read_dataset(std::istream& in, bool transpose) {
  // In the transposed layout the header, if any, is a row of sample names.
  CsvTable t = read_table(in, transpose ? 0 : -1);
  if (transpose && !t.rows.empty()) {
    bool any_numeric = false;
    for (const auto& f : t.rows.front()) any_numeric = any_numeric || parse_number(f).has_value();
    if (!any_numeric && t.rows.size() > 1) {
      // A leading row of names is a header only if the remaining rows still
      // end in a label row; the label row itself is non-numeric too.
      bool second_numeric = false;
      for (const auto& f : t.rows[1]) second_numeric = second_numeric || parse_number(f).has_value();
      if (second_numeric) {
        t.rows.erase(t.rows.begin());
        t.line_numbers.erase(t.line_numbers.begin());
      }
    }
  }
  if (t.rows.empty()) fail("no data rows");

  Matrix<double> data;
  std::vector<std::string> labels;
  if (!transpose) {
    const std::size_t width = t.rows.front().size();
    if (width < 2) fail("line " + std::to_string(t.line_numbers.front()) + ": need features and a label");
    data.resize(static_cast<Index>(width - 1), static_cast<Index>(t.rows.size()));
    for (std::size_t s = 0; s < t.rows.size(); ++s) {
      const auto& row = t.rows[s];
      if (row.size() != width) {
        fail("line " + std::to_string(t.line_numbers[s]) + ": expected " + std::to_string(width) +
             " fields, found " + std::to_string(row.size()));
      }
      for (std::size_t j = 0; j + 1 < width; ++j) {
        data(static_cast<Index>(j), static_cast<Index>(s)) = parse_or_fail(row[j], t.line_numbers[s]);
      }
      if (row.back().empty()) fail("line " + std::to_string(t.line_numbers[s]) + ": empty label");
      labels.push_back(row.back());
    }
  } else {
    if (t.rows.size() < 2) fail("transposed layout needs feature rows and a label row");
    const std::size_t width = t.rows.front().size();
    data.resize(static_cast<Index>(t.rows.size() - 1), static_cast<Index>(width));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const auto& row = t.rows[i];
      if (row.size() != width) {
        fail("line " + std::to_string(t.line_numbers[i]) + ": expected " + std::to_string(width) +
             " fields, found " + std::to_string(row.size()));
      }
      if (i + 1 == t.rows.size()) {
        for (const auto& l : row) {
          if (l.empty()) fail("line " + std::to_string(t.line_numbers[i]) + ": empty label");
          labels.push_back(l);
        }
      } else {
        for (std::size_t s = 0; s < width; ++s) {
          data(static_cast<Index>(i), static_cast<Index>(s)) = parse_or_fail(row[s], t.line_numbers[i]);
        }
      }
    }
  }
  return LabeledDataset<double>(std::move(data), std::move(labels));
}

LabeledDataset<double> read_dataset_file(const std::string& path, bool transpose) {
  auto in = open(path);
  return read_dataset(in, transpose);
}

Samples read_samples_file(const std::string& path, Index dim, bool transpose) {
  auto in = open(path);
  CsvTable t = read_table(in, transpose ? INT_MAX : static_cast<int>(dim));
  if (t.rows.empty()) fail("no data rows in '" + path + "'");
  const auto d = static_cast<std::size_t>(dim);

  Samples out;
  if (!transpose) {
    const std::size_t width = t.rows.front().size();
    if (width != d && width != d + 1) {
      throw Error(ErrorKind::DimensionMismatch, "data has " + std::to_string(width) +
                                                    " fields per row, model expects " +
                                                    std::to_string(d) + " features");
    }
    out.data.resize(dim, static_cast<Index>(t.rows.size()));
    for (std::size_t s = 0; s < t.rows.size(); ++s) {
      const auto& row = t.rows[s];
      if (row.size() != width) {
        fail("line " + std::to_string(t.line_numbers[s]) + ": expected " + std::to_string(width) +
             " fields, found " + std::to_string(row.size()));
      }
      for (std::size_t j = 0; j < d; ++j) {
        out.data(static_cast<Index>(j), static_cast<Index>(s)) = parse_or_fail(row[j], t.line_numbers[s]);
      }
      if (width == d + 1) out.labels.push_back(row.back());
    }
  } else {
    if (t.rows.size() != d && t.rows.size() != d + 1) {
      throw Error(ErrorKind::DimensionMismatch, "data has " + std::to_string(t.rows.size()) +
                                                    " rows, model expects " + std::to_string(d) +
                                                    " features");
    }
    const std::size_t width = t.rows.front().size();
    out.data.resize(dim, static_cast<Index>(width));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const auto& row = t.rows[i];
      if (row.size() != width) {
        fail("line " + std::to_string(t.line_numbers[i]) + ": expected " + std::to_string(width) +
             " fields, found " + std::to_string(row.size()));
      }
      if (i == d) {
        out.labels = row;
      } else {
        for (std::size_t s = 0; s < width; ++s) {
          out.data(static_cast<Index>(i), static_cast<Index>(s)) = parse_or_fail(row[s], t.line_numbers[i]);
        }
      }
    }
  }
  return out;
}

Matrix<double> read_matrix_file(const std::string& path) {
  auto in = open(path);
  CsvTable t = read_table(in, 0);
  if (t.rows.empty()) fail("no rows in '" + path + "'");
  const std::size_t width = t.rows.front().size();
  Matrix<double> m(static_cast<Index>(t.rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i].size() != width) {
      fail("line " + std::to_string(t.line_numbers[i]) + ": expected " + std::to_string(width) + " fields");
    }
    for (std::size_t j = 0; j < width; ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = parse_or_fail(t.rows[i][j], t.line_numbers[i]);
    }
  }
  return m;
}

std::string format_number(double x) {
  std::ostringstream ss;
  ss << std::setprecision(17) << x;
  return ss.str();
}

void write_matrix(std::ostream& out, const Matrix<double>& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_number(m(i, j));
    }
    out << '\n';
  }
}

void write_dataset(std::ostream& out, const LabeledDataset<double>& dataset) {
  const auto& x = dataset.data();
  for (Index s = 0; s < x.cols(); ++s) {
    for (Index i = 0; i < x.rows(); ++i) out << format_number(x(i, s)) << ',';
    out << dataset.labels()[static_cast<std::size_t>(s)] << '\n';
  }
}

}  // namespace nulllda::io
