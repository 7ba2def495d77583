#include "qqs/oarray.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qqs {

OrthogonalArray::OrthogonalArray(int rows, int cols, int levels, int strength,
                                 std::vector<int> data)
    : rows_(rows), cols_(cols), levels_(levels), strength_(strength), data_(std::move(data)) {
  if (rows_ <= 0 || cols_ <= 0 || levels_ <= 0 || strength_ <= 0) {
    throw std::invalid_argument("orthogonal array dimensions must be positive");
  }
  if (data_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
    throw std::invalid_argument("orthogonal array data does not match rows x cols");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (data_[i] < 0 || data_[i] >= levels_) {
      throw std::invalid_argument("entry " + std::to_string(data_[i]) + " at row " +
                                  std::to_string(i / static_cast<std::size_t>(cols_)) +
                                  " outside levels [0, " + std::to_string(levels_) + ")");
    }
  }
}

OrthogonalArray OrthogonalArray::with_column(const std::vector<int>& column) const {
  if (column.size() != static_cast<std::size_t>(rows_)) {
    throw std::invalid_argument("appended column has wrong length");
  }
  std::vector<int> out;
  out.reserve(data_.size() + column.size());
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out.push_back((*this)(r, c));
    out.push_back(column[static_cast<std::size_t>(r)]);
  }
  return OrthogonalArray(rows_, cols_ + 1, levels_, strength_, std::move(out));
}

OrthogonalArray OrthogonalArray::select_columns(const std::vector<int>& columns) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(rows_) * columns.size());
  for (int r = 0; r < rows_; ++r) {
    for (int c : columns) {
      if (c < 0 || c >= cols_) throw std::out_of_range("column index out of range");
      out.push_back((*this)(r, c));
    }
  }
  return OrthogonalArray(rows_, static_cast<int>(columns.size()), levels_, strength_,
                         std::move(out));
}

StrengthReport check_strength(const OrthogonalArray& oa) {
  const int t = oa.strength();
  const int s = oa.levels();
  if (t > oa.cols()) throw std::invalid_argument("strength exceeds column count");
  long long tuples = 1;
  for (int i = 0; i < t; ++i) tuples *= s;
  if (oa.rows() % tuples != 0) {
    throw std::invalid_argument("row count " + std::to_string(oa.rows()) +
                                " is not a multiple of s^t = " + std::to_string(tuples));
  }
  StrengthReport report;
  report.lambda = static_cast<int>(oa.rows() / tuples);

  std::vector<int> cols(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) cols[static_cast<std::size_t>(i)] = i;
  std::vector<int> counts(static_cast<std::size_t>(tuples));

  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int r = 0; r < oa.rows(); ++r) {
      long long idx = 0;
      for (int c : cols) idx = idx * s + oa(r, c);
      ++counts[static_cast<std::size_t>(idx)];
    }
    for (long long idx = 0; idx < tuples; ++idx) {
      if (counts[static_cast<std::size_t>(idx)] == report.lambda) continue;
      StrengthViolation v;
      v.columns = cols;
      v.tuple.assign(static_cast<std::size_t>(t), 0);
      long long rest = idx;
      for (int i = t - 1; i >= 0; --i) {
        v.tuple[static_cast<std::size_t>(i)] = static_cast<int>(rest % s);
        rest /= s;
      }
      v.count = counts[static_cast<std::size_t>(idx)];
      report.violation = std::move(v);
      return report;
    }
    // Next t-subset in lexicographic order.
    int i = t - 1;
    while (i >= 0 && cols[static_cast<std::size_t>(i)] == oa.cols() - t + i) --i;
    if (i < 0) break;
    ++cols[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < t; ++j) {
      cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  report.ok = true;
  return report;
}

bool verify_strength(const OrthogonalArray& oa) { return check_strength(oa).ok; }

OrthogonalArray combine_gates_to_oa(const GateFamily& family) {
  if (family.size() == 0) throw std::invalid_argument("cannot build an array from an empty family");
  const int n = static_cast<int>(family.modulus().value());
  const int k = static_cast<int>(family.size()) + 2;
  std::vector<int> data;
  data.reserve(static_cast<std::size_t>(n * n * k));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      data.push_back(a);
      data.push_back(b);
      for (const auto& g : family.gates()) data.push_back(g(a, b));
    }
  }
  return OrthogonalArray(n * n, k, n, 2, std::move(data));
}

int max_columns_bound(Prime p) { return static_cast<int>(p.value()) + 1; }

std::string to_csv(const OrthogonalArray& oa) {
  std::ostringstream os;
  for (int r = 0; r < oa.rows(); ++r) {
    for (int c = 0; c < oa.cols(); ++c) {
      if (c) os << ',';
      os << oa(r, c);
    }
    os << '\n';
  }
  return os.str();
}

OrthogonalArray parse_csv(std::string_view text, int levels, int strength) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<int> data;
  int rows = 0;
  int cols = -1;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string field;
    int count = 0;
    while (std::getline(ls, field, ',')) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(field, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed CSV field '" + field + "' on line " +
                                    std::to_string(rows + 1));
      }
      if (field.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument("malformed CSV field '" + field + "' on line " +
                                    std::to_string(rows + 1));
      }
      data.push_back(v);
      ++count;
    }
    if (cols == -1) cols = count;
    if (count != cols) {
      throw std::invalid_argument("CSV line " + std::to_string(rows + 1) + " has " +
                                  std::to_string(count) + " fields, expected " + std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) throw std::invalid_argument("empty CSV");
  return OrthogonalArray(rows, cols, levels, strength, std::move(data));
}

}  // namespace qqs
