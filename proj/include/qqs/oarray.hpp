// Orthogonal arrays OA(N, k, s, t) and their link to gate families.

#ifndef QQS_OARRAY_HPP
#define QQS_OARRAY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qqs/gates.hpp"

namespace qqs {

/// N x k array over levels {0, ..., s-1} with a claimed strength t.
class OrthogonalArray {
public:
  /// `data` is row-major. Throws std::invalid_argument on ragged input or
  /// entries outside [0, s).
  OrthogonalArray(int rows, int cols, int levels, int strength, std::vector<int> data);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int levels() const noexcept { return levels_; }
  int strength() const noexcept { return strength_; }
  int operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const std::vector<int>& data() const noexcept { return data_; }

  /// Copy with one extra column appended.
  OrthogonalArray with_column(const std::vector<int>& column) const;
  /// Copy restricted to the given columns, in the given order.
  OrthogonalArray select_columns(const std::vector<int>& columns) const;

  friend bool operator==(const OrthogonalArray&, const OrthogonalArray&) = default;

private:
  int rows_;
  int cols_;
  int levels_;
  int strength_;
  std::vector<int> data_;
};

/// First failing (column subset, tuple) found by verify_strength.
struct StrengthViolation {
  std::vector<int> columns;
  std::vector<int> tuple;
  int count = 0;
};

struct StrengthReport {
  bool ok = false;
  int lambda = 0;
  std::optional<StrengthViolation> violation;
};

/// Brute-force count over every t-column subset and every t-tuple, both in
/// lexicographic order. Throws std::invalid_argument when N is not a
/// multiple of s^t or t exceeds k.
StrengthReport check_strength(const OrthogonalArray& oa);
bool verify_strength(const OrthogonalArray& oa);

/// Columns [Q_a, Q_b, g_1(a,b), ..., g_m(a,b)], rows in lexicographic (a, b).
OrthogonalArray combine_gates_to_oa(const GateFamily& family);

/// Largest column count of a strength-2 OA with p^2 rows and p levels.
int max_columns_bound(Prime p);

std::string to_csv(const OrthogonalArray& oa);
/// Parses comma-separated integer rows; levels and strength come from the
/// caller since CSV does not carry them.
OrthogonalArray parse_csv(std::string_view text, int levels, int strength);

}  // namespace qqs

#endif  // QQS_OARRAY_HPP
