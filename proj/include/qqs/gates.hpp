// p-ary logical gates: binary functions F_p x F_p -> F_p given by truth table.
//
// A gate is admissible when it is non-informative about either input alone
// (its table is a Latin square). Two admissible gates are mutually
// non-informative when their tables are orthogonal Latin squares.

#ifndef QQS_GATES_HPP
#define QQS_GATES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qqs/fpfield.hpp"

namespace qqs {

/// Immutable p x p truth table; (*this)(a, b) is the output for inputs (a, b).
class GateTable {
public:
  /// `cells` is row-major, cells[a * p + b]. Throws std::invalid_argument on
  /// wrong size or out-of-range entries.
  GateTable(Prime modulus, std::vector<int> cells);

  Prime modulus() const noexcept { return modulus_; }
  int order() const noexcept { return static_cast<int>(modulus_.value()); }
  int operator()(int a, int b) const { return cells_[static_cast<std::size_t>(a * order() + b)]; }
  /// Output of the gate on two outcomes; a table lookup.
  Felt apply(const Felt& a, const Felt& b) const;
  const std::vector<int>& cells() const noexcept { return cells_; }

  friend bool operator==(const GateTable& x, const GateTable& y) {
    return x.modulus_ == y.modulus_ && x.cells_ == y.cells_;
  }
  friend bool operator<(const GateTable& x, const GateTable& y) { return x.cells_ < y.cells_; }

private:
  Prime modulus_;
  std::vector<int> cells_;
};

/// Pairwise mutually non-informative admissible gates over one field.
class GateFamily {
public:
  /// Validates restriction 1 on every member, restriction 2 on every pair,
  /// and size <= p - 1.
  GateFamily(Prime modulus, std::vector<GateTable> gates);

  Prime modulus() const noexcept { return modulus_; }
  const std::vector<GateTable>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

private:
  Prime modulus_;
  std::vector<GateTable> gates_;
};

/// Q_a *_i Q_b = a + i b (mod p). i must be nonzero.
GateTable gate_linear(Prime p, const Felt& i);

/// Latin-square test: every row and every column is a bijection.
bool check_restriction1(const GateTable& g);

/// Orthogonality: each output pair (c1, c2) is hit by exactly one input pair.
bool check_restriction2(const GateTable& g1, const GateTable& g2);

/// True iff g2 = sigma o g1 for some permutation sigma of F_p.
bool gates_equivalent(const GateTable& g1, const GateTable& g2);

/// Relabels outputs so that g(a, 0) = a. Requires restriction 1.
GateTable canonicalize(const GateTable& g);

/// Index i with gates_equivalent(g, gate_linear(p, i)), if any.
std::optional<int> linear_gate_index(const GateTable& g);

/// Every Latin square of order p, in lexicographic order of cells. When
/// `canonical_only` is set, only squares with column 0 equal to the identity.
std::vector<GateTable> enumerate_latin_squares(Prime p, bool canonical_only = false);

/// Searches for an admissible gate orthogonal to every member of `family`.
/// Returns the first mate found in row-major backtracking order.
std::optional<GateTable> find_orthogonal_extension(const GateFamily& family);

/// Largest prime accepted by enumerate_gate_classes.
inline constexpr std::int64_t kMaxEnumerationPrime = 7;
/// Largest prime handled by exhaustive Latin-square generation.
inline constexpr std::int64_t kMaxExhaustivePrime = 3;

/// One canonical gate per equivalence class, forming a maximal pairwise
/// non-informative family. Exhaustive for p <= 3; for larger p the linear
/// family is built and maximality is confirmed by an extension search.
/// Ordered by linear index i, then lexicographically.
GateFamily enumerate_gate_classes(Prime p);

/// p lines of p space-separated outputs (row a lists b = 0..p-1).
std::string format_gate_text(const GateTable& g);
GateTable parse_gate_text(Prime p, std::string_view text);

/// Three-column truth table (Q_a, Q_b, output) in blocks of fixed Q_a.
std::string render_truth_table(const GateTable& g, std::string_view output_header);

}  // namespace qqs

#endif  // QQS_GATES_HPP
