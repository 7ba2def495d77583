// The question-set layer: maximal determining question sets, their counts,
// commutation between composite questions, and maximal commuting families.

#ifndef QQS_STRUCTURE_HPP
#define QQS_STRUCTURE_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qqs/gates.hpp"
#include "qqs/pauli.hpp"

namespace qqs {

/// A question asked of one subsystem.
struct LocalQuestion {
  int subsystem = 0;
  PauliLabel label;

  friend auto operator<=>(const LocalQuestion&, const LocalQuestion&) = default;
};

/// Q_a *_gate Q_b, realized as A (x) B^gate.
struct CompositeQuestion {
  PauliLabel a;
  PauliLabel b;
  int gate = 1;

  CompositeLabel label() const { return {a, b, gate}; }
  friend auto operator<=>(const CompositeQuestion&, const CompositeQuestion&) = default;
};

using Question = std::variant<LocalQuestion, CompositeQuestion>;

std::string to_string(const Question& q);

struct QuestionSet {
  Prime modulus;
  int bodies = 1;
  std::vector<Question> members;
};

/// The p + 1 local questions X, Z, XZ, ..., XZ^{p-1} on a single system.
QuestionSet single_QM(Prime p);

/// Locals on A, locals on B, then every Q_a *_i Q_b; (p+1)(p^2+1) members.
QuestionSet composite_QM(Prime p);

/// (p^{2N} - 1)/(p - 1). Throws std::overflow_error past 64 bits.
std::uint64_t qm_cardinality(Prime p, int n_bodies);
/// sum_k C(N,k) (p+1)^k (p-1)^{k-1}, computed term by term.
std::uint64_t qm_cardinality_by_layers(Prime p, int n_bodies);
/// p^{2N} - 1.
std::uint64_t dof(Prime p, int n_bodies);

/// Exact commutation test from the Weyl exponents of the two labels.
bool labels_commute(const CompositeLabel& u, const CompositeLabel& v, Prime p);

/// The unique n in F_p^* with [A (x) B^m, C (x) D^n] = 0, from
/// n = (i1 k2 - i2 k1) / (m (j2 l1 - j1 l2)). Requires A != C, B != D,
/// m != 0 and all labels in the single-system alphabet.
int unique_partner(const PauliLabel& a, const PauliLabel& b, int m, const PauliLabel& c,
                   const PauliLabel& d, Prime p);

/// Every A (x) B^k with A, B in the single alphabet and k in F_p^*, ordered
/// by (A, B, k) in alphabet order.
std::vector<CompositeLabel> composite_labels(Prime p);

inline constexpr std::int64_t kMaxFamilySearchPrime = 5;

using CommutingFamily = std::vector<CompositeLabel>;

/// All maximal cliques of the commutation graph over composite_labels(p),
/// via Bron-Kerbosch with pivoting. Members of each clique follow label
/// order; cliques are sorted lexicographically by member index.
std::vector<CommutingFamily> find_commuting_families(Prime p);

/// True iff the "shared component implies incompatible" claim holds for the
/// pair: if the questions share their first or their second local question,
/// their operators must not commute unless the questions are identical.
bool check_corollary4(const CompositeQuestion& q1, const CompositeQuestion& q2, Prime p);

/// For a commuting family of size p + 1, fixes members `first` and `second`
/// and tabulates, for every other member, its outcome as a function of the
/// two fixed outcomes (row = first outcome, column = second outcome). The
/// outcomes are read from the joint eigenvectors of the operators.
std::vector<GateTable> family_outcome_gates(const CommutingFamily& family, std::size_t first,
                                            std::size_t second, Prime p);

}  // namespace qqs

#endif  // QQS_STRUCTURE_HPP
