// Generalized Pauli operators, mutually unbiased bases and composite
// operators in prime dimension.
//
// Conventions:
//   X|i> = |i+1>,  Z|i> = w^i |i>,  w = exp(2 pi i / p),  ZX = w XZ.
//   A label (x, z) denotes X^x Z^z in that product order.
//   Tensor products are row-major: (i_A, i_B) -> i_A * dim_B + i_B.
//   Question operators are phase-normalized so that U^p = I; an outcome c
//   is the eigenvalue w^c of the normalized operator.

#ifndef QQS_PAULI_HPP
#define QQS_PAULI_HPP

#include <complex>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qqs/fpfield.hpp"

namespace qqs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Basis = std::vector<CVector>;

/// Tolerance for every floating-point comparison in the library.
inline constexpr double kTolerance = 1e-10;

/// w^e for w = exp(2 pi i / p). The exponent is reduced mod p first.
Complex omega_power(Prime p, std::int64_t exponent);

/// Symbolic X^x Z^z with exponents in [0, p).
struct PauliLabel {
  int x_exp = 0;
  int z_exp = 0;

  friend auto operator<=>(const PauliLabel&, const PauliLabel&) = default;
};

/// A (x) B^k.
struct CompositeLabel {
  PauliLabel a;
  PauliLabel b;
  int k = 1;

  friend auto operator<=>(const CompositeLabel&, const CompositeLabel&) = default;
};

/// The p + 1 single-system question labels in order X, Z, XZ, XZ^2, ..., XZ^{p-1}.
std::vector<PauliLabel> single_alphabet(Prime p);
bool in_single_alphabet(const PauliLabel& l, Prime p);

/// "X", "Z", "XZ", "XZ^3", "I", "Z^2", "X^2Z" ...
std::string to_string(const PauliLabel& l);
/// "XZ^2 (x) (XZ^3)^1"
std::string to_string(const CompositeLabel& c);
/// Inverse of to_string(PauliLabel); exponents are reduced mod p.
PauliLabel parse_label(std::string_view text, Prime p);

CMatrix build_Z(Prime p);
CMatrix build_X(Prime p);
CMatrix identity(int dim);

/// |j~> = p^{-1/2} sum_k w^{-kj} |k>, an eigenvector of X with eigenvalue w^j.
Basis fourier_basis(Prime p);
Basis computational_basis(Prime p);

/// Eigenvector of (phase-normalized) XZ^k with eigenvalue w^j. For odd p this
/// is p^{-1/2} sum_i w^{-ij} w^{k i(i-1)/2} |i>; for p = 2 and k = 1 the
/// eigenvectors of -i XZ = -sigma_y are used.
CVector mub_vector(Prime p, int k, int j);

/// p + 1 bases: index 0 is the Z basis, index 1 + k is the XZ^k basis.
std::vector<Basis> mub_bases(Prime p);

/// Largest |<a_i|a_j> - delta_ij| over the basis.
double orthonormality_error(const Basis& basis);
/// Largest | |<a_i|b_j>|^2 - 1/p | over all pairs.
double unbiasedness_error(const Basis& a, const Basis& b, Prime p);
/// Throws std::invalid_argument if either basis is not orthonormal.
bool check_unbiased(const Basis& a, const Basis& b, Prime p);

/// X^x Z^z with no phase adjustment.
CMatrix operator_from_label(const PauliLabel& l, Prime p);

/// If u^p = phase * I, returns u / phase^{1/p} using the principal root.
/// Throws std::domain_error when u^p is not proportional to the identity.
CMatrix normalize_phase(const CMatrix& u, Prime p);

/// Phase-normalized X^x Z^z.
CMatrix label_operator(const PauliLabel& l, Prime p);

CMatrix tensor(const CMatrix& a, const CMatrix& b);
CMatrix matrix_power(const CMatrix& u, int exponent);

/// label_operator(a) (x) label_operator(b)^k. Requires k != 0 mod p.
CMatrix composite_operator(const CompositeLabel& c, Prime p);

/// ||m1 m2 - m2 m1||_max < tolerance. Throws on dimension mismatch.
bool commutes(const CMatrix& m1, const CMatrix& m2, double tolerance = kTolerance);

/// P_c = (1/p) sum_t w^{-ct} u^t. Requires u^p = I within tolerance.
CMatrix eigenprojector(const CMatrix& u, int c, Prime p);
/// All p projectors, indexed by exponent.
std::vector<CMatrix> eigenprojectors(const CMatrix& u, Prime p);

/// Exponent c with u v = w^c v, or nullopt if v is not such an eigenvector.
std::optional<int> eigen_exponent(const CMatrix& u, const CVector& v, Prime p,
                                  double tolerance = 1e-9);

/// {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);
/// {"dim": n, "data": [[re, im], ...]}
nlohmann::json vector_to_json(const CVector& v);
CVector vector_from_json(const nlohmann::json& j);

}  // namespace qqs

#endif  // QQS_PAULI_HPP
