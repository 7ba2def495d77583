// Arithmetic in the prime field F_p.
//
// Every element carries its modulus. Mixing elements of different fields is
// a hard error, never a silent reduction.

#ifndef QQS_FPFIELD_HPP
#define QQS_FPFIELD_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace qqs {

/// Raised when two field elements with different moduli meet.
class ModulusMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Deterministic trial division.
bool is_prime(std::int64_t n);

/// A verified prime modulus.
class Prime {
public:
  /// Throws std::invalid_argument unless `value` is prime.
  explicit Prime(std::int64_t value);

  std::int64_t value() const noexcept { return value_; }
  operator std::int64_t() const noexcept { return value_; }

  friend bool operator==(Prime a, Prime b) noexcept { return a.value_ == b.value_; }

private:
  std::int64_t value_;
};

/// Residue class in F_p, stored canonically in [0, p).
class Felt {
public:
  /// Reduces `value` mod p; negative inputs wrap around.
  Felt(std::int64_t value, Prime modulus);

  std::int64_t value() const noexcept { return value_; }
  Prime modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend bool operator==(const Felt& a, const Felt& b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }

private:
  std::int64_t value_;
  Prime modulus_;
};

Felt fp_add(const Felt& a, const Felt& b);
Felt fp_sub(const Felt& a, const Felt& b);
Felt fp_neg(const Felt& a);
Felt fp_mul(const Felt& a, const Felt& b);
/// Multiplicative inverse; throws std::domain_error for zero.
Felt fp_inv(const Felt& a);
/// a / b; throws std::domain_error when b is zero.
Felt fp_div(const Felt& a, const Felt& b);
Felt fp_pow(Felt base, std::uint64_t exponent);

inline Felt operator+(const Felt& a, const Felt& b) { return fp_add(a, b); }
inline Felt operator-(const Felt& a, const Felt& b) { return fp_sub(a, b); }
inline Felt operator-(const Felt& a) { return fp_neg(a); }
inline Felt operator*(const Felt& a, const Felt& b) { return fp_mul(a, b); }
inline Felt operator/(const Felt& a, const Felt& b) { return fp_div(a, b); }

/// Plain-integer residue helper for hot loops that never leave one field.
inline std::int64_t mod_p(std::int64_t v, std::int64_t p) {
  const std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::ostream& operator<<(std::ostream& os, const Felt& x);

}  // namespace qqs

#endif  // QQS_FPFIELD_HPP
