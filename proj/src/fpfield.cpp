#include "qqs/fpfield.hpp"

#include <string>

namespace qqs {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::int64_t value) : value_(value) {
  if (!is_prime(value)) {
    throw std::invalid_argument("prime required, got " + std::to_string(value));
  }
}

Felt::Felt(std::int64_t value, Prime modulus)
    : value_(mod_p(value, modulus.value())), modulus_(modulus) {}

namespace {

void require_same_field(const Felt& a, const Felt& b) {
  if (!(a.modulus() == b.modulus())) {
    throw ModulusMismatch("field elements from F_" + std::to_string(a.modulus().value()) +
                          " and F_" + std::to_string(b.modulus().value()));
  }
}

}  // namespace

Felt fp_add(const Felt& a, const Felt& b) {
  require_same_field(a, b);
  return Felt(a.value() + b.value(), a.modulus());
}

Felt fp_sub(const Felt& a, const Felt& b) {
  require_same_field(a, b);
  return Felt(a.value() - b.value(), a.modulus());
}

Felt fp_neg(const Felt& a) { return Felt(-a.value(), a.modulus()); }

Felt fp_mul(const Felt& a, const Felt& b) {
  require_same_field(a, b);
  const auto prod = static_cast<__int128>(a.value()) * b.value();
  return Felt(static_cast<std::int64_t>(prod % a.modulus().value()), a.modulus());
}

Felt fp_pow(Felt base, std::uint64_t exponent) {
  Felt result(1, base.modulus());
  while (exponent != 0) {
    if (exponent & 1U) result = fp_mul(result, base);
    base = fp_mul(base, base);
    exponent >>= 1U;
  }
  return result;
}

Felt fp_inv(const Felt& a) {
  if (a.is_zero()) throw std::domain_error("zero has no inverse in F_p");
  // Extended Euclid on (a, p).
  std::int64_t r0 = a.modulus().value(), r1 = a.value();
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return Felt(t0, a.modulus());
}

Felt fp_div(const Felt& a, const Felt& b) {
  require_same_field(a, b);
  return fp_mul(a, fp_inv(b));
}

std::ostream& operator<<(std::ostream& os, const Felt& x) { return os << x.value(); }

}  // namespace qqs
