#include "qqs/pauli.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qqs {

Complex omega_power(Prime p, std::int64_t exponent) {
  const std::int64_t e = mod_p(exponent, p.value());
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(p.value());
  return {std::cos(angle), std::sin(angle)};
}

std::vector<PauliLabel> single_alphabet(Prime p) {
  std::vector<PauliLabel> out;
  out.push_back({1, 0});
  out.push_back({0, 1});
  for (int j = 1; j < p.value(); ++j) out.push_back({1, j});
  return out;
}

bool in_single_alphabet(const PauliLabel& l, Prime p) {
  if (l.x_exp == 0) return l.z_exp == 1;
  return l.x_exp == 1 && l.z_exp >= 0 && l.z_exp < p.value();
}

namespace {

std::string power_string(const char* base, int e) {
  if (e == 0) return "";
  if (e == 1) return base;
  return std::string(base) + "^" + std::to_string(e);
}

}  // namespace

std::string to_string(const PauliLabel& l) {
  const std::string s = power_string("X", l.x_exp) + power_string("Z", l.z_exp);
  return s.empty() ? "I" : s;
}

std::string to_string(const CompositeLabel& c) {
  return to_string(c.a) + " (x) (" + to_string(c.b) + ")^" + std::to_string(c.k);
}

PauliLabel parse_label(std::string_view text, Prime p) {
  PauliLabel l;
  if (text == "I") return l;
  std::size_t pos = 0;
  bool seen_x = false, seen_z = false;
  auto fail = [&]() -> PauliLabel {
    throw std::invalid_argument("bad Pauli label '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  while (pos < text.size()) {
    const char base = text[pos++];
    if ((base != 'X' && base != 'Z') || (base == 'X' && (seen_x || seen_z)) ||
        (base == 'Z' && seen_z)) {
      return fail();
    }
    std::int64_t e = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (pos == start || pos - start > 9) return fail();
      e = std::stoll(std::string(text.substr(start, pos - start)));
    }
    const int reduced = static_cast<int>(mod_p(e, p.value()));
    if (base == 'X') {
      l.x_exp = reduced;
      seen_x = true;
    } else {
      l.z_exp = reduced;
      seen_z = true;
    }
  }
  return l;
}

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix build_Z(Prime p) {
  const int n = static_cast<int>(p.value());
  CMatrix z = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) z(i, i) = omega_power(p, i);
  return z;
}

CMatrix build_X(Prime p) {
  const int n = static_cast<int>(p.value());
  CMatrix x = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) x((i + 1) % n, i) = 1.0;
  return x;
}

Basis computational_basis(Prime p) {
  const int n = static_cast<int>(p.value());
  Basis out;
  for (int i = 0; i < n; ++i) out.push_back(CVector::Unit(n, i));
  return out;
}

Basis fourier_basis(Prime p) {
  const int n = static_cast<int>(p.value());
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  Basis out;
  for (int j = 0; j < n; ++j) {
    CVector v(n);
    for (int k = 0; k < n; ++k) v(k) = norm * omega_power(p, -static_cast<std::int64_t>(k) * j);
    out.push_back(std::move(v));
  }
  return out;
}

CVector mub_vector(Prime p, int k, int j) {
  const int n = static_cast<int>(p.value());
  k = static_cast<int>(mod_p(k, n));
  j = static_cast<int>(mod_p(j, n));
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  CVector v(n);
  if (n == 2 && k == 1) {
    // -sigma_y |v> = (-1)^j |v>: j = 0 -> (|0> - i|1>)/sqrt2, j = 1 -> (|0> + i|1>)/sqrt2.
    const Complex i_unit(0.0, 1.0);
    v(0) = norm;
    v(1) = (j == 0 ? -i_unit : i_unit) * norm;
    return v;
  }
  for (std::int64_t i = 0; i < n; ++i) {
    // i(i-1)/2 is an exact integer; reduce only after forming it.
    const std::int64_t quad = k * (i * (i - 1) / 2);
    v(i) = norm * omega_power(p, -i * j + quad);
  }
  return v;
}

std::vector<Basis> mub_bases(Prime p) {
  std::vector<Basis> out;
  out.push_back(computational_basis(p));
  for (int k = 0; k < p.value(); ++k) {
    Basis b;
    for (int j = 0; j < p.value(); ++j) b.push_back(mub_vector(p, k, j));
    out.push_back(std::move(b));
  }
  return out;
}

double orthonormality_error(const Basis& basis) {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex ip = basis[i].dot(basis[j]);
      worst = std::max(worst, std::abs(ip - Complex(i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double unbiasedness_error(const Basis& a, const Basis& b, Prime p) {
  const double target = 1.0 / static_cast<double>(p.value());
  double worst = 0.0;
  for (const auto& u : a) {
    for (const auto& v : b) worst = std::max(worst, std::abs(std::norm(u.dot(v)) - target));
  }
  return worst;
}

bool check_unbiased(const Basis& a, const Basis& b, Prime p) {
  const auto n = static_cast<std::size_t>(p.value());
  if (a.size() != n || b.size() != n) throw std::invalid_argument("basis size differs from p");
  for (const auto* basis : {&a, &b}) {
    for (const auto& v : *basis) {
      if (v.size() != p.value()) throw std::invalid_argument("basis vector dimension differs from p");
    }
    if (orthonormality_error(*basis) > kTolerance) {
      throw std::invalid_argument("basis is not orthonormal");
    }
  }
  return unbiasedness_error(a, b, p) < kTolerance;
}

CMatrix matrix_power(const CMatrix& u, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative matrix power");
  CMatrix result = identity(static_cast<int>(u.rows()));
  CMatrix base = u;
  while (exponent != 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

CMatrix operator_from_label(const PauliLabel& l, Prime p) {
  return matrix_power(build_X(p), l.x_exp) * matrix_power(build_Z(p), l.z_exp);
}

CMatrix normalize_phase(const CMatrix& u, Prime p) {
  const int n = static_cast<int>(p.value());
  const CMatrix up = matrix_power(u, n);
  const Complex phase = up(0, 0);
  const CMatrix residual = up - phase * identity(static_cast<int>(u.rows()));
  if (std::abs(std::abs(phase) - 1.0) > kTolerance || residual.cwiseAbs().maxCoeff() > kTolerance) {
    throw std::domain_error("u^p is not a unit multiple of the identity");
  }
  if (std::abs(phase - Complex(1.0)) < kTolerance) return u;
  // Principal branch: arg in (-pi, pi], so a phase of -1 maps to +pi.
  double angle = std::arg(phase);
  if (angle <= -std::numbers::pi + kTolerance) angle = std::numbers::pi;
  const Complex root = std::polar(1.0, angle / static_cast<double>(n));
  return u / root;
}

CMatrix label_operator(const PauliLabel& l, Prime p) {
  return normalize_phase(operator_from_label(l, p), p);
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix composite_operator(const CompositeLabel& c, Prime p) {
  const int k = static_cast<int>(mod_p(c.k, p.value()));
  if (k == 0) throw std::invalid_argument("composite exponent k must be nonzero mod p");
  return tensor(label_operator(c.a, p), matrix_power(label_operator(c.b, p), k));
}

bool commutes(const CMatrix& m1, const CMatrix& m2, double tolerance) {
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols() || m1.rows() != m1.cols()) {
    throw std::invalid_argument("commutator of mismatched dimensions");
  }
  const CMatrix c = m1 * m2 - m2 * m1;
  return c.size() == 0 || c.cwiseAbs().maxCoeff() < tolerance;
}

std::vector<CMatrix> eigenprojectors(const CMatrix& u, Prime p) {
  const int n = static_cast<int>(p.value());
  const int dim = static_cast<int>(u.rows());
  std::vector<CMatrix> powers;
  powers.push_back(identity(dim));
  for (int t = 1; t <= n; ++t) powers.push_back(powers.back() * u);
  if ((powers[static_cast<std::size_t>(n)] - identity(dim)).cwiseAbs().maxCoeff() > kTolerance) {
    throw std::domain_error("eigenprojector needs u^p = I; normalize the phase first");
  }
  std::vector<CMatrix> out;
  for (int c = 0; c < n; ++c) {
    CMatrix proj = CMatrix::Zero(dim, dim);
    for (int t = 0; t < n; ++t) {
      proj += omega_power(p, -static_cast<std::int64_t>(c) * t) * powers[static_cast<std::size_t>(t)];
    }
    out.push_back(proj / static_cast<double>(n));
  }
  return out;
}

CMatrix eigenprojector(const CMatrix& u, int c, Prime p) {
  return eigenprojectors(u, p)[static_cast<std::size_t>(mod_p(c, p.value()))];
}

std::optional<int> eigen_exponent(const CMatrix& u, const CVector& v, Prime p, double tolerance) {
  const double nrm = v.squaredNorm();
  if (nrm < tolerance) return std::nullopt;
  const CVector uv = u * v;
  const Complex lambda = v.dot(uv) / nrm;
  if ((uv - lambda * v).norm() > tolerance * std::sqrt(nrm)) return std::nullopt;
  const double turns = std::arg(lambda) / (2.0 * std::numbers::pi) * static_cast<double>(p.value());
  const int c = static_cast<int>(mod_p(std::llround(turns), p.value()));
  if (std::abs(lambda - omega_power(p, c)) > tolerance) return std::nullopt;
  return c;
}

namespace {

nlohmann::json complex_array(const Complex* data, Eigen::Index count) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < count; ++i) arr.push_back({data[i].real(), data[i].imag()});
  return arr;
}

Complex complex_from_json(const nlohmann::json& pair) {
  if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("expected [re, im] pair");
  return {pair[0].get<double>(), pair[1].get<double>()};
}

}  // namespace

nlohmann::json matrix_to_json(const CMatrix& m) {
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const RowMajor rm = m;
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", complex_array(rm.data(), rm.size())}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows <= 0 || cols <= 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw std::invalid_argument("matrix JSON size does not match rows x cols");
  }
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(data[static_cast<std::size_t>(r * cols + c)]);
    }
  }
  return m;
}

nlohmann::json vector_to_json(const CVector& v) {
  return {{"dim", v.size()}, {"data", complex_array(v.data(), v.size())}};
}

CVector vector_from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (dim <= 0 || data.size() != static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("vector JSON size does not match dim");
  }
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_from_json(data[static_cast<std::size_t>(i)]);
  return v;
}

}  // namespace qqs
