#include "qqs/gates.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace qqs {

GateTable::GateTable(Prime modulus, std::vector<int> cells)
    : modulus_(modulus), cells_(std::move(cells)) {
  const auto p = static_cast<std::size_t>(modulus_.value());
  if (cells_.size() != p * p) {
    throw std::invalid_argument("gate table needs p*p = " + std::to_string(p * p) +
                                " cells, got " + std::to_string(cells_.size()));
  }
  for (int v : cells_) {
    if (v < 0 || v >= static_cast<int>(p)) {
      throw std::invalid_argument("gate output " + std::to_string(v) + " outside F_" +
                                  std::to_string(p));
    }
  }
}

Felt GateTable::apply(const Felt& a, const Felt& b) const {
  if (!(a.modulus() == modulus_) || !(b.modulus() == modulus_)) {
    throw ModulusMismatch("gate over F_" + std::to_string(modulus_.value()) +
                          " applied to foreign outcomes");
  }
  return Felt((*this)(static_cast<int>(a.value()), static_cast<int>(b.value())), modulus_);
}

GateFamily::GateFamily(Prime modulus, std::vector<GateTable> gates)
    : modulus_(modulus), gates_(std::move(gates)) {
  if (static_cast<std::int64_t>(gates_.size()) > modulus_.value() - 1) {
    throw std::invalid_argument("gate family larger than p - 1");
  }
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (!(gates_[i].modulus() == modulus_)) throw ModulusMismatch("gate family over mixed fields");
    if (!check_restriction1(gates_[i])) {
      throw std::invalid_argument("gate family member " + std::to_string(i) +
                                  " fails restriction 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!check_restriction2(gates_[j], gates_[i])) {
        throw std::invalid_argument("gate family members " + std::to_string(j) + " and " +
                                    std::to_string(i) + " fail restriction 2");
      }
    }
  }
}

GateTable gate_linear(Prime p, const Felt& i) {
  if (!(i.modulus() == p)) throw ModulusMismatch("gate index from a different field");
  if (i.is_zero()) throw std::invalid_argument("gate index 0 ignores Q_b");
  const int n = static_cast<int>(p.value());
  std::vector<int> cells(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      cells[static_cast<std::size_t>(a * n + b)] =
          static_cast<int>(mod_p(a + i.value() * b, n));
    }
  }
  return GateTable(p, std::move(cells));
}

bool check_restriction1(const GateTable& g) {
  const int n = g.order();
  std::vector<char> seen(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      if (seen[static_cast<std::size_t>(g(a, b))]++) return false;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < n; ++a) {
      if (seen[static_cast<std::size_t>(g(a, b))]++) return false;
    }
  }
  return true;
}

bool check_restriction2(const GateTable& g1, const GateTable& g2) {
  if (!(g1.modulus() == g2.modulus())) throw ModulusMismatch("restriction 2 across fields");
  const int n = g1.order();
  std::vector<int> hits(static_cast<std::size_t>(n * n), 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      ++hits[static_cast<std::size_t>(g1(a, b) * n + g2(a, b))];
    }
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

bool gates_equivalent(const GateTable& g1, const GateTable& g2) {
  if (!(g1.modulus() == g2.modulus())) throw ModulusMismatch("gate equivalence across fields");
  const int n = g1.order();
  std::vector<int> forward(static_cast<std::size_t>(n), -1);
  std::vector<int> backward(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < g1.cells().size(); ++c) {
    const int x = g1.cells()[c];
    const int y = g2.cells()[c];
    auto& fx = forward[static_cast<std::size_t>(x)];
    auto& by = backward[static_cast<std::size_t>(y)];
    if (fx == -1 && by == -1) {
      fx = y;
      by = x;
    } else if (fx != y || by != x) {
      return false;
    }
  }
  return true;
}

GateTable canonicalize(const GateTable& g) {
  if (!check_restriction1(g)) {
    throw std::invalid_argument("canonical form requires a gate satisfying restriction 1");
  }
  const int n = g.order();
  std::vector<int> relabel(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) relabel[static_cast<std::size_t>(g(a, 0))] = a;
  std::vector<int> cells = g.cells();
  for (int& c : cells) c = relabel[static_cast<std::size_t>(c)];
  return GateTable(g.modulus(), std::move(cells));
}

std::optional<int> linear_gate_index(const GateTable& g) {
  const Prime p = g.modulus();
  for (std::int64_t i = 1; i < p.value(); ++i) {
    if (gates_equivalent(g, gate_linear(p, Felt(i, p)))) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<GateTable> enumerate_latin_squares(Prime p, bool canonical_only) {
  const int n = static_cast<int>(p.value());
  std::vector<int> cells(static_cast<std::size_t>(n * n), -1);
  std::vector<char> row_used(static_cast<std::size_t>(n * n), 0);
  std::vector<char> col_used(static_cast<std::size_t>(n * n), 0);
  std::vector<GateTable> out;

  std::function<void(int)> fill = [&](int cell) {
    if (cell == n * n) {
      out.emplace_back(p, cells);
      return;
    }
    const int a = cell / n;
    const int b = cell % n;
    for (int v = 0; v < n; ++v) {
      if (canonical_only && b == 0 && v != a) continue;
      auto& r = row_used[static_cast<std::size_t>(a * n + v)];
      auto& c = col_used[static_cast<std::size_t>(b * n + v)];
      if (r || c) continue;
      r = c = 1;
      cells[static_cast<std::size_t>(cell)] = v;
      fill(cell + 1);
      r = c = 0;
    }
  };
  fill(0);
  return out;
}

std::optional<GateTable> find_orthogonal_extension(const GateFamily& family) {
  const Prime p = family.modulus();
  const int n = static_cast<int>(p.value());
  const auto& members = family.gates();
  const std::size_t m = members.size();

  // Orthogonality is invariant under output relabelling, so any mate can be
  // assumed to have column 0 equal to the identity.
  std::vector<int> cells(static_cast<std::size_t>(n * n), -1);
  std::vector<char> row_used(static_cast<std::size_t>(n * n), 0);
  std::vector<char> col_used(static_cast<std::size_t>(n * n), 0);
  // pair_used[k][(member output) * n + mate output]
  std::vector<std::vector<char>> pair_used(m, std::vector<char>(static_cast<std::size_t>(n * n), 0));

  std::function<bool(int)> fill = [&](int cell) -> bool {
    if (cell == n * n) return true;
    const int a = cell / n;
    const int b = cell % n;
    for (int v = 0; v < n; ++v) {
      if (b == 0 && v != a) continue;
      auto& r = row_used[static_cast<std::size_t>(a * n + v)];
      auto& c = col_used[static_cast<std::size_t>(b * n + v)];
      if (r || c) continue;
      bool free = true;
      for (std::size_t k = 0; k < m && free; ++k) {
        free = !pair_used[k][static_cast<std::size_t>(members[k](a, b) * n + v)];
      }
      if (!free) continue;
      r = c = 1;
      for (std::size_t k = 0; k < m; ++k) {
        pair_used[k][static_cast<std::size_t>(members[k](a, b) * n + v)] = 1;
      }
      cells[static_cast<std::size_t>(cell)] = v;
      if (fill(cell + 1)) return true;
      r = c = 0;
      for (std::size_t k = 0; k < m; ++k) {
        pair_used[k][static_cast<std::size_t>(members[k](a, b) * n + v)] = 0;
      }
    }
    return false;
  };
  if (!fill(0)) return std::nullopt;
  return GateTable(p, cells);
}

namespace {

// Orders canonical gates by linear index, non-linear ones last.
void sort_family(std::vector<GateTable>& gates) {
  auto key = [](const GateTable& g) {
    const auto i = linear_gate_index(g);
    return i ? *i : std::numeric_limits<int>::max();
  };
  std::stable_sort(gates.begin(), gates.end(), [&](const GateTable& x, const GateTable& y) {
    const int kx = key(x), ky = key(y);
    if (kx != ky) return kx < ky;
    return x < y;
  });
}

// Largest pairwise-orthogonal subset, first found in lexicographic order.
std::vector<GateTable> largest_orthogonal_subset(const std::vector<GateTable>& pool) {
  std::vector<std::size_t> best, current;
  std::function<void(std::size_t)> grow = [&](std::size_t start) {
    if (current.size() > best.size()) best = current;
    for (std::size_t i = start; i < pool.size(); ++i) {
      const bool ok = std::all_of(current.begin(), current.end(), [&](std::size_t j) {
        return check_restriction2(pool[j], pool[i]);
      });
      if (!ok) continue;
      current.push_back(i);
      grow(i + 1);
      current.pop_back();
    }
  };
  grow(0);
  std::vector<GateTable> out;
  for (std::size_t i : best) out.push_back(pool[i]);
  return out;
}

}  // namespace

GateFamily enumerate_gate_classes(Prime p) {
  if (p.value() > kMaxEnumerationPrime) {
    throw std::invalid_argument("gate enumeration supports p <= " +
                                std::to_string(kMaxEnumerationPrime));
  }
  std::vector<GateTable> gates;
  if (p.value() <= kMaxExhaustivePrime) {
    gates = largest_orthogonal_subset(enumerate_latin_squares(p, /*canonical_only=*/true));
  } else {
    for (std::int64_t i = 1; i < p.value(); ++i) gates.push_back(gate_linear(p, Felt(i, p)));
  }
  sort_family(gates);
  GateFamily family(p, std::move(gates));
  if (find_orthogonal_extension(family)) {
    throw std::logic_error("gate family of F_" + std::to_string(p.value()) + " is not maximal");
  }
  return family;
}

std::string format_gate_text(const GateTable& g) {
  std::ostringstream os;
  const int n = g.order();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (b) os << ' ';
      os << g(a, b);
    }
    os << '\n';
  }
  return os.str();
}

GateTable parse_gate_text(Prime p, std::string_view text) {
  const int n = static_cast<int>(p.value());
  std::istringstream is{std::string(text)};
  std::vector<int> cells;
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    int v = 0, count = 0;
    while (ls >> v) {
      cells.push_back(v);
      ++count;
    }
    if (!ls.eof()) throw std::invalid_argument("non-numeric gate entry on row " + std::to_string(rows));
    if (count != n) {
      throw std::invalid_argument("gate row " + std::to_string(rows) + " has " +
                                  std::to_string(count) + " entries, expected " + std::to_string(n));
    }
    ++rows;
  }
  if (rows != n) {
    throw std::invalid_argument("gate table has " + std::to_string(rows) + " rows, expected " +
                                std::to_string(n));
  }
  return GateTable(p, std::move(cells));
}

std::string render_truth_table(const GateTable& g, std::string_view output_header) {
  const int n = g.order();
  const int w = std::max<int>(3, static_cast<int>(output_header.size()));
  std::ostringstream os;
  const std::string rule = "+-----+-----+" + std::string(static_cast<std::size_t>(w + 2), '-') + "+\n";
  os << rule << "| Q_a | Q_b | " << std::left << std::setw(w) << output_header << " |\n" << rule;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      os << "| " << std::setw(3) << a << " | " << std::setw(3) << b << " | " << std::setw(w)
         << g(a, b) << " |\n";
    }
    os << rule;
  }
  return os.str();
}

}  // namespace qqs
