#include "qqs/structure.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qqs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using Wide = unsigned __int128;

std::uint64_t narrow(Wide v) {
  if (v > static_cast<Wide>(UINT64_MAX)) throw std::overflow_error("count exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

Wide checked_mul(Wide a, Wide b) {
  if (a != 0 && b > ~static_cast<Wide>(0) / a) {
    throw std::overflow_error("count exceeds 128-bit intermediate");
  }
  return a * b;
}

Wide wide_pow(std::uint64_t base, int e) {
  Wide r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

void require_bodies(int n_bodies) {
  if (n_bodies < 1) throw std::invalid_argument("body count must be >= 1");
}

// Symplectic form <u, v> = u.z v.x - u.x v.z; A B = w^<A,B> B A for labels.
std::int64_t weyl_phase(const PauliLabel& u, const PauliLabel& v) {
  return static_cast<std::int64_t>(u.z_exp) * v.x_exp - static_cast<std::int64_t>(u.x_exp) * v.z_exp;
}

}  // namespace

std::string to_string(const Question& q) {
  return std::visit(Overloaded{
                        [](const LocalQuestion& l) {
                          return to_string(l.label) + "@" + std::to_string(l.subsystem);
                        },
                        [](const CompositeQuestion& c) { return to_string(c.label()); },
                    },
                    q);
}

QuestionSet single_QM(Prime p) {
  QuestionSet set{p, 1, {}};
  for (const auto& l : single_alphabet(p)) set.members.emplace_back(LocalQuestion{0, l});
  return set;
}

QuestionSet composite_QM(Prime p) {
  QuestionSet set{p, 2, {}};
  const auto alphabet = single_alphabet(p);
  for (int s = 0; s < 2; ++s) {
    for (const auto& l : alphabet) set.members.emplace_back(LocalQuestion{s, l});
  }
  for (const auto& c : composite_labels(p)) set.members.emplace_back(CompositeQuestion{c.a, c.b, c.k});
  return set;
}

std::uint64_t qm_cardinality(Prime p, int n_bodies) {
  require_bodies(n_bodies);
  const auto pv = static_cast<std::uint64_t>(p.value());
  return narrow((wide_pow(pv, 2 * n_bodies) - 1) / (pv - 1));
}

std::uint64_t qm_cardinality_by_layers(Prime p, int n_bodies) {
  require_bodies(n_bodies);
  const auto pv = static_cast<std::uint64_t>(p.value());
  Wide total = 0;
  Wide binom = 1;  // C(N, k), updated incrementally
  for (int k = 1; k <= n_bodies; ++k) {
    binom = checked_mul(binom, static_cast<Wide>(n_bodies - k + 1)) / static_cast<Wide>(k);
    total += checked_mul(checked_mul(binom, wide_pow(pv + 1, k)), wide_pow(pv - 1, k - 1));
  }
  return narrow(total);
}

std::uint64_t dof(Prime p, int n_bodies) {
  require_bodies(n_bodies);
  return narrow(wide_pow(static_cast<std::uint64_t>(p.value()), 2 * n_bodies) - 1);
}

bool labels_commute(const CompositeLabel& u, const CompositeLabel& v, Prime p) {
  const std::int64_t e = weyl_phase(u.a, v.a) +
                         static_cast<std::int64_t>(u.k) * v.k * weyl_phase(u.b, v.b);
  return mod_p(e, p.value()) == 0;
}

int unique_partner(const PauliLabel& a, const PauliLabel& b, int m, const PauliLabel& c,
                   const PauliLabel& d, Prime p) {
  for (const auto* l : {&a, &b, &c, &d}) {
    if (!in_single_alphabet(*l, p)) {
      throw std::invalid_argument("label " + to_string(*l) + " is outside the question alphabet");
    }
  }
  if (a == c) throw std::invalid_argument("unique partner needs A != C");
  if (b == d) throw std::invalid_argument("unique partner needs B != D");
  const Felt mf(m, p);
  if (mf.is_zero()) throw std::invalid_argument("unique partner needs m != 0");
  // n = (i1 k2 - i2 k1) / (m (j2 l1 - j1 l2)), A = X^i1 Z^i2, B = X^j1 Z^j2, ...
  const Felt num(static_cast<std::int64_t>(a.x_exp) * c.z_exp -
                     static_cast<std::int64_t>(a.z_exp) * c.x_exp,
                 p);
  const Felt den(static_cast<std::int64_t>(b.z_exp) * d.x_exp -
                     static_cast<std::int64_t>(b.x_exp) * d.z_exp,
                 p);
  return static_cast<int>((num / (mf * den)).value());
}

std::vector<CompositeLabel> composite_labels(Prime p) {
  std::vector<CompositeLabel> out;
  const auto alphabet = single_alphabet(p);
  for (const auto& a : alphabet) {
    for (const auto& b : alphabet) {
      for (int k = 1; k < p.value(); ++k) out.push_back({a, b, k});
    }
  }
  return out;
}

std::vector<CommutingFamily> find_commuting_families(Prime p) {
  if (p.value() > kMaxFamilySearchPrime) {
    throw std::invalid_argument("exhaustive family search supports p <= " +
                                std::to_string(kMaxFamilySearchPrime));
  }
  const auto labels = composite_labels(p);
  const std::size_t n = labels.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      adj[i][j] = adj[j][i] = labels_commute(labels[i], labels[j], p) ? 1 : 0;
    }
  }

  std::vector<std::vector<std::size_t>> cliques;
  std::vector<std::size_t> r;
  std::function<void(std::vector<std::size_t>, std::vector<std::size_t>)> expand =
      [&](std::vector<std::size_t> cand, std::vector<std::size_t> excl) {
        if (cand.empty() && excl.empty()) {
          auto c = r;
          std::sort(c.begin(), c.end());
          cliques.push_back(std::move(c));
          return;
        }
        // Pivot: vertex of cand u excl with the most neighbours in cand.
        std::size_t pivot = cand.empty() ? excl.front() : cand.front();
        std::size_t best = 0;
        for (const auto* set : {&cand, &excl}) {
          for (std::size_t u : *set) {
            std::size_t deg = 0;
            for (std::size_t v : cand) deg += adj[u][v];
            if (deg > best) {
              best = deg;
              pivot = u;
            }
          }
        }
        std::vector<std::size_t> branch;
        for (std::size_t v : cand) {
          if (!adj[pivot][v]) branch.push_back(v);
        }
        for (std::size_t v : branch) {
          std::vector<std::size_t> next_cand, next_excl;
          for (std::size_t u : cand) {
            if (adj[v][u]) next_cand.push_back(u);
          }
          for (std::size_t u : excl) {
            if (adj[v][u]) next_excl.push_back(u);
          }
          r.push_back(v);
          expand(std::move(next_cand), std::move(next_excl));
          r.pop_back();
          cand.erase(std::find(cand.begin(), cand.end(), v));
          excl.push_back(v);
        }
      };
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  expand(all, {});

  std::sort(cliques.begin(), cliques.end());
  std::vector<CommutingFamily> out;
  out.reserve(cliques.size());
  for (const auto& c : cliques) {
    CommutingFamily fam;
    for (std::size_t i : c) fam.push_back(labels[i]);
    out.push_back(std::move(fam));
  }
  return out;
}

bool check_corollary4(const CompositeQuestion& q1, const CompositeQuestion& q2, Prime p) {
  if (q1 == q2) return true;
  const bool shared = q1.a == q2.a || q1.b == q2.b;
  if (!shared) return true;
  return !labels_commute(q1.label(), q2.label(), p);
}

std::vector<GateTable> family_outcome_gates(const CommutingFamily& family, std::size_t first,
                                            std::size_t second, Prime p) {
  if (first >= family.size() || second >= family.size() || first == second) {
    throw std::invalid_argument("family_outcome_gates needs two distinct member indices");
  }
  const int n = static_cast<int>(p.value());
  std::vector<CMatrix> ops;
  for (const auto& l : family) ops.push_back(composite_operator(l, p));
  const auto p1 = eigenprojectors(ops[first], p);
  const auto p2 = eigenprojectors(ops[second], p);

  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i != first && i != second) others.push_back(i);
  }
  std::vector<std::vector<int>> cells(others.size(), std::vector<int>(static_cast<std::size_t>(n * n)));
  for (int m = 0; m < n; ++m) {
    for (int q = 0; q < n; ++q) {
      const CMatrix joint = p2[static_cast<std::size_t>(q)] * p1[static_cast<std::size_t>(m)];
      // Rank-one joint eigenspace: take its largest column as the eigenvector.
      Eigen::Index col = 0;
      joint.colwise().norm().maxCoeff(&col);
      const CVector v = joint.col(col).normalized();
      for (std::size_t o = 0; o < others.size(); ++o) {
        const auto e = eigen_exponent(ops[others[o]], v, p);
        if (!e) {
          throw std::domain_error(to_string(family[others[o]]) +
                                  " has no definite outcome on the joint eigenvector");
        }
        cells[o][static_cast<std::size_t>(m * n + q)] = *e;
      }
    }
  }
  std::vector<GateTable> out;
  for (auto& c : cells) out.emplace_back(p, std::move(c));
  return out;
}

}  // namespace qqs
