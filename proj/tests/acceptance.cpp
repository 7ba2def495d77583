// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "qqs/cli.hpp"
#include "qqs/gates.hpp"
#include "qqs/interrogation.hpp"
#include "qqs/oarray.hpp"
#include "qqs/pauli.hpp"
#include "qqs/structure.hpp"

namespace {

using namespace qqs;

constexpr double kUnbiasedTol = 1e-10;
constexpr double kWeylTol = 1e-12;
constexpr double kOverlapTol = 1e-9;
constexpr double kJointTol = 1e-9;

const PauliLabel kX{1, 0};
const PauliLabel kZ{0, 1};

struct Outcome {
  bool ok = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.ok) {
    o.ok = false;
    o.detail = what;
  }
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Complex omega(std::int64_t p, std::int64_t e) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(p));
}

Outcome gate_class_counts() {
  Outcome o;
  const std::vector<std::pair<std::int64_t, std::size_t>> expected = {{2, 1}, {3, 2}, {5, 4}, {7, 6}};
  for (const auto& [pv, count] : expected) {
    const auto family = enumerate_gate_classes(Prime(pv));
    require(o, family.size() == count, "p=" + std::to_string(pv) + " gave " + std::to_string(family.size()));
    require(o, !find_orthogonal_extension(family).has_value(), "p=" + std::to_string(pv) + " extends");
  }
  return o;
}

Outcome oa_reproduction() {
  Outcome o;
  std::ostringstream out, err;
  const int code = run_cli({"oa", "--build", "3"}, out, err);
  const std::string table_v = "0,0,0,0\n0,1,1,2\n0,2,2,1\n1,0,1,1\n1,1,2,0\n1,2,0,2\n2,0,2,2\n2,1,0,1\n2,2,1,0\n";
  require(o, code == 0 && out.str() == table_v, "oa --build 3 output differs");
  const auto oa = parse_csv(table_v, 3, 2);
  const auto report = check_strength(oa);
  require(o, report.ok && report.lambda == 1, "strength 2 with lambda 1 not verified");
  const auto squares = enumerate_latin_squares(Prime(3));
  require(o, squares.size() == 12, "expected 12 Latin squares of order 3");
  for (const auto& g : squares) {
    require(o, !verify_strength(oa.with_column(g.cells())), "an extra Latin-square column kept strength 2");
  }
  return o;
}

Outcome mub_suite() {
  Outcome o;
  for (std::int64_t pv : {2, 3, 5, 7}) {
    const Prime p(pv);
    const int n = static_cast<int>(pv);
    const auto bases = mub_bases(p);
    require(o, bases.size() == static_cast<std::size_t>(pv + 1), "wrong basis count");
    for (std::size_t a = 0; a < bases.size(); ++a) {
      require(o, orthonormality_error(bases[a]) < kUnbiasedTol, "basis not orthonormal");
      for (std::size_t b = a + 1; b < bases.size(); ++b) {
        double dev = 0.0;
        for (const auto& u : bases[a]) {
          for (const auto& v : bases[b]) dev = std::max(dev, std::abs(std::norm(u.dot(v)) - 1.0 / double(pv)));
        }
        require(o, dev < kUnbiasedTol, "p=" + std::to_string(pv) + " overlap deviation too large");
      }
    }
    const auto x = build_X(p);
    const auto z = build_Z(p);
    require(o, max_abs(z * x - omega(pv, 1) * x * z) < kWeylTol, "ZX != wXZ");
    require(o, max_abs(matrix_power(x, n) - identity(n)) < kWeylTol, "X^p != I");
    require(o, max_abs(matrix_power(z, n) - identity(n)) < kWeylTol, "Z^p != I");
  }
  return o;
}

Outcome gate_operator_correspondence() {
  Outcome o;
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    const auto bases = mub_bases(p);
    auto basis_for = [&](const PauliLabel& l) { return bases[l.x_exp == 0 ? 0 : static_cast<std::size_t>(1 + l.z_exp)]; };
    for (const auto& la : single_alphabet(p)) {
      for (const auto& lb : single_alphabet(p)) {
        for (int k = 1; k < pv; ++k) {
          const auto op = composite_operator({la, lb, k}, p);
          const auto gate = gate_linear(p, Felt(k, p));
          for (int a = 0; a < pv; ++a) {
            for (int b = 0; b < pv; ++b) {
              const CVector v = tensor(basis_for(la)[static_cast<std::size_t>(a)],
                                       basis_for(lb)[static_cast<std::size_t>(b)]);
              const auto e = eigen_exponent(op, v, p);
              require(o, e.has_value() && *e == gate(a, b),
                      to_string(CompositeLabel{la, lb, k}) + " at (" + std::to_string(a) + "," +
                          std::to_string(b) + ")");
            }
          }
        }
      }
    }
  }
  return o;
}

Outcome commuting_family_bound() {
  Outcome o;
  for (std::int64_t pv : {3, 5}) {
    const Prime p(pv);
    require(o, composite_labels(p).size() == static_cast<std::size_t>((pv + 1) * (pv + 1) * (pv - 1)),
            "label count");
    const auto fams = find_commuting_families(p);
    std::size_t largest = 0;
    for (const auto& f : fams) largest = std::max(largest, f.size());
    require(o, largest == static_cast<std::size_t>(pv + 1), "p=" + std::to_string(pv) + " max clique " +
                                                               std::to_string(largest));
    if (pv == 5) {
      const std::vector<CompositeLabel> family = {{kX, kX, 1},         {kZ, kZ, 4},         {{1, 1}, {1, 4}, 1},
                                                 {{1, 2}, {1, 3}, 1}, {{1, 3}, {1, 2}, 1}, {{1, 4}, {1, 1}, 1}};
      const bool found = std::any_of(fams.begin(), fams.end(), [&](const CommutingFamily& f) {
        return f.size() == family.size() &&
               std::all_of(family.begin(), family.end(),
                           [&](const CompositeLabel& l) { return std::find(f.begin(), f.end(), l) != f.end(); });
      });
      require(o, found, "the quinary family is not a maximal clique");
    }
  }
  return o;
}

int brute_partner(const PauliLabel& a, const PauliLabel& b, int m, const PauliLabel& c, const PauliLabel& d,
                  Prime p) {
  const auto left = composite_operator({a, b, m}, p);
  int found = 0;
  for (int n = 1; n < p.value(); ++n) {
    if (commutes(left, composite_operator({c, d, n}, p))) {
      if (found != 0) return -1;
      found = n;
    }
  }
  return found;
}

Outcome unique_partner_lemma() {
  Outcome o;
  const Prime p3(3);
  const auto a3 = single_alphabet(p3);
  for (const auto& a : a3) {
    for (const auto& b : a3) {
      for (const auto& c : a3) {
        for (const auto& d : a3) {
          if (a == c || b == d) continue;
          for (int m = 1; m < 3; ++m) {
            require(o, unique_partner(a, b, m, c, d, p3) == brute_partner(a, b, m, c, d, p3), "p=3 tuple");
          }
        }
      }
    }
  }
  std::mt19937_64 rng(6);
  for (std::int64_t pv : {5, 7}) {
    const Prime p(pv);
    const auto alphabet = single_alphabet(p);
    for (int trial = 0; trial < 200; ++trial) {
      const auto& a = alphabet[rng() % alphabet.size()];
      const auto& b = alphabet[rng() % alphabet.size()];
      auto c = a;
      auto d = b;
      while (c == a) c = alphabet[rng() % alphabet.size()];
      while (d == b) d = alphabet[rng() % alphabet.size()];
      const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(pv - 1));
      require(o, unique_partner(a, b, m, c, d, p) == brute_partner(a, b, m, c, d, p),
              "p=" + std::to_string(pv) + " tuple");
    }
  }
  return o;
}

Outcome single_system_scenario() {
  Outcome o;
  const Prime p(5);
  for (int m = 0; m < 5; ++m) {
    for (int n = 0; n < 5; ++n) {
      const auto trace = run_scenario(p, 1, {{LocalQuestion{0, kX}, m}, {LocalQuestion{0, kZ}, n}});
      const std::vector<double> sys = {trace[0].info.system_info, trace[1].info.system_info, trace[2].info.system_info};
      require(o, sys == std::vector<double>{0.0, 1.0, 1.0}, "system info trajectory");
      // per_question order: X, Z, XZ, ...
      require(o, trace[1].info.per_question[0].second == 1.0, "I(X) after step 1");
      require(o, trace[2].info.per_question[0].second == 0.0, "I(X) not erased");
      require(o, trace[2].info.per_question[1].second == 1.0, "I(Z) after step 2");
    }
  }
  return o;
}

Outcome composite_scenario() {
  Outcome o;
  const Prime p(5);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const int m = static_cast<int>(rng() % 5);
    const int n = static_cast<int>(rng() % 5);
    const auto trace = run_scenario(p, 2, {{CompositeQuestion{kX, kX, 1}, m}, {CompositeQuestion{kZ, kZ, 4}, n}});
    const std::vector<double> sys = {trace[0].info.system_info, trace[1].info.system_info, trace[2].info.system_info};
    require(o, sys == std::vector<double>{0.0, 1.0, 2.0}, "system info trajectory");

    InterrogationHistory h;
    h.records = {{CompositeQuestion{kX, kX, 1}, m, 1}, {CompositeQuestion{kZ, kZ, 4}, n, 2}};
    const auto rho = replay(h, p, 2).rho;
    const auto pxx = eigenprojector(composite_operator({kX, kX, 1}, p), m, p);
    const auto pzz = eigenprojector(composite_operator({kZ, kZ, 4}, p), n, p);
    const CMatrix joint = pzz * pxx;
    Eigen::Index col = 0;
    joint.colwise().norm().maxCoeff(&col);
    const CVector oracle = joint.col(col).normalized();
    require(o, std::abs(oracle.dot(rho * oracle)) > 1.0 - kOverlapTol, "state differs from projector oracle");
    // Closed-form vector: its Z (x) Z^4 exponent is the first argument.
    CVector closed_form = CVector::Zero(25);
    for (int r = 0; r < 5; ++r) {
      closed_form(r * 5 + static_cast<int>(mod_p((n - r) * 4, 5))) = omega(5, -static_cast<std::int64_t>(r) * m) / std::sqrt(5.0);
    }
    require(o, std::abs(closed_form.dot(rho * closed_form)) > 1.0 - kOverlapTol, "state differs from closed-form vector");

    const auto& derived = trace[2].derived;
    require(o, derived.size() == 4, "expected 4 derived questions");
    for (int i = 1; i <= 4 && derived.size() == 4; ++i) {
      const Question q = CompositeQuestion{{1, i}, {1, 5 - i}, 1};
      require(o, derived[static_cast<std::size_t>(i - 1)].first == q, "derived question order");
      require(o, derived[static_cast<std::size_t>(i - 1)].second == (m + i * n) % 5, "derived exponent m+in");
    }
  }
  return o;
}

Outcome joint_from_local_identity() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (std::int64_t pv : {2, 3}) {
    const Prime p(pv);
    const auto alphabet = single_alphabet(p);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const SystemState s{p, 2, random_density_matrix(static_cast<int>(pv * pv), rng)};
      for (const auto& a : alphabet) {
        for (const auto& b : alphabet) {
          for (int k = 1; k < pv; ++k) {
            const auto local = joint_from_local(s, a, b, k);
            const auto direct = outcome_distribution(s, CompositeQuestion{a, b, k});
            for (std::size_t c = 0; c < local.probs.size(); ++c) {
              worst = std::max(worst, std::abs(local.probs[c] - direct.probs[c]));
            }
          }
        }
      }
    }
    require(o, worst < kJointTol, "p=" + std::to_string(pv) + " deviation " + std::to_string(worst));
  }
  return o;
}

Outcome counting_identities() {
  Outcome o;
  for (std::int64_t pv : {2, 3, 5, 7}) {
    const Prime p(pv);
    for (int n = 1; n <= 4; ++n) {
      require(o, qm_cardinality(p, n) == qm_cardinality_by_layers(p, n), "closed form vs layers");
      require(o, dof(p, n) == qm_cardinality(p, n) * static_cast<std::uint64_t>(pv - 1), "dof");
    }
  }
  require(o, qm_cardinality(Prime(2), 2) == 15, "15");
  require(o, qm_cardinality(Prime(5), 2) == 156, "156");
  require(o, dof(Prime(5), 2) == 624, "624");
  return o;
}

Outcome erasure_and_retention() {
  Outcome o;
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    const auto alphabet = single_alphabet(p);
    for (const auto& a : alphabet) {
      for (const auto& b : alphabet) {
        if (a == b) continue;
        require(o, check_complementary_erasure(p, a, b), "erasure " + to_string(a) + "," + to_string(b));
      }
    }
    for (const auto& fam : find_commuting_families(p)) {
      for (const auto& l1 : fam) {
        for (const auto& l2 : fam) {
          require(o,
                  check_compatible_retention(p, 2, CompositeQuestion{l1.a, l1.b, l1.k},
                                             CompositeQuestion{l2.a, l2.b, l2.k}),
                  "retention " + to_string(l1) + " / " + to_string(l2));
        }
      }
    }
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 means no limit
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "gate-class counts 1,2,4,6 for p=2,3,5,7", 10.0, gate_class_counts},
      {2, "OA reproduction of the ternary combined table", 1.0, oa_reproduction},
      {3, "MUB suite for p=2,3,5,7", 1.0, mub_suite},
      {4, "gate-operator correspondence for p=2,3,5", 5.0, gate_operator_correspondence},
      {5, "commuting-family bound p+1 for p=3,5", 60.0, commuting_family_bound},
      {6, "unique-partner lemma vs brute force", 30.0, unique_partner_lemma},
      {7, "single-system scenario trajectory", 0.0, single_system_scenario},
      {8, "composite p=5 scenario", 0.0, composite_scenario},
      {9, "local-statistics identity on random states", 0.0, joint_from_local_identity},
      {10, "counting identities", 0.0, counting_identities},
      {11, "complementary erasure and compatible retention", 0.0, erasure_and_retention},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.limit_seconds > 0.0 && secs > c.limit_seconds) {
      o = {false, "exceeded " + std::to_string(c.limit_seconds) + " s"};
    }
    std::printf("%s criterion %2d: %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.ok ? "" : " - ", o.detail.c_str());
    failures += o.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
