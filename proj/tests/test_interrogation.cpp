#include "qqs/interrogation.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

namespace qqs {
namespace {

const PauliLabel kX{1, 0};
const PauliLabel kZ{0, 1};

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Complex omega(std::int64_t p, std::int64_t e) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(p));
}

bool is_uniform(const OutcomeDistribution& d, double tol = 1e-10) {
  const double u = 1.0 / static_cast<double>(d.probs.size());
  return std::all_of(d.probs.begin(), d.probs.end(), [&](double v) { return std::abs(v - u) < tol; });
}

// The post-measurement vector in closed form, with r running over the first
// ket: sum_r w^{-r b} |r>|(a - r)/4>. Here a is the Z (x) Z^4 exponent and b
// the X (x) X exponent.
CVector closed_form_entangled_vector(int a, int b) {
  CVector v = CVector::Zero(25);
  for (int r = 0; r < 5; ++r) {
    const int second = static_cast<int>(mod_p(static_cast<std::int64_t>(a - r) * 4, 5));  // 4^-1 = 4
    v(r * 5 + second) = omega(5, -static_cast<std::int64_t>(r) * b) / std::sqrt(5.0);
  }
  return v;
}

// Normalized column of P_n(Z (x) Z^4) P_m(X (x) X) with the largest norm.
CVector projector_intersection(int m, int n) {
  const Prime p(5);
  const auto pxx = eigenprojector(composite_operator({kX, kX, 1}, p), m, p);
  const auto pzz = eigenprojector(composite_operator({kZ, kZ, 4}, p), n, p);
  const CMatrix joint = pzz * pxx;
  Eigen::Index col = 0;
  joint.colwise().norm().maxCoeff(&col);
  return joint.col(col).normalized();
}

double overlap_with_state(const CVector& v, const CMatrix& rho) {
  return std::abs(v.dot(rho * v));
}

TEST(InitStateTest, MaximallyMixed) {
  const auto s = init_state(Prime(2), 2);
  EXPECT_LT(max_abs(s.rho - identity(4) / 4.0), 1e-15);
  EXPECT_LT(max_abs(init_state(Prime(5), 1).rho - identity(5) / 5.0), 1e-15);
  EXPECT_NO_THROW(validate_state(s));
  EXPECT_THROW(init_state(Prime(2), 0), std::invalid_argument);
}

TEST(InitStateTest, EveryQuestionUniform) {
  for (std::int64_t pv : {2, 3, 5}) {
    for (int bodies : {1, 2}) {
      const auto s = init_state(Prime(pv), bodies);
      for (const auto& q : default_question_set(Prime(pv), bodies).members) {
        EXPECT_TRUE(is_uniform(outcome_distribution(s, q)));
      }
    }
  }
}

TEST(QuestionOperatorTest, PaddingAndComposites) {
  const Prime p2(2);
  EXPECT_LT(max_abs(question_operator(LocalQuestion{0, kX}, p2, 2) - tensor(build_X(p2), identity(2))), 1e-15);
  EXPECT_LT(max_abs(question_operator(LocalQuestion{1, kZ}, p2, 2) - tensor(identity(2), build_Z(p2))), 1e-15);
  const Prime p5(5);
  EXPECT_LT(max_abs(question_operator(CompositeQuestion{kX, kX, 1}, p5, 2) -
                    tensor(build_X(p5), build_X(p5))),
            1e-12);
  EXPECT_LT(max_abs(question_operator(CompositeQuestion{kZ, kZ, 4}, p5, 2) -
                    tensor(build_Z(p5), matrix_power(build_Z(p5), 4))),
            1e-12);
  EXPECT_THROW(question_operator(CompositeQuestion{kX, kX, 1}, p5, 1), std::invalid_argument);
  EXPECT_THROW(question_operator(LocalQuestion{2, kX}, p5, 2), std::invalid_argument);
}

TEST(InterrogateTest, Repeatability) {
  std::mt19937_64 rng(1);
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    const auto qm = composite_QM(p);
    auto s = init_state(p, 2);
    for (int step = 0; step < 20; ++step) {
      const auto& q = qm.members[rng() % qm.members.size()];
      const auto first = interrogate(s, q, std::nullopt, &rng);
      EXPECT_NO_THROW(validate_state(first.state));
      const auto again = interrogate(first.state, q, std::nullopt, &rng);
      EXPECT_EQ(again.outcome, first.outcome);
      EXPECT_NEAR(again.probability, 1.0, 1e-10);
      s = again.state;
    }
  }
}

TEST(InterrogateTest, ForcedOutcomes) {
  const Prime p(3);
  const auto s = init_state(p, 1);
  const auto r = interrogate(s, LocalQuestion{0, kZ}, 2);
  EXPECT_EQ(r.outcome, 2);
  EXPECT_NEAR(r.probability, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(std::abs(r.state.rho(2, 2)), 1.0, 1e-12);
  EXPECT_THROW(interrogate(r.state, LocalQuestion{0, kZ}, 1), std::domain_error);
  EXPECT_THROW(interrogate(s, LocalQuestion{0, kZ}, std::nullopt), std::invalid_argument);
}

TEST(InterrogateTest, SeededSamplingIsReproducible) {
  const Prime p(5);
  auto run = [&](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> outcomes;
    auto s = init_state(p, 1);
    for (int i = 0; i < 10; ++i) {
      const auto r = interrogate(s, LocalQuestion{0, PauliLabel{i % 2 == 0 ? 1 : 0, i % 2 == 0 ? 0 : 1}},
                                 std::nullopt, &rng);
      outcomes.push_back(r.outcome);
      s = r.state;
    }
    return outcomes;
  };
  EXPECT_EQ(run(42), run(42));
}

// sigma_x (x) sigma_x = +1 then sigma_z (x) sigma_z = +1 leaves (|00> + |11>)/sqrt 2.
TEST(InterrogateTest, BellState) {
  const Prime p(2);
  auto s = init_state(p, 2);
  s = interrogate(s, CompositeQuestion{kX, kX, 1}, 0).state;
  s = interrogate(s, CompositeQuestion{kZ, kZ, 1}, 0).state;
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  EXPECT_LT(max_abs(s.rho - bell * bell.adjoint()), 1e-12);
}

TEST(InterrogateTest, EntangledStateP5) {
  const Prime p(5);
  for (int m = 0; m < 5; ++m) {
    for (int n = 0; n < 5; ++n) {
      auto s = init_state(p, 2);
      s = interrogate(s, CompositeQuestion{kX, kX, 1}, m).state;
      s = interrogate(s, CompositeQuestion{kZ, kZ, 4}, n).state;
      EXPECT_GT(overlap_with_state(projector_intersection(m, n), s.rho), 1.0 - 1e-9);
      EXPECT_GT(overlap_with_state(closed_form_entangled_vector(n, m), s.rho), 1.0 - 1e-9);
    }
  }
}

TEST(InformationTest, QuestionMeasure) {
  EXPECT_EQ(shannon_information({{0.2, 0.2, 0.2, 0.2, 0.2}}), 0.0);
  EXPECT_EQ(shannon_information({{0.0, 1.0, 0.0}}), 1.0);
  EXPECT_NEAR(shannon_information({{0.5, 0.5, 0.0}}), 1.0 - std::log(2.0) / std::log(3.0), 1e-12);
  EXPECT_NEAR(shannon_information({{0.5, 0.5, 0.0}}), 0.3691, 1e-4);
  EXPECT_EQ(shannon_information({{0.5 + 1e-13, 0.5 - 1e-13}}), 0.0);
  const InformationMeasure linear = [](const OutcomeDistribution& d) {
    return *std::max_element(d.probs.begin(), d.probs.end()) >= 1.0 ? 1.0 : 0.0;
  };
  EXPECT_EQ(information_of_question({{0.5, 0.5}}, linear), 0.0);
}

TEST(InformationTest, SystemInfoSingleScenario) {
  const Prime p(5);
  InterrogationHistory h;
  auto s = init_state(p, 1);
  EXPECT_EQ(information_of_system(h, s), 0.0);
  s = interrogate(s, LocalQuestion{0, kX}, 1).state;
  h.records.push_back({LocalQuestion{0, kX}, 1, 1});
  EXPECT_EQ(information_of_system(h, s), 1.0);
  s = interrogate(s, LocalQuestion{0, kZ}, 3).state;
  h.records.push_back({LocalQuestion{0, kZ}, 3, 2});
  EXPECT_EQ(information_of_system(h, s), 1.0);
}

TEST(InformationTest, SystemInfoReplayMismatch) {
  const Prime p(3);
  InterrogationHistory h;
  h.records.push_back({LocalQuestion{0, kX}, 1, 1});
  EXPECT_THROW(information_of_system(h, init_state(p, 1)), std::domain_error);
}

TEST(InformationTest, SystemInfoMonotoneAndBounded) {
  std::mt19937_64 rng(9);
  for (std::int64_t pv : {2, 3}) {
    const Prime p(pv);
    for (int bodies : {1, 2}) {
      const auto qm = default_question_set(p, bodies);
      for (int trial = 0; trial < 10; ++trial) {
        InterrogationHistory h;
        auto s = init_state(p, bodies);
        double last = information_of_system(h, s);
        for (int step = 1; step <= 6; ++step) {
          const auto& q = qm.members[rng() % qm.members.size()];
          const auto r = interrogate(s, q, std::nullopt, &rng);
          s = r.state;
          h.records.push_back({q, r.outcome, step});
          const double info = information_of_system(h, s);
          EXPECT_GE(info, last);
          EXPECT_LE(info, static_cast<double>(bodies));
          EXPECT_EQ(info, std::round(info));
          last = info;
        }
      }
    }
  }
}

TEST(DerivedTest, FreshStateHasNone) {
  EXPECT_TRUE(derived_questions({}, init_state(Prime(3), 2), composite_QM(Prime(3))).empty());
}

TEST(DerivedTest, QubitYY) {
  const Prime p(2);
  InterrogationHistory h;
  auto s = init_state(p, 2);
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      h.records = {{CompositeQuestion{kX, kX, 1}, m, 1}, {CompositeQuestion{kZ, kZ, 1}, n, 2}};
      s = replay(h, p, 2);
      const auto derived = derived_questions(h, s, composite_QM(p));
      ASSERT_EQ(derived.size(), 1u);
      EXPECT_EQ(derived[0].first, (Question{CompositeQuestion{{1, 1}, {1, 1}, 1}}));
      // (-i XZ) (x) (-i XZ) = -(X (x) X)(Z (x) Z): exponent m + n + 1.
      EXPECT_EQ(derived[0].second, (m + n + 1) % 2);
    }
  }
}

TEST(DerivedTest, QuinaryFamily) {
  const Prime p(5);
  for (int m = 0; m < 5; ++m) {
    for (int n = 0; n < 5; ++n) {
      InterrogationHistory h;
      h.records = {{CompositeQuestion{kX, kX, 1}, m, 1}, {CompositeQuestion{kZ, kZ, 4}, n, 2}};
      const auto s = replay(h, p, 2);
      const auto derived = derived_questions(h, s, composite_QM(p));
      ASSERT_EQ(derived.size(), 4u);
      for (int i = 1; i <= 4; ++i) {
        const Question expected = CompositeQuestion{{1, i}, {1, 5 - i}, 1};
        EXPECT_EQ(derived[static_cast<std::size_t>(i - 1)].first, expected);
        EXPECT_EQ(derived[static_cast<std::size_t>(i - 1)].second, (m + i * n) % 5);
      }
    }
  }
}

TEST(ErasureRetentionTest, ComplementaryErasure) {
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    const auto alphabet = single_alphabet(p);
    for (const auto& a : alphabet) {
      for (const auto& b : alphabet) {
        if (a == b) continue;
        for (std::uint64_t seed : {0u, 1u, 2u}) EXPECT_TRUE(check_complementary_erasure(p, a, b, seed));
      }
    }
  }
  EXPECT_THROW(check_complementary_erasure(Prime(5), kZ, kZ), std::invalid_argument);
  EXPECT_THROW(check_complementary_erasure(Prime(5), kZ, {0, 2}), std::invalid_argument);
}

// Post-interrogation uniformity holds exactly when the eigenbases are unbiased.
TEST(ErasureRetentionTest, ComplementarityMatchesUnbiasedBases) {
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    const auto bases = mub_bases(p);
    const auto alphabet = single_alphabet(p);
    auto basis_index = [](const PauliLabel& l) { return l.x_exp == 0 ? 0 : 1 + l.z_exp; };
    for (const auto& a : alphabet) {
      for (const auto& b : alphabet) {
        auto s = interrogate(init_state(p, 1), LocalQuestion{0, a}, 0).state;
        const bool uniform = is_uniform(outcome_distribution(s, LocalQuestion{0, b}));
        const bool unbiased = check_unbiased(bases[static_cast<std::size_t>(basis_index(a))],
                                             bases[static_cast<std::size_t>(basis_index(b))], p);
        EXPECT_EQ(uniform, unbiased);
      }
    }
  }
}

TEST(ErasureRetentionTest, CompatibleRetention) {
  EXPECT_TRUE(check_compatible_retention(Prime(2), 2, CompositeQuestion{kX, kX, 1}, CompositeQuestion{kZ, kZ, 1}));
  EXPECT_TRUE(check_compatible_retention(Prime(5), 2, CompositeQuestion{kX, kX, 1}, CompositeQuestion{kZ, kZ, 4}));
  EXPECT_TRUE(check_compatible_retention(Prime(5), 2, CompositeQuestion{kX, kX, 1}, CompositeQuestion{kX, kX, 1}));
  EXPECT_TRUE(check_compatible_retention(Prime(3), 2, LocalQuestion{0, kX}, LocalQuestion{1, kZ}));
  EXPECT_THROW(check_compatible_retention(Prime(3), 2, CompositeQuestion{kX, kX, 1}, CompositeQuestion{kZ, kZ, 1}),
               std::invalid_argument);
}

TEST(JointFromLocalTest, JointFromLocalMatchesComposite) {
  std::mt19937_64 rng(17);
  for (std::int64_t pv : {2, 3}) {
    const Prime p(pv);
    const auto alphabet = single_alphabet(p);
    for (int trial = 0; trial < 10; ++trial) {
      const SystemState s{p, 2, random_density_matrix(static_cast<int>(pv * pv), rng)};
      ASSERT_NO_THROW(validate_state(s));
      for (const auto& a : alphabet) {
        for (const auto& b : alphabet) {
          for (int k = 1; k < pv; ++k) {
            const auto local = joint_from_local(s, a, b, k);
            const auto direct = outcome_distribution(s, CompositeQuestion{a, b, k});
            for (std::size_t c = 0; c < local.probs.size(); ++c) {
              EXPECT_NEAR(local.probs[c], direct.probs[c], 1e-9);
            }
          }
        }
      }
    }
  }
}

TEST(JointFromLocalTest, MaximallyMixedUniformBothWays) {
  const auto s = init_state(Prime(3), 2);
  EXPECT_TRUE(is_uniform(joint_from_local(s, kX, kZ, 2)));
  EXPECT_TRUE(is_uniform(outcome_distribution(s, CompositeQuestion{kX, kZ, 2})));
  EXPECT_THROW(joint_from_local(init_state(Prime(3), 1), kX, kZ, 1), std::invalid_argument);
}

// After measuring Q1 from any state, a non-commuting composite Q2 is uniform.
TEST(EquiprobabilityTest, RandomPriorStates) {
  std::mt19937_64 rng(23);
  for (std::int64_t pv : {2, 3}) {
    const Prime p(pv);
    const auto labels = composite_labels(p);
    for (int trial = 0; trial < 20; ++trial) {
      const SystemState s{p, 2, random_density_matrix(static_cast<int>(pv * pv), rng)};
      const auto& l1 = labels[rng() % labels.size()];
      const Question q1 = CompositeQuestion{l1.a, l1.b, l1.k};
      const auto after = interrogate(s, q1, std::nullopt, &rng).state;
      for (const auto& l2 : labels) {
        if (labels_commute(l1, l2, p)) continue;
        EXPECT_TRUE(is_uniform(outcome_distribution(after, CompositeQuestion{l2.a, l2.b, l2.k}), 1e-9));
      }
    }
  }
}

TEST(ScenarioTest, EmptyScript) {
  const auto trace = run_scenario(Prime(3), 2, {});
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace[0].info.system_info, 0.0);
  for (const auto& [q, v] : trace[0].info.per_question) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(trace[0].derived.empty());
}

TEST(ScenarioTest, SingleSystemTrajectory) {
  const Prime p(5);
  const auto trace = run_scenario(p, 1, {{LocalQuestion{0, kX}, 2}, {LocalQuestion{0, kZ}, 4}});
  ASSERT_EQ(trace.size(), 3u);
  EXPECT_EQ(trace[0].info.system_info, 0.0);
  EXPECT_EQ(trace[1].info.system_info, 1.0);
  EXPECT_EQ(trace[2].info.system_info, 1.0);
  EXPECT_EQ(trace[1].info.per_question[0].second, 1.0);  // X
  EXPECT_EQ(trace[1].info.per_question[1].second, 0.0);  // Z
  EXPECT_EQ(trace[2].info.per_question[0].second, 0.0);
  EXPECT_EQ(trace[2].info.per_question[1].second, 1.0);
  EXPECT_NEAR(trace[1].probability, 0.2, 1e-12);
}

TEST(ScenarioTest, CompositeTrajectory) {
  const auto trace = run_scenario(Prime(5), 2, {{CompositeQuestion{kX, kX, 1}, 1}, {CompositeQuestion{kZ, kZ, 4}, 2}});
  ASSERT_EQ(trace.size(), 3u);
  EXPECT_EQ(trace[0].info.system_info, 0.0);
  EXPECT_EQ(trace[1].info.system_info, 1.0);
  EXPECT_EQ(trace[2].info.system_info, 2.0);
  EXPECT_TRUE(trace[1].derived.empty());
  ASSERT_EQ(trace[2].derived.size(), 4u);
  const std::vector<int> expected = {3, 0, 2, 4};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(trace[2].derived[i].second, expected[i]);
}

TEST(ScenarioTest, InadmissibleStepReportsIndex) {
  try {
    run_scenario(Prime(3), 1, {{LocalQuestion{0, kX}, 0}, {LocalQuestion{0, kX}, 0}, {LocalQuestion{0, kX}, 1}});
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.step(), 3);
  }
}

TEST(ScenarioTest, SeedDeterminesUnforcedOutcomes) {
  const std::vector<ScenarioStep> script = {{LocalQuestion{0, kX}, std::nullopt}, {LocalQuestion{0, kZ}, std::nullopt}};
  const auto a = run_scenario(Prime(7), 1, script, 99);
  const auto b = run_scenario(Prime(7), 1, script, 99);
  EXPECT_EQ(a[1].outcome, b[1].outcome);
  EXPECT_EQ(a[2].outcome, b[2].outcome);
}

TEST(ScenarioTest, PluggableMeasure) {
  const InformationMeasure max_prob = [](const OutcomeDistribution& d) {
    const double top = *std::max_element(d.probs.begin(), d.probs.end());
    const double n = static_cast<double>(d.probs.size());
    return (top - 1.0 / n) / (1.0 - 1.0 / n);
  };
  const auto trace = run_scenario(Prime(3), 1, {{LocalQuestion{0, kX}, 0}}, 0, max_prob);
  EXPECT_NEAR(trace[0].info.per_question[0].second, 0.0, 1e-12);
  EXPECT_NEAR(trace[1].info.per_question[0].second, 1.0, 1e-12);
}

TEST(RandomStateTest, ValidDensityMatrices) {
  std::mt19937_64 rng(2);
  for (int dim : {2, 4, 9}) {
    const auto rho = random_density_matrix(dim, rng);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_LT(max_abs(rho - rho.adjoint()), 1e-15);
  }
}

}  // namespace
}  // namespace qqs
