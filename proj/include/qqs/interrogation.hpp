// Interrogation of p-ary systems: Lueders-rule measurement on density
// matrices, outcome distributions, and the information carried by single
// questions and by the whole system.

#ifndef QQS_INTERROGATION_HPP
#define QQS_INTERROGATION_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qqs/pauli.hpp"
#include "qqs/structure.hpp"

namespace qqs {

/// Density matrix of `bodies` p-level subsystems (dimension p^bodies).
struct SystemState {
  Prime modulus{2};
  int bodies = 1;
  CMatrix rho;
};

/// Throws std::domain_error unless rho is Hermitian, unit-trace and PSD
/// within `tolerance`.
void validate_state(const SystemState& s, double tolerance = kTolerance);

struct InterrogationRecord {
  Question question;
  int outcome = 0;
  int time_index = 0;
};

struct InterrogationHistory {
  std::vector<InterrogationRecord> records;
  std::optional<std::uint64_t> rng_seed;
};

struct OutcomeDistribution {
  std::vector<double> probs;
};

struct InfoReport {
  /// In question-set order.
  std::vector<std::pair<Question, double>> per_question;
  double system_info = 0.0;
};

/// I / p^N.
SystemState init_state(Prime p, int bodies);

/// Operator of a question on `bodies` subsystems: a local label padded with
/// identities, or A (x) B^gate for a composite (two bodies only).
CMatrix question_operator(const Question& q, Prime p, int bodies);

/// Eigenprojectors of question_operator, indexed by outcome. Memoized.
const std::vector<CMatrix>& question_projectors(const Question& q, Prime p, int bodies);

/// probs[c] = tr(P_c rho); values within tolerance of [0, 1] are clamped.
OutcomeDistribution outcome_distribution(const SystemState& s, const Question& q);

struct InterrogationResult {
  SystemState state;
  int outcome = 0;
  double probability = 0.0;
};

/// Lueders update rho -> P_c rho P_c / tr(P_c rho). The outcome is `forced`
/// when given (an error if its probability is <= tolerance), otherwise drawn
/// from `rng`, which must then be non-null.
InterrogationResult interrogate(const SystemState& s, const Question& q, std::optional<int> forced,
                                std::mt19937_64* rng = nullptr);

/// Maps a distribution to a value in [0, 1]: 0 exactly at uniform, 1 exactly
/// at a point mass.
using InformationMeasure = std::function<double(const OutcomeDistribution&)>;

/// 1 - H(d) / log p, snapped to 0 or 1 within tolerance.
double shannon_information(const OutcomeDistribution& d);

double information_of_question(const OutcomeDistribution& d,
                               const InformationMeasure& measure = shannon_information);

/// Rebuilds the state reached by `h` from init_state(p, bodies).
SystemState replay(const InterrogationHistory& h, Prime p, int bodies);

/// N - log_p(rank rho), rank counting eigenvalues above tolerance * p^-N.
/// `s` must match the replay of `h` from the maximally mixed state.
double information_of_system(const InterrogationHistory& h, const SystemState& s);

/// Members of `qm` not asked in `h` whose outcome is certain on `s`.
std::vector<std::pair<Question, int>> derived_questions(const InterrogationHistory& h,
                                                        const SystemState& s,
                                                        const QuestionSet& qm);

InfoReport info_report(const InterrogationHistory& h, const SystemState& s, const QuestionSet& qm,
                       const InformationMeasure& measure = shannon_information);

/// Asks q1 then q2 on a fresh single system (outcomes drawn from `seed`) and
/// checks that q1 ends up uniform with zero information. q1 and q2 must be
/// distinct members of single_QM(p).
bool check_complementary_erasure(Prime p, const PauliLabel& q1, const PauliLabel& q2,
                                 std::uint64_t seed = 0);

/// Asks q1, q2, then q1 again on a fresh system and checks that the first
/// outcome recurs with probability 1. The operators must commute.
bool check_compatible_retention(Prime p, int bodies, const Question& q1, const Question& q2,
                                std::uint64_t seed = 0);

/// Distribution of A (x) B^k built only from a local interrogation of A on
/// subsystem 0 followed by one of B on subsystem 1:
/// probs[c] = sum over a0 + k b0 = c of P(A = a0) P(B = b0 | A = a0).
OutcomeDistribution joint_from_local(const SystemState& s, const PauliLabel& a, const PauliLabel& b,
                                     int k);

/// The question set used for reports: single_QM for one body, composite_QM for two.
QuestionSet default_question_set(Prime p, int bodies);

struct ScenarioStep {
  Question question;
  std::optional<int> outcome;
};

struct StepReport {
  /// 0 for the initial report, then 1, 2, ... per step.
  int step = 0;
  std::optional<Question> question;
  std::optional<int> outcome;
  double probability = 1.0;
  InfoReport info;
  std::vector<std::pair<Question, int>> derived;
};

/// Raised by run_scenario; carries the 1-based index of the failing step.
class ScenarioError : public std::runtime_error {
public:
  ScenarioError(int step, const std::string& what);
  int step() const noexcept { return step_; }

private:
  int step_;
};

/// Runs the steps in order from the maximally mixed state. Unforced outcomes
/// are drawn from a generator seeded with `seed`.
std::vector<StepReport> run_scenario(Prime p, int bodies, const std::vector<ScenarioStep>& script,
                                     std::uint64_t seed = 0,
                                     const InformationMeasure& measure = shannon_information);

/// Draws a density matrix G G^dagger / tr(G G^dagger) with G Gaussian.
CMatrix random_density_matrix(int dim, std::mt19937_64& rng);

}  // namespace qqs

#endif  // QQS_INTERROGATION_HPP
