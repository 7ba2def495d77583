#include "qqs/interrogation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace qqs {

namespace {

int dimension(Prime p, int bodies) {
  if (bodies < 1) throw std::invalid_argument("body count must be >= 1");
  std::int64_t d = 1;
  for (int i = 0; i < bodies; ++i) {
    d *= p.value();
    if (d > 4096) throw std::invalid_argument("state dimension p^N exceeds 4096");
  }
  return static_cast<int>(d);
}

void require_matching(const SystemState& s, const Question& q) {
  if (const auto* l = std::get_if<LocalQuestion>(&q)) {
    if (l->subsystem < 0 || l->subsystem >= s.bodies) {
      throw std::invalid_argument("subsystem " + std::to_string(l->subsystem) + " out of range");
    }
  } else if (s.bodies != 2) {
    throw std::invalid_argument("composite questions need a two-body state");
  }
}

double clamp_probability(double v) {
  if (v < 0.0 && v > -kTolerance) return 0.0;
  if (v > 1.0 && v < 1.0 + kTolerance) return 1.0;
  return v;
}

CMatrix lueders(const CMatrix& proj, const CMatrix& rho, double prob) {
  CMatrix out = proj * rho * proj / prob;
  // Restore exact Hermiticity lost to rounding.
  return (out + out.adjoint()) * 0.5;
}

int sample(const std::vector<double>& probs, std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double acc = 0.0;
  int last = 0;
  for (std::size_t c = 0; c < probs.size(); ++c) {
    if (probs[c] <= 0.0) continue;
    acc += probs[c];
    last = static_cast<int>(c);
    if (u < acc) return last;
  }
  return last;
}

bool is_asked(const InterrogationHistory& h, const Question& q) {
  return std::any_of(h.records.begin(), h.records.end(),
                     [&](const InterrogationRecord& r) { return r.question == q; });
}

}  // namespace

void validate_state(const SystemState& s, double tolerance) {
  const auto dim = dimension(s.modulus, s.bodies);
  if (s.rho.rows() != dim || s.rho.cols() != dim) {
    throw std::domain_error("density matrix dimension does not match p^N");
  }
  if ((s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff() > tolerance) {
    throw std::domain_error("density matrix is not Hermitian");
  }
  if (std::abs(s.rho.trace() - Complex(1.0)) > tolerance) {
    throw std::domain_error("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s.rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tolerance) {
    throw std::domain_error("density matrix is not positive semidefinite");
  }
}

SystemState init_state(Prime p, int bodies) {
  const int dim = dimension(p, bodies);
  return {p, bodies, identity(dim) / static_cast<double>(dim)};
}

CMatrix question_operator(const Question& q, Prime p, int bodies) {
  dimension(p, bodies);
  if (const auto* c = std::get_if<CompositeQuestion>(&q)) {
    if (bodies != 2) throw std::invalid_argument("composite questions need a two-body state");
    return composite_operator(c->label(), p);
  }
  const auto& l = std::get<LocalQuestion>(q);
  if (l.subsystem < 0 || l.subsystem >= bodies) {
    throw std::invalid_argument("subsystem " + std::to_string(l.subsystem) + " out of range");
  }
  const int n = static_cast<int>(p.value());
  CMatrix out = identity(1);
  for (int s = 0; s < bodies; ++s) {
    out = tensor(out, s == l.subsystem ? label_operator(l.label, p) : identity(n));
  }
  return out;
}

const std::vector<CMatrix>& question_projectors(const Question& q, Prime p, int bodies) {
  using Key = std::tuple<std::int64_t, int, Question>;
  static std::mutex mutex;
  static std::map<Key, std::vector<CMatrix>> cache;
  Key key{p.value(), bodies, q};
  {
    const std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto projs = eigenprojectors(question_operator(q, p, bodies), p);
  const std::lock_guard lock(mutex);
  return cache.emplace(std::move(key), std::move(projs)).first->second;
}

OutcomeDistribution outcome_distribution(const SystemState& s, const Question& q) {
  require_matching(s, q);
  const auto& projs = question_projectors(q, s.modulus, s.bodies);
  OutcomeDistribution d;
  d.probs.reserve(projs.size());
  for (const auto& proj : projs) {
    d.probs.push_back(clamp_probability((proj * s.rho).trace().real()));
  }
  return d;
}

InterrogationResult interrogate(const SystemState& s, const Question& q, std::optional<int> forced,
                                std::mt19937_64* rng) {
  const auto d = outcome_distribution(s, q);
  int c = 0;
  if (forced) {
    c = static_cast<int>(mod_p(*forced, s.modulus.value()));
  } else {
    if (rng == nullptr) throw std::invalid_argument("interrogate needs a forced outcome or a generator");
    c = sample(d.probs, *rng);
  }
  const double prob = d.probs[static_cast<std::size_t>(c)];
  if (prob <= kTolerance) {
    throw std::domain_error("outcome " + std::to_string(c) + " of " + to_string(q) +
                            " has zero probability");
  }
  const auto& proj = question_projectors(q, s.modulus, s.bodies)[static_cast<std::size_t>(c)];
  return {{s.modulus, s.bodies, lueders(proj, s.rho, prob)}, c, prob};
}

double shannon_information(const OutcomeDistribution& d) {
  if (d.probs.size() < 2) throw std::invalid_argument("distribution needs at least two outcomes");
  double h = 0.0;
  for (double v : d.probs) {
    if (v > 0.0) h -= v * std::log(v);
  }
  const double info = 1.0 - h / std::log(static_cast<double>(d.probs.size()));
  if (info < kTolerance) return 0.0;
  if (info > 1.0 - kTolerance) return 1.0;
  return info;
}

double information_of_question(const OutcomeDistribution& d, const InformationMeasure& measure) {
  return measure(d);
}

SystemState replay(const InterrogationHistory& h, Prime p, int bodies) {
  auto s = init_state(p, bodies);
  for (const auto& r : h.records) s = interrogate(s, r.question, r.outcome).state;
  return s;
}

double information_of_system(const InterrogationHistory& h, const SystemState& s) {
  const auto expected = replay(h, s.modulus, s.bodies);
  if ((expected.rho - s.rho).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::domain_error("state does not match the replayed history");
  }
  const int dim = static_cast<int>(s.rho.rows());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s.rho, Eigen::EigenvaluesOnly);
  const double cutoff = kTolerance / static_cast<double>(dim);
  const auto rank = (es.eigenvalues().array() > cutoff).count();
  const double info = static_cast<double>(s.bodies) -
                      std::log(static_cast<double>(rank)) / std::log(static_cast<double>(s.modulus.value()));
  const double nearest = std::round(info);
  return std::abs(info - nearest) < kTolerance ? nearest : info;
}

std::vector<std::pair<Question, int>> derived_questions(const InterrogationHistory& h,
                                                        const SystemState& s,
                                                        const QuestionSet& qm) {
  std::vector<std::pair<Question, int>> out;
  for (const auto& q : qm.members) {
    if (is_asked(h, q)) continue;
    const auto d = outcome_distribution(s, q);
    for (std::size_t c = 0; c < d.probs.size(); ++c) {
      if (d.probs[c] > 1.0 - kTolerance) {
        out.emplace_back(q, static_cast<int>(c));
        break;
      }
    }
  }
  return out;
}

InfoReport info_report(const InterrogationHistory& h, const SystemState& s, const QuestionSet& qm,
                       const InformationMeasure& measure) {
  InfoReport r;
  for (const auto& q : qm.members) {
    r.per_question.emplace_back(q, information_of_question(outcome_distribution(s, q), measure));
  }
  r.system_info = information_of_system(h, s);
  return r;
}

bool check_complementary_erasure(Prime p, const PauliLabel& q1, const PauliLabel& q2,
                                 std::uint64_t seed) {
  if (!in_single_alphabet(q1, p) || !in_single_alphabet(q2, p)) {
    throw std::invalid_argument("erasure check needs members of the single question set");
  }
  if (q1 == q2) throw std::invalid_argument("erasure check needs two distinct questions");
  std::mt19937_64 rng(seed);
  const Question a = LocalQuestion{0, q1};
  const Question b = LocalQuestion{0, q2};
  auto s = init_state(p, 1);
  s = interrogate(s, a, std::nullopt, &rng).state;
  s = interrogate(s, b, std::nullopt, &rng).state;
  const auto d = outcome_distribution(s, a);
  const double uniform = 1.0 / static_cast<double>(p.value());
  const bool flat = std::all_of(d.probs.begin(), d.probs.end(),
                                [&](double v) { return std::abs(v - uniform) < kTolerance; });
  return flat && information_of_question(d) == 0.0;
}

bool check_compatible_retention(Prime p, int bodies, const Question& q1, const Question& q2,
                                std::uint64_t seed) {
  if (!commutes(question_operator(q1, p, bodies), question_operator(q2, p, bodies))) {
    throw std::invalid_argument("retention check needs commuting questions");
  }
  std::mt19937_64 rng(seed);
  auto s = init_state(p, bodies);
  const auto first = interrogate(s, q1, std::nullopt, &rng);
  const auto second = interrogate(first.state, q2, std::nullopt, &rng);
  const auto d = outcome_distribution(second.state, q1);
  return d.probs[static_cast<std::size_t>(first.outcome)] > 1.0 - kTolerance;
}

OutcomeDistribution joint_from_local(const SystemState& s, const PauliLabel& a, const PauliLabel& b,
                                     int k) {
  if (s.bodies != 2) throw std::invalid_argument("joint_from_local needs a two-body state");
  const int n = static_cast<int>(s.modulus.value());
  const Question qa = LocalQuestion{0, a};
  const Question qb = LocalQuestion{1, b};
  OutcomeDistribution out{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  const auto da = outcome_distribution(s, qa);
  for (int a0 = 0; a0 < n; ++a0) {
    const double pa = da.probs[static_cast<std::size_t>(a0)];
    if (pa <= kTolerance) continue;
    const auto after = interrogate(s, qa, a0).state;
    const auto db = outcome_distribution(after, qb);
    for (int b0 = 0; b0 < n; ++b0) {
      const auto c = mod_p(a0 + static_cast<std::int64_t>(k) * b0, n);
      out.probs[static_cast<std::size_t>(c)] += pa * db.probs[static_cast<std::size_t>(b0)];
    }
  }
  return out;
}

QuestionSet default_question_set(Prime p, int bodies) {
  if (bodies == 1) return single_QM(p);
  if (bodies == 2) return composite_QM(p);
  throw std::invalid_argument("question sets are defined for one or two bodies");
}

ScenarioError::ScenarioError(int step, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}

std::vector<StepReport> run_scenario(Prime p, int bodies, const std::vector<ScenarioStep>& script,
                                     std::uint64_t seed, const InformationMeasure& measure) {
  const auto qm = default_question_set(p, bodies);
  std::mt19937_64 rng(seed);
  InterrogationHistory h;
  h.rng_seed = seed;
  auto s = init_state(p, bodies);

  std::vector<StepReport> trace;
  trace.push_back({0, std::nullopt, std::nullopt, 1.0, info_report(h, s, qm, measure), {}});
  for (std::size_t i = 0; i < script.size(); ++i) {
    const int step = static_cast<int>(i) + 1;
    InterrogationResult r;
    try {
      r = interrogate(s, script[i].question, script[i].outcome, &rng);
    } catch (const std::exception& e) {
      throw ScenarioError(step, e.what());
    }
    s = std::move(r.state);
    h.records.push_back({script[i].question, r.outcome, step});
    trace.push_back({step, script[i].question, r.outcome, r.probability,
                     info_report(h, s, qm, measure), derived_questions(h, s, qm)});
  }
  return trace;
}

CMatrix random_density_matrix(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) * 0.5;
}

}  // namespace qqs
