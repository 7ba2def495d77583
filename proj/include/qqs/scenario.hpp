// Scenario files and traces.
//
// Input:
//   {"p": 5, "bodies": 2, "seed": 7,
//    "steps": [{"question": {"kind": "composite", "a": {"x": 1, "z": 0},
//                            "b": {"x": 1, "z": 0}, "gate": 1},
//               "outcome": 3},
//              {"question": {"kind": "local", "subsystem": 0,
//                            "label": {"x": 0, "z": 1}}}]}
//
// Output: {"p", "bodies", "seed", "trace": [{"step", "question", "outcome",
// "probability", "info": {name: value}, "system_info", "derived":
// [{"question", "outcome"}]}]}. Question names are to_string(Question).

#ifndef QQS_SCENARIO_HPP
#define QQS_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qqs/interrogation.hpp"

namespace qqs {

struct Scenario {
  Prime p{2};
  int bodies = 1;
  std::uint64_t seed = 0;
  std::vector<ScenarioStep> steps;
};

nlohmann::json question_to_json(const Question& q);
Question question_from_json(const nlohmann::json& j, Prime p);

/// Throws std::invalid_argument on schema errors.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

nlohmann::json trace_to_json(const Scenario& s, const std::vector<StepReport>& trace);
/// One block per step: the question and outcome, system info, non-zero
/// per-question info and derived questions.
std::string trace_to_text(const std::vector<StepReport>& trace);

/// Built-in scenarios:
///   single5    p = 5, one body:  X -> m, Z -> n
///   composite5 p = 5, two bodies: X (x) X -> m, Z (x) Z^4 -> n
///   bell2      p = 2, two bodies: X (x) X -> m, Z (x) Z -> n
Scenario paper_scenario(const std::string& which, int m, int n);

}  // namespace qqs

#endif  // QQS_SCENARIO_HPP
