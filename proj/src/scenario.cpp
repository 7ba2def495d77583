#include "qqs/scenario.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qqs {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::int64_t int_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<std::int64_t>();
}

json label_to_json(const PauliLabel& l) { return {{"x", l.x_exp}, {"z", l.z_exp}}; }

PauliLabel label_from_json(const json& j, Prime p) {
  const PauliLabel l{static_cast<int>(mod_p(int_field(j, "x"), p.value())),
                     static_cast<int>(mod_p(int_field(j, "z"), p.value()))};
  if (!in_single_alphabet(l, p)) {
    throw std::invalid_argument("label " + to_string(l) + " is outside the question alphabet");
  }
  return l;
}

std::string format_value(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

json question_to_json(const Question& q) {
  if (const auto* l = std::get_if<LocalQuestion>(&q)) {
    return {{"kind", "local"}, {"subsystem", l->subsystem}, {"label", label_to_json(l->label)}};
  }
  const auto& c = std::get<CompositeQuestion>(q);
  return {{"kind", "composite"},
          {"a", label_to_json(c.a)},
          {"b", label_to_json(c.b)},
          {"gate", c.gate}};
}

Question question_from_json(const json& j, Prime p) {
  const auto& kind = field(j, "kind");
  if (kind == "local") {
    const auto s = int_field(j, "subsystem");
    return LocalQuestion{static_cast<int>(s), label_from_json(field(j, "label"), p)};
  }
  if (kind == "composite") {
    const auto g = mod_p(int_field(j, "gate"), p.value());
    if (g == 0) throw std::invalid_argument("gate index must be nonzero mod p");
    return CompositeQuestion{label_from_json(field(j, "a"), p), label_from_json(field(j, "b"), p),
                             static_cast<int>(g)};
  }
  throw std::invalid_argument("question kind must be \"local\" or \"composite\"");
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.p = Prime(int_field(j, "p"));
  s.bodies = static_cast<int>(int_field(j, "bodies"));
  if (s.bodies != 1 && s.bodies != 2) throw std::invalid_argument("bodies must be 1 or 2");
  if (j.contains("seed") && !j.at("seed").is_null()) {
    if (!j.at("seed").is_number_unsigned()) {
      throw std::invalid_argument("field \"seed\" must be a non-negative integer");
    }
    s.seed = j.at("seed").get<std::uint64_t>();
  }
  const auto& steps = field(j, "steps");
  if (!steps.is_array()) throw std::invalid_argument("field \"steps\" must be an array");
  for (const auto& st : steps) {
    ScenarioStep step{question_from_json(field(st, "question"), s.p), std::nullopt};
    if (st.contains("outcome") && !st.at("outcome").is_null()) {
      step.outcome = static_cast<int>(mod_p(int_field(st, "outcome"), s.p.value()));
    }
    s.steps.push_back(std::move(step));
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json steps = json::array();
  for (const auto& st : s.steps) {
    json o = {{"question", question_to_json(st.question)}};
    if (st.outcome) o["outcome"] = *st.outcome;
    steps.push_back(std::move(o));
  }
  return {{"p", s.p.value()}, {"bodies", s.bodies}, {"seed", s.seed}, {"steps", steps}};
}

json trace_to_json(const Scenario& s, const std::vector<StepReport>& trace) {
  json out = json::array();
  for (const auto& r : trace) {
    json info = json::object();
    for (const auto& [q, v] : r.info.per_question) info[to_string(q)] = v;
    json derived = json::array();
    for (const auto& [q, c] : r.derived) derived.push_back({{"question", to_string(q)}, {"outcome", c}});
    json step = {{"step", r.step},
                 {"question", r.question ? json(to_string(*r.question)) : json(nullptr)},
                 {"outcome", r.outcome ? json(*r.outcome) : json(nullptr)},
                 {"probability", r.probability},
                 {"info", std::move(info)},
                 {"system_info", r.info.system_info},
                 {"derived", std::move(derived)}};
    out.push_back(std::move(step));
  }
  return {{"p", s.p.value()}, {"bodies", s.bodies}, {"seed", s.seed}, {"trace", std::move(out)}};
}

std::string trace_to_text(const std::vector<StepReport>& trace) {
  std::ostringstream os;
  for (const auto& r : trace) {
    os << "step " << r.step;
    if (r.question) {
      os << ": " << to_string(*r.question) << " -> " << *r.outcome
         << " (p=" << format_value(r.probability) << ")";
    }
    os << "\n  system_info=" << format_value(r.info.system_info) << "\n";
    for (const auto& [q, v] : r.info.per_question) {
      if (v != 0.0) os << "  info " << to_string(q) << " = " << format_value(v) << "\n";
    }
    for (const auto& [q, c] : r.derived) os << "  derived " << to_string(q) << " -> " << c << "\n";
  }
  return os.str();
}

Scenario paper_scenario(const std::string& which, int m, int n) {
  const PauliLabel x{1, 0};
  const PauliLabel z{0, 1};
  Scenario s;
  if (which == "single5") {
    s.p = Prime(5);
    s.bodies = 1;
    s.steps = {{LocalQuestion{0, x}, m}, {LocalQuestion{0, z}, n}};
  } else if (which == "composite5") {
    s.p = Prime(5);
    s.bodies = 2;
    s.steps = {{CompositeQuestion{x, x, 1}, m}, {CompositeQuestion{z, z, 4}, n}};
  } else if (which == "bell2") {
    s.p = Prime(2);
    s.bodies = 2;
    s.steps = {{CompositeQuestion{x, x, 1}, m}, {CompositeQuestion{z, z, 1}, n}};
  } else {
    throw std::invalid_argument("unknown scenario \"" + which + "\"; expected single5, composite5 or bell2");
  }
  for (auto& st : s.steps) st.outcome = static_cast<int>(mod_p(*st.outcome, s.p.value()));
  return s;
}

}  // namespace qqs
