#include "qqs/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qqs/gates.hpp"
#include "qqs/oarray.hpp"
#include "qqs/pauli.hpp"
#include "qqs/scenario.hpp"
#include "qqs/structure.hpp"

namespace qqs {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<std::int64_t> p;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
};

Prime require_prime(const std::optional<std::int64_t>& value, const char* flag = "--p") {
  if (!value) throw UsageError(std::string(flag) + " is required");
  if (!is_prime(*value)) throw UsageError("prime required, got " + std::to_string(*value));
  return Prime(*value);
}

PauliLabel require_label(const std::string& text, Prime p) {
  try {
    return parse_label(text, p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json gate_to_json(const GateTable& g) {
  json rows = json::array();
  for (int a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g(a, b));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string gate_name(const GateTable& g) {
  const auto i = linear_gate_index(g);
  return i ? "a+" + std::to_string(*i) + "b" : "nonlinear";
}

std::vector<GateTable> parse_gate_file(Prime p, const std::string& text) {
  const int n = static_cast<int>(p.value());
  std::istringstream is(text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  if (lines.empty() || lines.size() % static_cast<std::size_t>(n) != 0) {
    throw std::invalid_argument("gate file must hold whole " + std::to_string(n) + "-line tables");
  }
  std::vector<GateTable> out;
  for (std::size_t i = 0; i < lines.size(); i += static_cast<std::size_t>(n)) {
    std::string chunk;
    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) chunk += lines[i + r] + "\n";
    out.push_back(parse_gate_text(p, chunk));
  }
  return out;
}

std::string tuple_text(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

void cmd_gates(const Options& o, bool enumerate, const std::optional<int>& table,
               const std::optional<std::string>& check, std::ostream& out) {
  const Prime p = require_prime(o.p);
  const bool json_out = o.format == "json";
  if (static_cast<int>(enumerate) + static_cast<int>(table.has_value()) +
          static_cast<int>(check.has_value()) != 1) {
    throw UsageError("gates needs exactly one of --enumerate, --table, --check");
  }
  if (enumerate) {
    const auto family = enumerate_gate_classes(p);
    if (json_out) {
      json gates = json::array();
      for (const auto& g : family.gates()) gates.push_back({{"name", gate_name(g)}, {"table", gate_to_json(g)}});
      out << json{{"p", p.value()}, {"count", family.size()}, {"gates", gates}}.dump(2) << "\n";
    } else {
      out << family.size() << " gate classes for p=" << p.value() << "\n";
      for (const auto& g : family.gates()) out << "\n" << render_truth_table(g, gate_name(g));
    }
  } else if (table) {
    const Felt i(*table, p);
    if (i.is_zero()) throw UsageError("--table needs an index nonzero mod p");
    const auto g = gate_linear(p, i);
    if (json_out) {
      out << json{{"p", p.value()}, {"name", gate_name(g)}, {"table", gate_to_json(g)}}.dump(2) << "\n";
    } else {
      out << render_truth_table(g, gate_name(g));
    }
  } else {
    const auto gates = parse_gate_file(p, read_file(*check));
    json r1 = json::array();
    json r2 = json::array();
    for (const auto& g : gates) r1.push_back(check_restriction1(g));
    for (std::size_t i = 0; i < gates.size(); ++i) {
      for (std::size_t j = i + 1; j < gates.size(); ++j) {
        r2.push_back({{"pair", {i, j}}, {"ok", check_restriction2(gates[i], gates[j])}});
      }
    }
    if (json_out) {
      out << json{{"p", p.value()}, {"restriction1", r1}, {"restriction2", r2}}.dump(2) << "\n";
    } else {
      for (std::size_t i = 0; i < gates.size(); ++i) {
        out << "table " << i << ": restriction1 " << (r1[i].get<bool>() ? "OK" : "FAIL") << "\n";
      }
      for (const auto& e : r2) {
        out << "tables " << e["pair"][0] << "," << e["pair"][1] << ": restriction2 "
            << (e["ok"].get<bool>() ? "OK" : "FAIL") << "\n";
      }
    }
  }
}

void cmd_oa(const Options& o, const std::optional<std::int64_t>& build,
            const std::vector<std::string>& verify, std::ostream& out) {
  const bool json_out = o.format == "json";
  if (build.has_value() == !verify.empty()) throw UsageError("oa needs exactly one of --build, --verify");
  if (build) {
    const Prime p = require_prime(build, "--build");
    const auto oa = combine_gates_to_oa(enumerate_gate_classes(p));
    if (json_out) {
      json rows = json::array();
      for (int r = 0; r < oa.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < oa.cols(); ++c) row.push_back(oa(r, c));
        rows.push_back(std::move(row));
      }
      out << json{{"rows", oa.rows()}, {"cols", oa.cols()}, {"levels", oa.levels()},
                  {"strength", oa.strength()}, {"data", rows}}
                 .dump(2)
          << "\n";
    } else {
      out << to_csv(oa);
    }
    return;
  }
  int levels = 0, strength = 0;
  try {
    levels = std::stoi(verify[1]);
    strength = std::stoi(verify[2]);
  } catch (const std::exception&) {
    throw UsageError("--verify expects FILE LEVELS STRENGTH");
  }
  const auto oa = parse_csv(read_file(verify[0]), levels, strength);
  const auto report = check_strength(oa);
  if (json_out) {
    json j = {{"ok", report.ok}, {"lambda", report.lambda}};
    if (report.violation) {
      j["violation"] = {{"columns", report.violation->columns},
                        {"tuple", report.violation->tuple},
                        {"count", report.violation->count}};
    }
    out << j.dump(2) << "\n";
  } else if (report.ok) {
    out << "OK λ=" << report.lambda << "\n";
  } else {
    const auto& v = *report.violation;
    out << "FAIL cols=" << tuple_text(v.columns) << " tuple=" << tuple_text(v.tuple) << "×" << v.count
        << "\n";
  }
}

std::string complex_text(const Complex& z) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << (z.real() == 0.0 ? 0.0 : z.real())
     << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

void cmd_mub(const Options& o, std::ostream& out) {
  const Prime p = require_prime(o.p);
  const auto bases = mub_bases(p);
  const auto alphabet = single_alphabet(p);
  // Basis 0 is the Z basis, basis 1 + k the XZ^k basis.
  auto basis_label = [&](std::size_t b) {
    return b == 0 ? std::string("Z") : to_string(PauliLabel{1, static_cast<int>(b - 1)});
  };
  double ortho = 0.0, unbiased = 0.0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    ortho = std::max(ortho, orthonormality_error(bases[i]));
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      unbiased = std::max(unbiased, unbiasedness_error(bases[i], bases[j], p));
    }
  }
  if (o.format == "json") {
    json arr = json::array();
    for (std::size_t b = 0; b < bases.size(); ++b) {
      json vecs = json::array();
      for (const auto& v : bases[b]) vecs.push_back(vector_to_json(v));
      arr.push_back({{"operator", basis_label(b)}, {"vectors", vecs}});
    }
    out << json{{"p", p.value()}, {"bases", arr}, {"max_orthonormality_error", ortho},
                {"max_unbiasedness_error", unbiased}}
               .dump(2)
        << "\n";
    return;
  }
  for (std::size_t b = 0; b < bases.size(); ++b) {
    out << "basis " << b << " (" << basis_label(b) << ")\n";
    for (std::size_t j = 0; j < bases[b].size(); ++j) {
      out << "  |" << j << ">:";
      for (Eigen::Index i = 0; i < bases[b][j].size(); ++i) out << "  " << complex_text(bases[b][j](i));
      out << "\n";
    }
  }
  std::ostringstream tail;
  tail << std::scientific << std::setprecision(2) << "max orthonormality error " << ortho
       << "\nmax unbiasedness error " << unbiased << "\n";
  out << tail.str();
}

void cmd_families(const Options& o, std::ostream& out) {
  const Prime p = require_prime(o.p);
  if (p.value() > kMaxFamilySearchPrime) {
    throw UsageError("families supports p <= " + std::to_string(kMaxFamilySearchPrime));
  }
  const auto families = find_commuting_families(p);
  std::size_t largest = 0;
  for (const auto& f : families) largest = std::max(largest, f.size());
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& f : families) {
      json members = json::array();
      for (const auto& l : f) members.push_back(to_string(l));
      arr.push_back(std::move(members));
    }
    out << json{{"p", p.value()}, {"count", families.size()}, {"max_size", largest}, {"families", arr}}
               .dump(2)
        << "\n";
    return;
  }
  out << families.size() << " maximal commuting families, largest size " << largest << "\n";
  for (const auto& f : families) {
    out << "{";
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? ", " : "") << to_string(f[i]);
    out << "}\n";
  }
}

void cmd_partner(const Options& o, const std::string& a, const std::string& b, int m, const std::string& c,
                 const std::string& d, std::ostream& out) {
  const Prime p = require_prime(o.p);
  const int n = unique_partner(require_label(a, p), require_label(b, p), m, require_label(c, p),
                               require_label(d, p), p);
  if (o.format == "json") {
    out << json{{"p", p.value()}, {"n", n}}.dump(2) << "\n";
  } else {
    out << "n=" << n << "\n";
  }
}

void cmd_dof(const Options& o, int bodies, std::ostream& out) {
  const Prime p = require_prime(o.p);
  if (bodies < 1) throw UsageError("--bodies must be >= 1");
  const auto q = qm_cardinality(p, bodies);
  const auto d = dof(p, bodies);
  if (o.format == "json") {
    out << json{{"p", p.value()}, {"bodies", bodies}, {"questions", q}, {"dof", d}}.dump(2) << "\n";
  } else {
    out << "questions=" << q << " dof=" << d << "\n";
  }
}

void emit_trace(const Options& o, const Scenario& s, std::ostream& out) {
  const auto trace = run_scenario(s.p, s.bodies, s.steps, s.seed);
  if (o.format == "json") {
    out << trace_to_json(s, trace).dump(2) << "\n";
  } else {
    out << trace_to_text(trace);
  }
}

void cmd_scenario_run(const Options& o, const std::string& file, std::ostream& out) {
  json j;
  try {
    j = json::parse(read_file(file));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario file is not valid JSON: ") + e.what());
  }
  auto s = scenario_from_json(j);
  if (o.seed) s.seed = *o.seed;
  emit_trace(o, s, out);
}

void cmd_scenario_paper(const Options& o, const std::string& which, int m, int n, std::ostream& out) {
  Scenario s;
  try {
    s = paper_scenario(which, m, n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.seed) s.seed = *o.seed;
  emit_trace(o, s, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Question-structure toolkit for p-ary systems", "qqs"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--p", o.p, "Prime modulus");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Random seed (default 0)");

  auto* gates = app.add_subcommand("gates", "Enumerate, print or check p-ary gates");
  bool enumerate = false;
  std::optional<int> table;
  std::optional<std::string> check;
  gates->add_flag("--enumerate", enumerate, "One table per gate class");
  gates->add_option("--table", table, "Truth table of a + i b");
  gates->add_option("--check", check, "Check restrictions on the tables in a file");

  auto* oa = app.add_subcommand("oa", "Build or verify orthogonal arrays");
  std::optional<std::int64_t> build;
  std::vector<std::string> verify;
  oa->add_option("--build", build, "Build the OA of the maximal gate family over F_p");
  oa->add_option("--verify", verify, "FILE LEVELS STRENGTH")->expected(3);

  auto* mub = app.add_subcommand("mub", "Print the p + 1 mutually unbiased bases");
  auto* families = app.add_subcommand("families", "Maximal commuting composite families");

  auto* partner = app.add_subcommand("partner", "Unique n with [A (x) B^m, C (x) D^n] = 0");
  std::string la, lb, lc, ld;
  int m = 1;
  partner->add_option("--a", la)->required();
  partner->add_option("--b", lb)->required();
  partner->add_option("--m", m)->required();
  partner->add_option("--c", lc)->required();
  partner->add_option("--d", ld)->required();

  auto* dof_cmd = app.add_subcommand("dof", "Question-set size and degrees of freedom");
  int bodies = 1;
  dof_cmd->add_option("--bodies", bodies, "Number of subsystems")->required();

  auto* scenario = app.add_subcommand("scenario", "Interrogation scenarios");
  scenario->require_subcommand(1);
  scenario->fallthrough();
  auto* run = scenario->add_subcommand("run", "Run a scenario file");
  std::string file;
  run->add_option("file", file)->required();
  auto* paper = scenario->add_subcommand("paper", "Run a built-in scenario");
  std::string which;
  int pm = 0, pn = 0;
  paper->add_option("--which", which, "single5, composite5 or bell2")->required();
  paper->add_option("--m", pm, "First outcome");
  paper->add_option("--n", pn, "Second outcome");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gates->parsed()) {
      cmd_gates(o, enumerate, table, check, out);
    } else if (oa->parsed()) {
      cmd_oa(o, build, verify, out);
    } else if (mub->parsed()) {
      cmd_mub(o, out);
    } else if (families->parsed()) {
      cmd_families(o, out);
    } else if (partner->parsed()) {
      cmd_partner(o, la, lb, m, lc, ld, out);
    } else if (dof_cmd->parsed()) {
      cmd_dof(o, bodies, out);
    } else if (run->parsed()) {
      cmd_scenario_run(o, file, out);
    } else if (paper->parsed()) {
      cmd_scenario_paper(o, which, pm, pn, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qqs
