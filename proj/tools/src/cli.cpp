#include "infectio_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "infectio/infectio.hpp"

namespace infectio::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Formula> parse_side(std::string_view text, std::size_t offset) {
  std::vector<Formula> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (trim(part).empty()) throw ParseError("empty formula in sequent", offset + start);
    try {
      out.push_back(parse_formula(part));
    } catch (const ParseError& e) {
      throw ParseError("bad formula '" + trim(part) + "'", offset + start + e.position());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<Formula>& fs) {
  std::string out;
  for (const auto& f : fs) {
    if (!out.empty()) out += ", ";
    out += render_formula(f);
  }
  return out;
}

std::string render_valuation(const Valuation& v) {
  std::string out;
  for (const auto& [name, value] : v) {
    if (!out.empty()) out += ' ';
    out += name + '=' + to_char(value);
  }
  return out;
}

json valuation_json(const Valuation& v) {
  json out = json::object();
  for (const auto& [name, value] : v) out[name] = std::string(1, to_char(value));
  return out;
}

std::string value_str(TruthValue v) { return std::string(1, to_char(v)); }

LogicId logic_arg(const std::string& name) {
  auto id = parse_logic(name);
  if (!id) throw UsageError("unknown logic '" + name + "'");
  return *id;
}

SystemId system_arg(const std::string& name) {
  auto id = parse_system(name);
  if (!id) throw UsageError("unknown system '" + name + "'");
  return *id;
}

Proof load(const std::string& path) {
  try {
    return read_proof_file(path);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

json path_json(const Path& p) { return json(p); }

json redex_json(const Redex& r) {
  return {{"kind", std::string(to_string(r.kind))},
          {"position", path_json(r.position)},
          {"producer", std::string(to_string(r.producer))},
          {"consumer", std::string(to_string(r.consumer_rule))},
          {"formula", render_formula(r.formula)}};
}

json rank_json(const Rank& r) { return json::array({r.d, r.l}); }

struct Report {
  int status = kOk;
  json data = json::object();
  std::string text;
};

Report tables_cmd(LogicId logic) {
  const Matrix& m = logic_matrix(logic);
  Report r;
  r.text = render_tables(logic);
  json values = json::array(), designated = json::array(), neg = json::object();
  json and_ = json::array(), or_ = json::array();
  for (auto v : m.carrier) {
    values.push_back(value_str(v));
    neg[value_str(v)] = value_str(m.apply_neg(v));
    json and_row = json::array(), or_row = json::array();
    for (auto w : m.carrier) {
      and_row.push_back(value_str(m.apply_and(v, w)));
      or_row.push_back(value_str(m.apply_or(v, w)));
    }
    and_.push_back(and_row);
    or_.push_back(or_row);
  }
  for (auto v : m.designated) designated.push_back(value_str(v));
  r.data = {{"logic", std::string(to_string(logic))},
            {"values", values},
            {"designated", designated},
            {"neg", neg},
            {"and", and_},
            {"or", or_}};
  return r;
}

Report entail_cmd(LogicId logic, const Sequent& s) {
  Report r;
  const auto result = entails(logic, s.gamma, s.delta);
  r.status = result.holds ? kOk : kFails;
  r.data = {{"logic", std::string(to_string(logic))},
            {"gamma", json::array()},
            {"delta", json::array()},
            {"holds", result.holds}};
  for (const auto& f : s.gamma) r.data["gamma"].push_back(render_formula(f));
  for (const auto& f : s.delta) r.data["delta"].push_back(render_formula(f));
  r.text = join(s.gamma) + " |= " + join(s.delta) + " in " + std::string(to_string(logic)) + ": ";
  if (result.holds) {
    r.text += "holds\n";
  } else {
    r.text += "fails\ncountermodel: " + render_valuation(*result.countermodel) + "\n";
    r.data["countermodel"] = valuation_json(*result.countermodel);
  }
  return r;
}

std::string render_judgement(const Judgement& j) {
  return join(j.assumptions()) + " |- " + render_formula(j.conclusion);
}

// Checks `p`, filling a failing report when it is invalid.
std::optional<Judgement> checked(SystemId system, const Proof& p, Report& r) {
  try {
    return check_proof(system, p);
  } catch (const ProofError& e) {
    r.status = kFails;
    r.data["valid"] = false;
    r.data["error"] = {{"kind", std::string(to_string(e.kind()))},
                       {"path", path_json(e.path())},
                       {"message", e.what()}};
    r.text += std::string("invalid: ") + e.what() + "\n";
    return std::nullopt;
  }
}

Report check_cmd(SystemId system, const Proof& p) {
  Report r;
  r.data["system"] = std::string(to_string(system));
  if (auto j = checked(system, p, r)) {
    r.data["valid"] = true;
    r.data["judgement"] = render_judgement(*j);
    r.text = "valid: " + render_judgement(*j) + "\n";
  }
  return r;
}

Report normalise_cmd(SystemId system, const Proof& p, const std::optional<std::string>& out_path,
                     bool trace) {
  Report r;
  r.data["system"] = std::string(to_string(system));
  if (!checked(system, p, r)) return r;
  const Normalisation n = normalise(system, p);
  const std::string written = write_proof(n.result);
  r.data["steps"] = n.trace.size();
  r.data["rank_before"] = rank_json(rank(system, p));
  r.data["normal"] = is_normal(system, n.result);
  std::ostringstream text;
  text << "normalised in " << n.trace.size() << " step" << (n.trace.size() == 1 ? "" : "s")
       << "\n";
  if (trace) {
    json steps = json::array();
    for (const auto& s : n.trace) {
      json step = redex_json(s.redex);
      step["rank_before"] = rank_json(s.before);
      step["rank_after"] = rank_json(s.after);
      steps.push_back(step);
      text << "  " << to_string(s.redex.kind) << ' ' << to_string(s.redex.producer) << '/'
           << to_string(s.redex.consumer_rule) << " at " << render_path(s.redex.position)
           << " on " << render_formula(s.redex.formula) << "  " << render_rank(s.before)
           << " -> " << render_rank(s.after) << "\n";
    }
    r.data["trace"] = steps;
  }
  if (out_path) {
    try {
      write_proof_file(*out_path, n.result);
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
    r.data["output"] = *out_path;
  } else {
    r.data["proof"] = written;
    text << written;
  }
  r.text = text.str();
  return r;
}

Report nsp_cmd(SystemId system, const Proof& p) {
  Report r;
  r.data["system"] = std::string(to_string(system));
  if (!checked(system, p, r)) return r;
  const NspReport nsp = check_nsp(system, p);
  r.status = nsp.holds ? kOk : kFails;
  r.data["holds"] = nsp.holds;
  r.data["violations"] = json::array();
  r.text = nsp.holds ? "subformula property holds\n" : "subformula property fails\n";
  for (const auto& v : nsp.violations) {
    const std::string f = render_formula(p.at(v).conclusion());
    r.data["violations"].push_back({{"path", path_json(v)}, {"formula", f}});
    r.text += "  " + render_path(v) + ": " + f + "\n";
  }
  return r;
}

Report search_cmd(SystemId system, const Sequent& s, SearchBudget budget) {
  if (s.delta.size() != 1) throw UsageError("search needs exactly one formula after |-");
  Report r;
  Prover prover(system);
  const auto proof = prover.prove(s.gamma, s.delta[0], budget);
  const auto& stats = prover.last_stats();
  const bool valid = entails(system_logic(system), s.gamma, s.delta).holds;
  r.data = {{"system", std::string(to_string(system))},
            {"found", proof.has_value()},
            {"nodes", stats.nodes},
            {"exhausted", stats.exhausted},
            {"semantically_valid", valid}};
  if (proof) {
    r.data["proof"] = write_proof(*proof);
    r.text = write_proof(*proof);
  } else {
    r.status = kFails;
    r.text = std::string("no proof found within budget") +
             (stats.exhausted ? " (node limit reached)" : "") +
             (valid ? "; the sequent is semantically valid\n" : "; the sequent is not valid\n");
  }
  return r;
}

}  // namespace

Sequent parse_sequent(std::string_view text) {
  std::size_t turnstile = text.find("|-");
  std::size_t width = 2;
  if (turnstile == std::string_view::npos) {
    turnstile = text.find("⊢");
    width = 3;
  }
  if (turnstile == std::string_view::npos) throw ParseError("expected '|-' in sequent", 0);
  const auto rest = text.substr(turnstile + width);
  if (rest.find("|-") != std::string_view::npos) {
    throw ParseError("more than one '|-' in sequent", turnstile + width + rest.find("|-"));
  }
  return {parse_side(text.substr(0, turnstile), 0), parse_side(rest, turnstile + width)};
}

std::string render_tables(LogicId logic) {
  const Matrix& m = logic_matrix(logic);
  std::ostringstream out;
  auto values = [&](const std::vector<TruthValue>& vs) {
    std::string s;
    for (auto v : vs) s += std::string(s.empty() ? "" : " ") + to_char(v);
    return s;
  };
  out << to_string(logic) << "\n";
  out << "values: " << values(m.carrier) << "\n";
  out << "designated: " << values(m.designated) << "\n\n";
  out << "~\n";
  for (auto v : m.carrier) out << to_char(v) << "   " << to_char(m.apply_neg(v)) << "\n";
  auto binary = [&](char op, TruthValue (Matrix::*apply)(TruthValue, TruthValue) const) {
    out << "\n" << op << "   " << values(m.carrier) << "\n";
    for (auto v : m.carrier) {
      out << to_char(v) << "  ";
      for (auto w : m.carrier) out << ' ' << to_char((m.*apply)(v, w));
      out << "\n";
    }
  };
  binary('&', &Matrix::apply_and);
  binary('|', &Matrix::apply_or);
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Natural deduction and semantics for infectious logics", "infectio"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Print the report as JSON");

  std::string name, target, out_path;
  bool trace = false;
  SearchBudget budget;

  auto* tables = app.add_subcommand("tables", "Print the truth tables of a logic");
  tables->add_option("logic", name, "Logic name")->required();

  auto* entail = app.add_subcommand("entail", "Decide an entailment by enumeration");
  entail->add_option("logic", name, "Logic name")->required();
  entail->add_option("sequent", target, "F1, ... |- G1, ...")->required();

  auto* check = app.add_subcommand("check", "Check a proof file");
  check->add_option("system", name, "Proof system")->required();
  check->add_option("file", target, "Proof file")->required();

  auto* norm = app.add_subcommand("normalise", "Normalise a proof file");
  norm->alias("normalize");
  norm->add_option("system", name, "Proof system")->required();
  norm->add_option("file", target, "Proof file")->required();
  norm->add_option("-o,--output", out_path, "Write the normal proof here");
  norm->add_flag("--trace", trace, "Report each conversion");

  auto* nsp = app.add_subcommand("nsp", "Check the subformula property of a proof file");
  nsp->add_option("system", name, "Proof system")->required();
  nsp->add_option("file", target, "Proof file")->required();

  auto* search = app.add_subcommand("search", "Search for a proof of a sequent");
  search->add_option("system", name, "Proof system")->required();
  search->add_option("sequent", target, "F1, ... |- G")->required();
  search->add_option("--depth", budget.max_depth, "Maximum search depth")
      ->check(CLI::PositiveNumber);
  search->add_option("--nodes", budget.max_nodes, "Maximum subgoals visited")
      ->check(CLI::PositiveNumber);

  for (auto* sub : {tables, entail, check, norm, nsp, search}) {
    sub->add_flag("--json", as_json, "Print the report as JSON");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  Report report;
  try {
    if (tables->parsed()) {
      report = tables_cmd(logic_arg(name));
    } else if (entail->parsed()) {
      const LogicId logic = logic_arg(name);
      report = entail_cmd(logic, parse_sequent(target));
    } else if (check->parsed()) {
      const SystemId system = system_arg(name);
      report = check_cmd(system, load(target));
    } else if (norm->parsed()) {
      const SystemId system = system_arg(name);
      report = normalise_cmd(system, load(target),
                             out_path.empty() ? std::nullopt : std::optional(out_path), trace);
    } else if (nsp->parsed()) {
      const SystemId system = system_arg(name);
      report = nsp_cmd(system, load(target));
    } else {
      const SystemId system = system_arg(name);
      report = search_cmd(system, parse_sequent(target), budget);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TooManyVariables& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NormalisationError& e) {
    err << "error: " << e.what() << "\n";
    return kFails;
  }

  if (as_json) {
    report.data["status"] = report.status;
    out << report.data.dump(2) << "\n";
  } else {
    out << report.text;
  }
  return report.status;
}

}  // namespace infectio::cli
