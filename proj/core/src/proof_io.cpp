#include "infectio/proof_io.hpp"

#include <fstream>
#include <sstream>

#include "infectio/error.hpp"
#include "sexpr.hpp"

namespace infectio {

namespace {

using sexpr::Value;

Formula formula_at(const Value& v) {
  if (!v.is_string()) throw ParseError("expected a quoted formula", v.offset);
  try {
    return parse_formula(v.text);
  } catch (const ParseError& e) {
    throw ParseError(std::string("bad formula \"") + v.text + "\"", v.offset + 1 + e.position());
  }
}

Proof build(const Value& v) {
  if (v.is_form("assume")) {
    if (v.items.size() == 2) return Proof::assume(formula_at(v.items[1]));
    if (v.items.size() == 3 && v.items[1].is_atom()) {
      return Proof::assume(formula_at(v.items[2]), v.items[1].text);
    }
    throw ParseError("expected (assume <label> \"<formula>\")", v.offset);
  }
  if (!v.is_form("rule")) throw ParseError("expected (assume ...) or (rule ...)", v.offset);
  if (v.items.size() < 3 || !v.items[1].is_atom() || !v.items[2].is_list()) {
    throw ParseError("expected (rule <RuleId> (<premises>) ...)", v.offset);
  }
  auto r = parse_rule(v.items[1].text);
  if (!r) throw ParseError("unknown rule " + v.items[1].text, v.items[1].offset);

  std::vector<Proof> premises;
  for (const auto& item : v.items[2].items) premises.push_back(build(item));

  std::vector<std::vector<Label>> discharges(premises.size());
  std::optional<Formula> conclusion;
  for (std::size_t k = 3; k < v.items.size(); ++k) {
    const Value& clause = v.items[k];
    if (clause.is_form("discharge")) {
      for (std::size_t j = 1; j < clause.items.size(); ++j) {
        const Value& group = clause.items[j];
        if (!group.is_list() || group.items.empty() || !group.items[0].is_atom()) {
          throw ParseError("expected (<premise-index> <label> ...)", group.offset);
        }
        std::size_t idx = 0;
        try {
          std::size_t used = 0;
          idx = std::stoul(group.items[0].text, &used);
          if (used != group.items[0].text.size()) throw std::invalid_argument("index");
        } catch (const std::exception&) {
          throw ParseError("bad premise index " + group.items[0].text, group.items[0].offset);
        }
        if (idx >= premises.size()) {
          throw ParseError("premise index " + std::to_string(idx) + " out of range",
                           group.items[0].offset);
        }
        for (std::size_t m = 1; m < group.items.size(); ++m) {
          if (!group.items[m].is_atom()) throw ParseError("expected a label", group.items[m].offset);
          discharges[idx].push_back(group.items[m].text);
        }
      }
    } else if (clause.is_form("conclude") && clause.items.size() == 2) {
      conclusion = formula_at(clause.items[1]);
    } else {
      throw ParseError("expected (discharge ...) or (conclude \"<formula>\")", clause.offset);
    }
  }
  if (!conclusion) {
    std::vector<Formula> concl;
    for (const auto& q : premises) concl.push_back(q.conclusion());
    conclusion = infer_conclusion(*r, concl);
    if (!conclusion) {
      throw ParseError(std::string(to_string(*r)) +
                           " needs a (conclude ...) clause: its premises do not fix the conclusion",
                       v.offset);
    }
  }
  return Proof::rule(*r, std::move(premises), std::move(discharges), std::move(*conclusion));
}

void write(const Proof& p, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent), ' ');
  if (p.is_assumption()) {
    out += "(assume ";
    if (!p.label().empty()) out += p.label() + " ";
    out += sexpr::quote(render_formula(p.conclusion())) + ")";
    return;
  }
  out += "(rule ";
  out += to_string(p.rule());
  out += " (";
  for (const auto& q : p.premises()) {
    out += "\n";
    write(q, indent + 4, out);
  }
  out += ")";

  bool any = false;
  for (const auto& d : p.discharges()) any |= !d.empty();
  if (any) {
    out += "\n";
    out.append(static_cast<std::size_t>(indent + 2), ' ');
    out += "(discharge";
    for (std::size_t i = 0; i < p.discharges().size(); ++i) {
      if (p.discharges()[i].empty()) continue;
      out += " (" + std::to_string(i);
      for (const auto& l : p.discharges()[i]) out += " " + l;
      out += ")";
    }
    out += ")";
  }

  std::vector<Formula> concl;
  for (const auto& q : p.premises()) concl.push_back(q.conclusion());
  auto inferred = infer_conclusion(p.rule(), concl);
  if (!inferred || *inferred != p.conclusion()) {
    out += "\n";
    out.append(static_cast<std::size_t>(indent + 2), ' ');
    out += "(conclude " + sexpr::quote(render_formula(p.conclusion())) + ")";
  }
  out += ")";
}

}  // namespace

Proof parse_proof(std::string_view text) { return build(sexpr::parse(text)); }

std::string write_proof(const Proof& p) {
  std::string out;
  write(p, 0, out);
  out += "\n";
  return out;
}

Proof read_proof_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_proof(ss.str());
}

void write_proof_file(const std::filesystem::path& path, const Proof& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_proof(p);
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace infectio
