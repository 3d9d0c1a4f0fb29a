#include "infectio/checker.hpp"

#include <algorithm>
#include <map>

namespace infectio {

std::string_view to_string(CheckErrorKind k) {
  switch (k) {
    case CheckErrorKind::rule_not_in_system: return "rule-not-in-system";
    case CheckErrorKind::arity: return "arity";
    case CheckErrorKind::schema_mismatch: return "schema-mismatch";
    case CheckErrorKind::illegal_discharge: return "illegal-discharge";
    case CheckErrorKind::branch_conclusion_mismatch: return "branch-conclusion-mismatch";
    case CheckErrorKind::duplicate_discharge: return "duplicate-discharge";
    case CheckErrorKind::label_conflict: return "label-conflict";
  }
  return "unknown";
}

namespace {

std::string describe(CheckErrorKind kind, const Path& path, const std::string& detail,
                     int premise) {
  std::string out = std::string(to_string(kind)) + " at " + render_path(path);
  if (premise >= 0) out += " (premise " + std::to_string(premise) + ")";
  return out + ": " + detail;
}

}  // namespace

ProofError::ProofError(CheckErrorKind kind, Path path, const std::string& detail, int premise)
    : std::runtime_error(describe(kind, path, detail, premise)),
      kind_(kind),
      path_(std::move(path)),
      premise_(premise) {}

std::vector<Formula> Judgement::assumptions() const {
  std::vector<Formula> out;
  for (const auto& a : open) out.push_back(a.formula);
  std::sort(out.begin(), out.end());
  return out;
}

Judgement check_step(SystemId system, const Proof& node,
                     const std::vector<Judgement>& premise_judgements) {
  const RuleId r = node.rule();
  const std::string name(to_string(r));
  if (!system_has(system, r)) {
    throw ProofError(CheckErrorKind::rule_not_in_system, {},
                     name + " is not a rule of " + std::string(to_string(system)));
  }
  const RuleSchema& s = rule_schema(r);
  if (node.premises().size() != s.arity() || premise_judgements.size() != s.arity()) {
    throw ProofError(CheckErrorKind::arity, {},
                     name + " takes " + std::to_string(s.arity()) + " premises, got " +
                         std::to_string(node.premises().size()));
  }

  Bindings b;
  for (std::size_t i = 0; i < s.arity(); ++i) {
    const Formula& got = premise_judgements[i].conclusion;
    if (match_schema(s.premises[i], got, b)) continue;
    const int at = static_cast<int>(i);
    if (s.is_branch(i)) {
      throw ProofError(CheckErrorKind::branch_conclusion_mismatch, {},
                       "branch concludes " + render_formula(got) + " but expected " +
                           render_formula(instantiate(s.premises[i], b)),
                       at);
    }
    throw ProofError(CheckErrorKind::schema_mismatch, {},
                     render_formula(got) + " does not match " + render_formula(s.premises[i]) +
                         " of " + name,
                     at);
  }
  if (!match_schema(s.conclusion, node.conclusion(), b)) {
    throw ProofError(CheckErrorKind::schema_mismatch, {},
                     "conclusion " + render_formula(node.conclusion()) + " does not fit " + name);
  }

  Judgement out{{}, node.conclusion()};
  for (std::size_t i = 0; i < s.arity(); ++i) {
    const auto& closed = node.discharges()[i];
    const auto& open = premise_judgements[i].open;
    const int at = static_cast<int>(i);
    if (!closed.empty() && !s.is_branch(i)) {
      throw ProofError(CheckErrorKind::illegal_discharge, {},
                       "premise " + std::to_string(i) + " of " + name + " discharges nothing",
                       at);
    }
    for (const auto& label : closed) {
      if (label.empty()) {
        throw ProofError(CheckErrorKind::illegal_discharge, {}, "empty label discharged", at);
      }
      if (std::count(closed.begin(), closed.end(), label) > 1) {
        throw ProofError(CheckErrorKind::duplicate_discharge, {},
                         "label " + label + " listed twice", at);
      }
      auto leaf = std::find_if(open.begin(), open.end(),
                               [&](const OpenAssumption& a) { return a.label == label; });
      if (leaf == open.end()) {
        throw ProofError(CheckErrorKind::illegal_discharge, {},
                         "label " + label + " labels no open assumption of the branch", at);
      }
      bool ok = false;
      for (const auto& h : s.hypotheses[i]) {
        Bindings trial = b;
        if (match_schema(h, leaf->formula, trial)) {
          b = std::move(trial);
          ok = true;
          break;
        }
      }
      if (!ok) {
        throw ProofError(CheckErrorKind::illegal_discharge, {},
                         render_formula(leaf->formula) + " (label " + label +
                             ") is not dischargeable in this branch of " + name,
                         at);
      }
    }
    for (const auto& a : open) {
      if (a.label.empty() || std::find(closed.begin(), closed.end(), a.label) == closed.end()) {
        out.open.push_back(a);
      }
    }
  }
  return out;
}

namespace {

Judgement check_at(SystemId system, const Proof& p, Path& path) {
  if (p.is_assumption()) return {{{p.label(), p.conclusion()}}, p.conclusion()};
  std::vector<Judgement> sub;
  for (std::size_t i = 0; i < p.premises().size(); ++i) {
    path.push_back(i);
    sub.push_back(check_at(system, p.premise(i), path));
    path.pop_back();
  }
  try {
    return check_step(system, p, sub);
  } catch (const ProofError& e) {
    // Re-raise with the location filled in; the message is rebuilt.
    std::string what = e.what();
    const auto colon = what.find(": ");
    throw ProofError(e.kind(), path, colon == std::string::npos ? what : what.substr(colon + 2),
                     e.premise());
  }
}

void check_labels(const Proof& p) {
  std::map<Label, Formula> formula_of;
  std::map<Label, Path> binder_of;
  for_each_postorder(p, [&](const Path& path, const Proof& q) {
    if (q.is_assumption()) {
      if (q.label().empty()) return;
      auto [it, inserted] = formula_of.emplace(q.label(), q.conclusion());
      if (!inserted && it->second != q.conclusion()) {
        throw ProofError(CheckErrorKind::label_conflict, path,
                         "label " + q.label() + " used for both " + render_formula(it->second) +
                             " and " + render_formula(q.conclusion()));
      }
      return;
    }
    for (const auto& closed : q.discharges()) {
      for (const auto& l : closed) {
        auto [it, inserted] = binder_of.emplace(l, path);
        if (!inserted && it->second != path) {
          throw ProofError(CheckErrorKind::duplicate_discharge, path,
                           "label " + l + " is also discharged at " + render_path(it->second));
        }
      }
    }
  });
}

}  // namespace

Judgement check_proof(SystemId system, const Proof& p) {
  check_labels(p);
  Path path;
  Judgement j = check_at(system, p, path);
  for (const auto& a : j.open) {
    if (!a.label.empty()) {
      const auto bound = bound_labels(p);
      if (bound.contains(a.label)) {
        throw ProofError(CheckErrorKind::label_conflict, {},
                         "label " + a.label + " is discharged in one place and open in another");
      }
    }
  }
  return j;
}

bool is_valid(SystemId system, const Proof& p, std::string* why) {
  try {
    check_proof(system, p);
    return true;
  } catch (const ProofError& e) {
    if (why) *why = e.what();
    return false;
  }
}

}  // namespace infectio
