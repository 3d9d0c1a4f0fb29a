#include "infectio/calculus.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace infectio {

namespace {

struct RuleRow {
  RuleId id;
  std::string_view name;
  RuleKind kind;
  std::vector<std::string_view> premises;
  std::vector<std::vector<std::string_view>> hypotheses;
  std::string_view conclusion;
};

constexpr auto I = RuleKind::introduction;
constexpr auto E = RuleKind::elimination;

std::vector<RuleRow> rule_rows() {
  return {
      {RuleId::AndI, "AndI", I, {"A", "B"}, {}, "A & B"},
      {RuleId::AndE1, "AndE1", E, {"A & B"}, {}, "A"},
      {RuleId::AndE2, "AndE2", E, {"A & B"}, {}, "B"},
      {RuleId::OrI1, "OrI1", I, {"A"}, {}, "A | B"},
      {RuleId::OrI2, "OrI2", I, {"B"}, {}, "A | B"},
      {RuleId::OrE, "OrE", E, {"A | B", "C", "C"}, {{}, {"A"}, {"B"}}, "C"},
      {RuleId::NegNegI, "NegNegI", I, {"A"}, {}, "~~A"},
      {RuleId::NegNegE, "NegNegE", E, {"~~A"}, {}, "A"},

      {RuleId::OrI1p, "OrI1p", I, {"A", "~B"}, {}, "A | B"},
      {RuleId::OrI2p, "OrI2p", I, {"~A", "B"}, {}, "A | B"},
      {RuleId::OrI3p, "OrI3p", I, {"A", "B"}, {}, "A | B"},
      {RuleId::OrEp, "OrEp", E, {"A | B", "C", "C", "C"},
       {{}, {"A", "~B"}, {"~A", "B"}, {"A", "B"}}, "C"},
      {RuleId::NegAndE_p, "NegAndE_p", E, {"~(A & B)", "C", "C", "C"},
       {{}, {"~A", "B"}, {"A", "~B"}, {"~A", "~B"}}, "C"},
      {RuleId::NegOrIp, "NegOrIp", I, {"~A", "~B"}, {}, "~(A | B)"},
      {RuleId::NegOrE1p, "NegOrE1p", E, {"~(A | B)"}, {}, "~A"},
      {RuleId::NegOrE2p, "NegOrE2p", E, {"~(A | B)"}, {}, "~B"},
      {RuleId::NegAndI1p, "NegAndI1p", I, {"~A", "B"}, {}, "~(A & B)"},
      {RuleId::NegAndI2p, "NegAndI2p", I, {"A", "~B"}, {}, "~(A & B)"},
      {RuleId::NegAndI3p, "NegAndI3p", I, {"~A", "~B"}, {}, "~(A & B)"},

      {RuleId::NegAndI1, "NegAndI1", I, {"~A"}, {}, "~(A & B)"},
      {RuleId::NegAndI2, "NegAndI2", I, {"~B"}, {}, "~(A & B)"},
      {RuleId::NegAndEp, "NegAndEp", E, {"~(A & B)", "C", "C"}, {{}, {"~A"}, {"~B"}}, "C"},
      {RuleId::NegOrI, "NegOrI", I, {"~A & ~B"}, {}, "~(A | B)"},

      {RuleId::AndI2, "AndI2", I, {"A", "~A"}, {}, "A & B"},
      {RuleId::AndI3, "AndI3", I, {"B", "~B"}, {}, "A & B"},
      {RuleId::NegOrI2, "NegOrI2", I, {"A", "~A"}, {}, "~(A | B)"},
      {RuleId::NegOrI3, "NegOrI3", I, {"B", "~B"}, {}, "~(A | B)"},
      {RuleId::AndE_bi, "AndE_bi", E, {"A & B", "C", "C", "C"},
       {{}, {"A", "B"}, {"A", "~A"}, {"B", "~B"}}, "C"},
      {RuleId::NegOrE_bi, "NegOrE_bi", E, {"~(A | B)", "C", "C", "C"},
       {{}, {"~A", "~B"}, {"A", "~A"}, {"B", "~B"}}, "C"},

      {RuleId::OrER, "OrER", E, {"A | B", "C", "C"}, {{}, {"A"}, {"~A", "B"}}, "C"},
      {RuleId::OrEL, "OrEL", E, {"A | B", "C", "C"}, {{}, {"A", "~B"}, {"B"}}, "C"},
      {RuleId::NegAndER, "NegAndER", E, {"~(A & B)", "C", "C"}, {{}, {"~A"}, {"A", "~B"}}, "C"},
      {RuleId::NegAndEL, "NegAndEL", E, {"~(A & B)", "C", "C"}, {{}, {"~A", "B"}, {"~B"}}, "C"},
      {RuleId::AndER, "AndER", E, {"A & B", "C", "C"}, {{}, {"A", "B"}, {"A", "~A"}}, "C"},
      {RuleId::AndEL, "AndEL", E, {"A & B", "C", "C"}, {{}, {"A", "B"}, {"B", "~B"}}, "C"},
      {RuleId::NegOrER, "NegOrER", E, {"~(A | B)", "C", "C"}, {{}, {"~A", "~B"}, {"A", "~A"}}, "C"},
      {RuleId::NegOrEL, "NegOrEL", E, {"~(A | B)", "C", "C"}, {{}, {"~A", "~B"}, {"B", "~B"}}, "C"},
      {RuleId::AndERp, "AndERp", E, {"A & B", "C", "C"}, {{}, {"~A"}, {"B"}}, "C"},
      {RuleId::AndELp, "AndELp", E, {"A & B", "C", "C"}, {{}, {"A"}, {"~B"}}, "C"},
      {RuleId::NegOrERp, "NegOrERp", E, {"~(A | B)", "C", "C"}, {{}, {"A"}, {"~B"}}, "C"},
      {RuleId::NegOrELp, "NegOrELp", E, {"~(A | B)", "C", "C"}, {{}, {"~A"}, {"B"}}, "C"},

      {RuleId::EFQ, "EFQ", RuleKind::efq, {"A", "~A"}, {}, "B"},
      {RuleId::EM, "EM", RuleKind::em, {"C", "C"}, {{"A"}, {"~A"}}, "C"},
  };
}

struct RuleTable {
  std::vector<RuleSchema> schemas;
  std::array<std::string_view, kRuleCount> names;
  std::array<RuleId, kRuleCount> ids;
};

const RuleTable& rule_table() {
  static const RuleTable table = [] {
    RuleTable t{};
    auto rows = rule_rows();
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& row : rows) {
      const auto i = static_cast<std::size_t>(row.id);
      RuleSchema s{row.id, row.kind, {}, {}, parse_formula(row.conclusion)};
      for (auto p : row.premises) s.premises.push_back(parse_formula(p));
      s.hypotheses.resize(s.premises.size());
      for (std::size_t k = 0; k < row.hypotheses.size(); ++k) {
        for (auto h : row.hypotheses[k]) s.hypotheses[k].push_back(parse_formula(h));
      }
      t.schemas.push_back(std::move(s));
      t.names[i] = row.name;
      t.ids[i] = row.id;
    }
    return t;
  }();
  return table;
}

constexpr std::array<SystemId, 15> kSystems = {
    SystemId::NDp_Sfde,  SystemId::NDp_dSfde,     SystemId::NDp_SfdeR, SystemId::NDp_SfdeL,
    SystemId::ND_dSfdeR, SystemId::ND_dSfdeR_alt, SystemId::ND_dSfdeL, SystemId::ND_dSfdeL_alt,
    SystemId::NDp_K3R,   SystemId::NDp_K3L,       SystemId::NDp_K3w,   SystemId::NDp_K3R2,
    SystemId::NDp_K3L2,  SystemId::NDp_PWK,       SystemId::ND_FDEp,
};

constexpr std::array<std::string_view, 15> kSystemNames = {
    "NDp_Sfde",  "NDp_dSfde",     "NDp_SfdeR", "NDp_SfdeL", "ND_dSfdeR",
    "ND_dSfdeR_alt", "ND_dSfdeL", "ND_dSfdeL_alt", "NDp_K3R", "NDp_K3L",
    "NDp_K3w",   "NDp_K3R2",      "NDp_K3L2",  "NDp_PWK",   "ND_FDEp",
};

using R = RuleId;
using RuleSet = std::vector<RuleId>;

RuleSet replace(RuleSet base, const RuleSet& out, const RuleSet& in) {
  std::erase_if(base, [&](RuleId r) { return std::find(out.begin(), out.end(), r) != out.end(); });
  base.insert(base.end(), in.begin(), in.end());
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  return base;
}

std::array<RuleSet, 15> build_systems() {
  const RuleSet sfde = {R::AndI,     R::AndE1,    R::AndE2,     R::NegNegI,   R::NegNegE,
                        R::OrEp,     R::NegAndE_p, R::OrI1p,    R::OrI2p,     R::OrI3p,
                        R::NegOrIp,  R::NegOrE1p, R::NegOrE2p,  R::NegAndI1p, R::NegAndI2p,
                        R::NegAndI3p};
  const RuleSet dsfde = {R::OrI1,     R::OrI2,     R::OrE,      R::AndI,    R::AndI2,
                         R::NegNegI,  R::NegNegE,  R::NegAndI1, R::NegAndI2, R::NegOrIp,
                         R::NegAndEp, R::AndI3,    R::NegOrI2,  R::NegOrI3, R::AndE_bi,
                         R::NegOrE_bi};
  const RuleSet fde = {R::AndI,    R::AndE1,    R::AndE2,    R::OrI1,     R::OrI2,
                       R::OrE,     R::NegNegI,  R::NegNegE,  R::NegOrIp,  R::NegOrE1p,
                       R::NegOrE2p, R::NegAndI1, R::NegAndI2, R::NegAndEp};

  const RuleSet sfde_r = replace(sfde, {R::OrI1p, R::OrI3p, R::OrEp, R::NegAndI1p, R::NegAndI3p,
                                        R::NegAndE_p},
                                 {R::OrI1, R::OrER, R::NegAndI1, R::NegAndER});
  const RuleSet sfde_l = replace(sfde, {R::OrI2p, R::OrI3p, R::OrEp, R::NegAndI2p, R::NegAndI3p,
                                        R::NegAndE_p},
                                 {R::OrI2, R::OrEL, R::NegAndI2, R::NegAndEL});
  const RuleSet right_out = {R::AndI3, R::AndE_bi, R::NegOrI3, R::NegOrE_bi};
  const RuleSet left_out = {R::AndI2, R::AndE_bi, R::NegOrI2, R::NegOrE_bi};
  const RuleSet dsfde_r = replace(dsfde, right_out, {R::AndER, R::NegOrER});
  const RuleSet dsfde_r_alt =
      replace(dsfde, right_out, {R::AndERp, R::AndE1, R::NegOrERp, R::NegOrE1p});
  const RuleSet dsfde_l = replace(dsfde, left_out, {R::AndEL, R::NegOrEL});
  const RuleSet dsfde_l_alt =
      replace(dsfde, left_out, {R::AndELp, R::AndE2, R::NegOrELp, R::NegOrE2p});

  std::array<RuleSet, 15> s;
  auto at = [&s](SystemId id) -> RuleSet& { return s[static_cast<std::size_t>(id)]; };
  at(SystemId::NDp_Sfde) = replace(sfde, {}, {});
  at(SystemId::NDp_dSfde) = replace(dsfde, {}, {});
  at(SystemId::NDp_SfdeR) = sfde_r;
  at(SystemId::NDp_SfdeL) = sfde_l;
  at(SystemId::ND_dSfdeR) = dsfde_r;
  at(SystemId::ND_dSfdeR_alt) = dsfde_r_alt;
  at(SystemId::ND_dSfdeL) = dsfde_l;
  at(SystemId::ND_dSfdeL_alt) = dsfde_l_alt;
  at(SystemId::NDp_K3R) = replace(sfde_r, {}, {R::EFQ});
  at(SystemId::NDp_K3L) = replace(sfde_l, {}, {R::EFQ});
  at(SystemId::NDp_K3w) = replace(sfde, {}, {R::EFQ});
  at(SystemId::NDp_K3R2) = replace(dsfde_r, {}, {R::EM});
  at(SystemId::NDp_K3L2) = replace(dsfde_l, {}, {R::EM});
  at(SystemId::NDp_PWK) = replace(dsfde, {}, {R::EM});
  at(SystemId::ND_FDEp) = replace(fde, {}, {});
  return s;
}

const std::array<RuleSet, 15>& systems() {
  static const std::array<RuleSet, 15> s = build_systems();
  return s;
}

}  // namespace

bool RuleSchema::is_del() const {
  return std::any_of(hypotheses.begin(), hypotheses.end(),
                     [](const auto& h) { return !h.empty(); });
}

bool RuleSchema::is_major(std::size_t i) const {
  switch (kind) {
    case RuleKind::elimination: return i == 0;
    case RuleKind::efq: return true;
    default: return false;
  }
}

std::vector<std::size_t> RuleSchema::branches() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    if (!hypotheses[i].empty()) out.push_back(i);
  }
  return out;
}

std::span<const RuleId> all_rules() { return rule_table().ids; }

std::string_view to_string(RuleId r) { return rule_table().names[static_cast<std::size_t>(r)]; }

std::optional<RuleId> parse_rule(std::string_view name) {
  const auto& t = rule_table();
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    if (t.names[i] == name) return t.ids[i];
  }
  return std::nullopt;
}

const RuleSchema& rule_schema(RuleId r) {
  return rule_table().schemas[static_cast<std::size_t>(r)];
}

bool match_schema(const Formula& schema, const Formula& f, Bindings& b) {
  if (schema.is_var()) {
    auto [it, inserted] = b.emplace(schema.name(), f);
    return inserted || it->second == f;
  }
  if (schema.kind() != f.kind()) return false;
  if (schema.is_neg()) return match_schema(schema.operand(), f.operand(), b);
  return match_schema(schema.left(), f.left(), b) && match_schema(schema.right(), f.right(), b);
}

Formula instantiate(const Formula& schema, const Bindings& b) {
  switch (schema.kind()) {
    case Connective::var: return b.at(schema.name());
    case Connective::neg: return ~instantiate(schema.operand(), b);
    case Connective::conj: return instantiate(schema.left(), b) & instantiate(schema.right(), b);
    case Connective::disj: return instantiate(schema.left(), b) | instantiate(schema.right(), b);
  }
  throw std::logic_error("bad connective");
}

std::optional<Formula> infer_conclusion(RuleId r, std::span<const Formula> premise_conclusions) {
  const RuleSchema& s = rule_schema(r);
  if (premise_conclusions.size() != s.arity()) return std::nullopt;
  Bindings b;
  for (std::size_t i = 0; i < s.arity(); ++i) {
    if (!match_schema(s.premises[i], premise_conclusions[i], b)) return std::nullopt;
  }
  for (const auto& v : variables(s.conclusion)) {
    if (!b.contains(v)) return std::nullopt;
  }
  return instantiate(s.conclusion, b);
}

std::span<const SystemId> all_systems() { return kSystems; }

std::string_view to_string(SystemId s) { return kSystemNames[static_cast<std::size_t>(s)]; }

std::optional<SystemId> parse_system(std::string_view name) {
  for (std::size_t i = 0; i < kSystemNames.size(); ++i) {
    if (kSystemNames[i] == name) return kSystems[i];
  }
  return std::nullopt;
}

const std::vector<RuleId>& system_rules(SystemId s) {
  return systems()[static_cast<std::size_t>(s)];
}

bool system_has(SystemId s, RuleId r) {
  const auto& rules = system_rules(s);
  return std::binary_search(rules.begin(), rules.end(), r);
}

LogicId system_logic(SystemId s) {
  switch (s) {
    case SystemId::NDp_Sfde: return LogicId::Sfde;
    case SystemId::NDp_dSfde: return LogicId::dSfde;
    case SystemId::NDp_SfdeR: return LogicId::SfdeR;
    case SystemId::NDp_SfdeL: return LogicId::SfdeL;
    case SystemId::ND_dSfdeR:
    case SystemId::ND_dSfdeR_alt: return LogicId::dSfdeR;
    case SystemId::ND_dSfdeL:
    case SystemId::ND_dSfdeL_alt: return LogicId::dSfdeL;
    case SystemId::NDp_K3R: return LogicId::K3R;
    case SystemId::NDp_K3L: return LogicId::K3L;
    case SystemId::NDp_K3w: return LogicId::K3w;
    case SystemId::NDp_K3R2: return LogicId::K3R2;
    case SystemId::NDp_K3L2: return LogicId::K3L2;
    case SystemId::NDp_PWK: return LogicId::PWK;
    case SystemId::ND_FDEp: return LogicId::FDE;
  }
  return LogicId::FDE;
}

bool instance_sound(LogicId logic, RuleId r, const Bindings& b) {
  const RuleSchema& s = rule_schema(r);
  std::vector<Formula> gamma;
  std::vector<std::vector<Formula>> branch_hyps;
  for (std::size_t i = 0; i < s.arity(); ++i) {
    if (s.is_branch(i)) {
      branch_hyps.emplace_back();
      for (const auto& h : s.hypotheses[i]) branch_hyps.back().push_back(instantiate(h, b));
    } else {
      gamma.push_back(instantiate(s.premises[i], b));
    }
  }
  if (branch_hyps.empty()) {
    const Formula c = instantiate(s.conclusion, b);
    return entails(logic, gamma, std::span<const Formula>(&c, 1)).holds;
  }
  // "Some branch has all hypotheses designated" is, by distributivity, the
  // conjunction over every choice of one hypothesis per branch of "some
  // chosen hypothesis is designated": one multiple-conclusion entailment
  // per choice.
  std::vector<std::size_t> choice(branch_hyps.size(), 0);
  while (true) {
    std::vector<Formula> delta;
    for (std::size_t k = 0; k < branch_hyps.size(); ++k) delta.push_back(branch_hyps[k][choice[k]]);
    if (!entails(logic, gamma, delta).holds) return false;
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == branch_hyps[k].size()) choice[k++] = 0;
    if (k == choice.size()) return true;
  }
}

}  // namespace infectio
