#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infectio/formula.hpp"
#include "infectio/semantics.hpp"

namespace infectio {

enum class RuleId : std::uint8_t {
  // core
  AndI, AndE1, AndE2, OrI1, OrI2, OrE, NegNegI, NegNegE,
  // primed rules of the S_fde family
  OrI1p, OrI2p, OrI3p, OrEp, NegAndE_p, NegOrIp, NegOrE1p, NegOrE2p,
  NegAndI1p, NegAndI2p, NegAndI3p,
  // FDE-style auxiliaries
  NegAndI1, NegAndI2, NegAndEp, NegOrI,
  // dS_fde family
  AndI2, AndI3, NegOrI2, NegOrI3, AndE_bi, NegOrE_bi,
  // directional rules
  OrER, OrEL, NegAndER, NegAndEL, AndER, AndEL, NegOrER, NegOrEL,
  AndERp, AndELp, NegOrERp, NegOrELp,
  // three-valued extensions
  EFQ, EM,
};

inline constexpr std::size_t kRuleCount = static_cast<std::size_t>(RuleId::EM) + 1;

std::span<const RuleId> all_rules();
std::string_view to_string(RuleId r);
std::optional<RuleId> parse_rule(std::string_view name);

enum class RuleKind : std::uint8_t {
  introduction,
  elimination,  // premise 0 is the major premise
  efq,          // both premises are treated as major
  em,           // no major premise; both premises are minor branches
};

/// Schema formulas use the variables A, B, C as metavariables.
struct RuleSchema {
  RuleId id;
  RuleKind kind;
  std::vector<Formula> premises;
  /// Dischargeable assumption schemas per premise (empty for premises that
  /// are not branches).
  std::vector<std::vector<Formula>> hypotheses;
  Formula conclusion;

  std::size_t arity() const { return premises.size(); }
  bool is_branch(std::size_t i) const { return !hypotheses[i].empty(); }
  /// A del-rule: its conclusion equals the conclusion of each minor branch.
  bool is_del() const;
  bool is_major(std::size_t i) const;
  /// Indices of branch premises.
  std::vector<std::size_t> branches() const;
};

const RuleSchema& rule_schema(RuleId r);

using Bindings = std::map<std::string, Formula>;

/// First-order matching of `schema` (metavariables only) against `f`,
/// extending `b`. Returns false and leaves `b` partially extended on
/// mismatch.
bool match_schema(const Formula& schema, const Formula& f, Bindings& b);
/// Applies `b`; throws std::out_of_range if a metavariable is unbound.
Formula instantiate(const Formula& schema, const Bindings& b);

/// Conclusion fixed by the premise conclusions alone, if the rule determines
/// one (OrI1 does not fix B, EFQ does not fix its conclusion, ...).
std::optional<Formula> infer_conclusion(RuleId r, std::span<const Formula> premise_conclusions);

enum class SystemId : std::uint8_t {
  NDp_Sfde,
  NDp_dSfde,
  NDp_SfdeR,
  NDp_SfdeL,
  ND_dSfdeR,
  ND_dSfdeR_alt,
  ND_dSfdeL,
  ND_dSfdeL_alt,
  NDp_K3R,
  NDp_K3L,
  NDp_K3w,
  NDp_K3R2,
  NDp_K3L2,
  NDp_PWK,
  ND_FDEp,
};

std::span<const SystemId> all_systems();
std::string_view to_string(SystemId s);
std::optional<SystemId> parse_system(std::string_view name);

/// Rules of `s`, in RuleId order.
const std::vector<RuleId>& system_rules(SystemId s);
bool system_has(SystemId s, RuleId r);
LogicId system_logic(SystemId s);

/// Semantic local soundness of one rule instance: every valuation of
/// `logic` designating the non-branch premises designates, for some branch,
/// all of its hypotheses (or, for rules without branches, the conclusion).
/// Branch conclusions are irrelevant since each branch concludes C.
bool instance_sound(LogicId logic, RuleId r, const Bindings& b);

}  // namespace infectio
