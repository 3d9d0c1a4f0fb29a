#pragma once

#include <map>

#include "infectio/normaliser.hpp"

namespace infectio::detail {

/// Replaces leaves labelled by a key of `repl` with a relabelled copy of
/// the mapped proof.
Proof substitute(const Proof& p, const std::map<Label, Proof>& repl, LabelSupply& supply);

/// Formula of each labelled leaf in `p`.
std::map<Label, Formula> leaf_formulas(const Proof& p);

/// Metavariable bindings of a rule-application node.
Bindings node_bindings(const Proof& node);

/// EM formula of an EM node, when some branch discharges a leaf.
std::optional<Formula> em_formula(const Proof& em);

Proof em_simplify(SystemId system, const Proof& p, const Redex& r);
Proof em_split(SystemId system, const Proof& p, const Redex& r);

/// EM nodes whose formula is not a subformula of the end-sequent.
std::vector<Redex> foreign_em(SystemId system, const Proof& p);

}  // namespace infectio::detail
