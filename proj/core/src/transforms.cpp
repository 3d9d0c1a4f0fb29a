#include <algorithm>
#include <set>

#include "infectio/normaliser.hpp"
#include "reductions.hpp"

namespace infectio {

namespace {

bool is_em(const Proof& p) { return !p.is_assumption() && p.rule() == RuleId::EM; }

bool is_literal(const Formula& f) { return f.is_var() || (f.is_neg() && f.operand().is_var()); }

const Proof& em_at(const Proof& p, const Redex& r) {
  const Proof& em = p.at(r.position);
  if (!is_em(em)) throw NormalisationError("stale redex: no EM at " + render_path(r.position));
  return em;
}

Proof plug(const Proof& branch, const std::vector<Label>& labels, const Proof& with,
           LabelSupply& supply) {
  std::map<Label, Proof> repl;
  for (const auto& l : labels) repl.emplace(l, with);
  return detail::substitute(branch, repl, supply);
}

Proof em(Proof pos, Label pos_label, Proof neg, Label neg_label) {
  Formula c = pos.conclusion();
  return Proof::rule(RuleId::EM, {std::move(pos), std::move(neg)},
                     {{std::move(pos_label)}, {std::move(neg_label)}}, std::move(c));
}

Proof em(Proof pos, std::vector<Label> pos_labels, Proof neg, std::vector<Label> neg_labels) {
  Formula c = pos.conclusion();
  return Proof::rule(RuleId::EM, {std::move(pos), std::move(neg)},
                     {std::move(pos_labels), std::move(neg_labels)}, std::move(c));
}

void require(SystemId system, RuleId r) {
  if (!system_has(system, r)) {
    throw NormalisationError(std::string(to_string(system)) + " lacks " +
                             std::string(to_string(r)));
  }
}

}  // namespace

namespace detail {

std::optional<Formula> em_formula(const Proof& node) {
  const auto leaves = leaf_formulas(node);
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& l : node.discharges()[i]) {
      auto it = leaves.find(l);
      if (it == leaves.end()) continue;
      if (i == 0) return it->second;
      if (it->second.is_neg()) return it->second.operand();
    }
  }
  return std::nullopt;
}

std::vector<Redex> foreign_em(SystemId, const Proof& p) {
  std::vector<Formula> roots;
  for (auto& a : open_assumptions(p)) roots.push_back(std::move(a.formula));
  roots.push_back(p.conclusion());
  const FormulaSet sub = subformulas(std::span<const Formula>(roots));

  std::vector<Redex> out;
  for_each_postorder(p, [&](const Path& path, const Proof& q) {
    if (!is_em(q)) return;
    const auto a = em_formula(q);
    if (a && sub.contains(*a)) return;
    const bool vacuous = q.discharges()[0].empty() || q.discharges()[1].empty();
    if (!vacuous && a->is_var()) return;
    const Formula f = a ? *a : q.conclusion();
    out.push_back(Redex{.kind = vacuous ? RedexKind::simplification : RedexKind::em_split,
                        .position = path,
                        .consumer = path,
                        .premise = 0,
                        .producer = RuleId::EM,
                        .consumer_rule = RuleId::EM,
                        .formula = f,
                        .degree = f.degree(),
                        .segment = {}});
  });
  return out;
}

Proof em_simplify(SystemId, const Proof& p, const Redex& r) {
  const Proof& node = em_at(p, r);
  for (std::size_t i = 0; i < 2; ++i) {
    if (node.discharges()[i].empty()) return prune_discharges(p.replace(r.position, node.premise(i)));
  }
  throw NormalisationError("EM at " + render_path(r.position) + " has no vacuous branch");
}

Proof em_split(SystemId system, const Proof& p, const Redex& r) {
  const Proof& node = em_at(p, r);
  const auto a = em_formula(node);
  if (!a || a->is_var()) throw NormalisationError("EM at " + render_path(r.position) + " is atomic");
  LabelSupply supply(p);
  const Proof& pi0 = node.premise(0);
  const Proof& pi1 = node.premise(1);
  const auto& l0 = node.discharges()[0];
  const auto& l1 = node.discharges()[1];
  const Formula not_a = ~*a;

  Proof out = node;
  if (a->is_neg()) {
    // EM on ~Y becomes EM on Y with the branches swapped.
    const Formula y = a->operand();
    const Label h = supply.fresh();
    Proof nn = Proof::rule(RuleId::NegNegI, {Proof::assume(y, h)});
    out = em(plug(pi1, l1, nn, supply), {h}, pi0, l0);
  } else if (a->is_conj()) {
    require(system, RuleId::NegAndI1);
    require(system, RuleId::NegAndI2);
    const Formula y = a->left();
    const Formula z = a->right();
    const Label hy = supply.fresh(), hz = supply.fresh(), hnz = supply.fresh(),
                hny = supply.fresh();
    Proof both = Proof::rule(RuleId::AndI, {Proof::assume(y, hy), Proof::assume(z, hz)});
    Proof no_z = Proof::rule(RuleId::NegAndI2, {Proof::assume(~z, hnz)}, {}, not_a);
    Proof no_y = Proof::rule(RuleId::NegAndI1, {Proof::assume(~y, hny)}, {}, not_a);
    Proof inner = em(plug(pi0, l0, both, supply), hz,
                     plug(relabel_binders(pi1, supply), l1, no_z, supply), hnz);
    out = em(inner, hy, plug(pi1, l1, no_y, supply), hny);
  } else {
    require(system, RuleId::OrI1);
    require(system, RuleId::OrI2);
    require(system, RuleId::NegOrIp);
    const Formula y = a->left();
    const Formula z = a->right();
    const Label hy = supply.fresh(), hny = supply.fresh(), hz = supply.fresh(),
                hnz = supply.fresh();
    Proof left = Proof::rule(RuleId::OrI1, {Proof::assume(y, hy)}, {}, *a);
    Proof right = Proof::rule(RuleId::OrI2, {Proof::assume(z, hz)}, {}, *a);
    Proof neither =
        Proof::rule(RuleId::NegOrIp, {Proof::assume(~y, hny), Proof::assume(~z, hnz)});
    Proof inner = em(plug(relabel_binders(pi0, supply), l0, right, supply), hz,
                     plug(pi1, l1, neither, supply), hnz);
    out = em(plug(pi0, l0, left, supply), hy, inner, hny);
  }
  return prune_discharges(p.replace(r.position, out));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// EM-final form

namespace {

// Paths of EM nodes in the chain of EMs ending at the root.
std::set<Path> em_region(const Proof& p) {
  std::set<Path> region;
  auto go = [&](auto& self, const Proof& q, Path& path) -> void {
    if (!is_em(q)) return;
    region.insert(path);
    for (std::size_t i = 0; i < 2; ++i) {
      path.push_back(i);
      self(self, q.premise(i), path);
      path.pop_back();
    }
  };
  Path path;
  go(go, p, path);
  return region;
}

std::optional<Path> lowest_outside(const Proof& p, const std::set<Path>& region) {
  std::optional<Path> best;
  for_each_postorder(p, [&](const Path& path, const Proof& q) {
    if (!is_em(q) || region.contains(path)) return;
    if (!best || path.size() < best->size() || (path.size() == best->size() && path < *best)) {
      best = path;
    }
  });
  return best;
}

}  // namespace

bool is_em_final(const Proof& p) { return !lowest_outside(p, em_region(p)); }

Proof em_finalise(SystemId, const Proof& input) {
  Proof p = prune_discharges(input);
  for (int guard = 0; guard < 100000; ++guard) {
    const auto region = em_region(p);
    const auto q = lowest_outside(p, region);
    if (!q) return p;
    Path root;
    while (region.contains(root)) root.push_back((*q)[root.size()]);
    const Path hole(q->begin() + static_cast<std::ptrdiff_t>(root.size()), q->end());

    LabelSupply supply(p);
    const Proof& context = p.at(root);
    const Proof& node = p.at(*q);
    Proof pos = context.replace(hole, node.premise(0));
    Proof neg = relabel_binders(context.replace(hole, node.premise(1)), supply);
    p = prune_discharges(p.replace(root, em(pos, node.discharges()[0], neg, node.discharges()[1])));
  }
  throw NormalisationError("em_finalise did not terminate");
}

// ---------------------------------------------------------------------------
// EFQ atomisation

std::optional<RuleId> efq_split_rule(SystemId system, const Formula& f) {
  auto first = [system](std::initializer_list<RuleId> rules) -> std::optional<RuleId> {
    for (auto r : rules) {
      if (system_has(system, r)) return r;
    }
    return std::nullopt;
  };
  if (is_literal(f)) return std::nullopt;
  if (f.is_conj()) return first({RuleId::AndI});
  if (f.is_disj()) {
    return first({RuleId::OrI1, RuleId::OrI2, RuleId::OrI1p, RuleId::OrI2p, RuleId::OrI3p});
  }
  const Formula& g = f.operand();
  if (g.is_neg()) return first({RuleId::NegNegI});
  if (g.is_conj()) {
    return first({RuleId::NegAndI1p, RuleId::NegAndI1, RuleId::NegAndI2, RuleId::NegAndI2p,
                  RuleId::NegAndI3p});
  }
  return first({RuleId::NegOrIp});
}

namespace {

class EfqSplitter {
 public:
  EfqSplitter(SystemId system, LabelSupply& supply) : system_(system), supply_(supply) {}

  Proof atomise(const Proof& p) {
    if (p.is_assumption()) return p;
    std::vector<Proof> premises;
    bool changed = false;
    for (const auto& q : p.premises()) {
      premises.push_back(atomise(q));
      changed |= !premises.back().same_node(q);
    }
    if (p.rule() == RuleId::EFQ && !is_literal(p.conclusion())) {
      return split(premises[0], premises[1], p.conclusion());
    }
    if (!changed) return p;
    return Proof::rule(p.rule(), std::move(premises), p.discharges(), p.conclusion());
  }

 private:
  Proof split(const Proof& pos, const Proof& neg, const Formula& goal) {
    auto r = efq_split_rule(system_, goal);
    if (!r) {
      return Proof::rule(RuleId::EFQ,
                         {relabel_binders(pos, supply_), relabel_binders(neg, supply_)}, {}, goal);
    }
    const RuleSchema& s = rule_schema(*r);
    Bindings b;
    match_schema(s.conclusion, goal, b);
    std::vector<Proof> parts;
    for (const auto& prem : s.premises) parts.push_back(split(pos, neg, instantiate(prem, b)));
    return Proof::rule(*r, std::move(parts), {}, goal);
  }

  SystemId system_;
  LabelSupply& supply_;
};

}  // namespace

Proof atomise_efq(SystemId system, const Proof& p) {
  LabelSupply supply(p);
  return prune_discharges(EfqSplitter(system, supply).atomise(p));
}

}  // namespace infectio
