#include <algorithm>
#include <map>

#include "infectio/normaliser.hpp"
#include "reductions.hpp"

namespace infectio {

namespace detail {

Proof substitute(const Proof& p, const std::map<Label, Proof>& repl, LabelSupply& supply) {
  if (p.is_assumption()) {
    auto it = repl.find(p.label());
    if (it == repl.end()) return p;
    return relabel_binders(it->second, supply);
  }
  std::vector<Proof> premises;
  bool changed = false;
  for (const auto& q : p.premises()) {
    premises.push_back(substitute(q, repl, supply));
    changed |= !premises.back().same_node(q);
  }
  if (!changed) return p;
  return Proof::rule(p.rule(), std::move(premises), p.discharges(), p.conclusion());
}

std::map<Label, Formula> leaf_formulas(const Proof& p) {
  std::map<Label, Formula> out;
  for_each_postorder(p, [&](const Path&, const Proof& q) {
    if (q.is_assumption() && !q.label().empty()) out.emplace(q.label(), q.conclusion());
  });
  return out;
}

Bindings node_bindings(const Proof& node) {
  const RuleSchema& s = rule_schema(node.rule());
  Bindings b;
  for (std::size_t i = 0; i < s.arity(); ++i) {
    match_schema(s.premises[i], node.premise(i).conclusion(), b);
  }
  match_schema(s.conclusion, node.conclusion(), b);
  // Metavariables fixed only by discharged assumptions (EM's A).
  const auto leaves = leaf_formulas(node);
  for (std::size_t i = 0; i < s.arity(); ++i) {
    for (const auto& l : node.discharges()[i]) {
      auto it = leaves.find(l);
      if (it == leaves.end()) continue;
      for (const auto& h : s.hypotheses[i]) {
        Bindings trial = b;
        if (match_schema(h, it->second, trial)) {
          b = std::move(trial);
          break;
        }
      }
    }
  }
  return b;
}

}  // namespace detail

namespace {

using detail::substitute;

using Facts = std::vector<std::pair<Formula, Proof>>;

const Proof* find_fact(const Facts& facts, const Formula& f) {
  for (const auto& [g, q] : facts) {
    if (g == f) return &q;
  }
  return nullptr;
}

void check_fresh(const Proof& p, const Redex& r) {
  const Proof* consumer = nullptr;
  try {
    consumer = &p.at(r.consumer);
  } catch (const std::out_of_range&) {
    throw NormalisationError("stale redex: no node at " + render_path(r.consumer));
  }
  if (consumer->is_assumption() || consumer->rule() != r.consumer_rule ||
      r.premise >= consumer->premises().size()) {
    throw NormalisationError("stale redex at " + render_path(r.consumer));
  }
  const Proof& x = consumer->premise(r.premise);
  if (x.is_assumption() || x.rule() != r.producer || x.conclusion() != r.formula) {
    throw NormalisationError("stale redex at " + render_path(r.position));
  }
}

class EfqCloser {
 public:
  EfqCloser(SystemId system, const Facts& facts, const Formula& goal, LabelSupply& supply)
      : system_(system), facts_(facts), goal_(goal), supply_(supply) {}

  // Derives the goal from `source` and the facts by eliminating `source`
  // until a formula complementary to a fact appears.
  std::optional<Proof> close(const Proof& source, int depth) {
    const Formula& y = source.conclusion();
    if (const Proof* f = find_fact(facts_, ~y)) return efq(source, copy(*f));
    if (y.is_neg()) {
      if (const Proof* f = find_fact(facts_, y.operand())) return efq(copy(*f), source);
    }
    if (depth == 0) return std::nullopt;
    for (RuleId r : system_rules(system_)) {
      const RuleSchema& s = rule_schema(r);
      if (s.kind != RuleKind::elimination || s.is_del()) continue;
      Bindings b;
      if (!match_schema(s.premises[0], y, b)) continue;
      if (auto done = close(Proof::rule(r, {source}, {}, instantiate(s.conclusion, b)), depth - 1)) {
        return done;
      }
    }
    for (RuleId r : system_rules(system_)) {
      const RuleSchema& s = rule_schema(r);
      if (s.kind != RuleKind::elimination || !s.is_del()) continue;
      Bindings b;
      if (!match_schema(s.premises[0], y, b)) continue;
      b.insert_or_assign("C", goal_);
      std::vector<Proof> premises = {source};
      std::vector<std::vector<Label>> discharges(s.arity());
      bool ok = true;
      for (auto j : s.branches()) {
        std::optional<Proof> branch;
        for (const auto& h : s.hypotheses[j]) {
          const Label l = supply_.fresh();
          branch = close(Proof::assume(instantiate(h, b), l), depth - 1);
          if (branch) {
            discharges[j].push_back(l);
            break;
          }
        }
        if (!branch) {
          ok = false;
          break;
        }
        premises.push_back(*branch);
      }
      if (ok) return Proof::rule(r, std::move(premises), std::move(discharges), goal_);
    }
    return std::nullopt;
  }

  Proof efq(Proof positive, Proof negative) const {
    return Proof::rule(RuleId::EFQ, {std::move(positive), std::move(negative)}, {}, goal_);
  }

  Proof copy(const Proof& p) { return relabel_binders(p, supply_); }

 private:
  SystemId system_;
  const Facts& facts_;
  Formula goal_;
  LabelSupply& supply_;
};

Facts intro_facts(const Proof& intro) {
  Facts out;
  for (const auto& q : intro.premises()) out.emplace_back(q.conclusion(), q);
  return out;
}

// EFQ whose premise k is an introduction conclusion X.
Proof efq_detour(SystemId system, const Proof& e, std::size_t k, LabelSupply& supply) {
  const Proof& x = e.premise(k);
  const Proof& other = e.premise(1 - k);
  Facts pool = intro_facts(x);
  const Facts facts = pool;
  pool.emplace_back(other.conclusion(), other);
  if (!other.is_assumption() && rule_schema(other.rule()).kind == RuleKind::introduction) {
    for (auto& f : intro_facts(other)) pool.push_back(std::move(f));
  }

  const Proof* pos = nullptr;
  const Proof* neg = nullptr;
  for (const auto& [y, q] : pool) {
    if (y == x.conclusion() || ~y == x.conclusion()) continue;
    if (const Proof* n = find_fact(pool, ~y)) {
      if (!pos || y.size() < pos->conclusion().size()) {
        pos = &q;
        neg = n;
      }
    }
  }
  EfqCloser closer(system, facts, e.conclusion(), supply);
  if (pos) return closer.efq(closer.copy(*pos), closer.copy(*neg));
  if (auto done = closer.close(other, 3)) return *done;
  throw NormalisationError("no contractum for EFQ detour on " + render_formula(x.conclusion()));
}

}  // namespace

Proof detour_reduce(SystemId system, const Proof& p, const Redex& r) {
  if (r.kind != RedexKind::detour) throw NormalisationError("not a detour redex");
  check_fresh(p, r);
  LabelSupply supply(p);
  const Proof& e = p.at(r.consumer);
  const Proof& x = e.premise(r.premise);
  const RuleSchema& es = rule_schema(e.rule());

  std::optional<Proof> contractum;
  if (x.rule() == RuleId::EFQ) {
    contractum = Proof::rule(RuleId::EFQ, x.premises(), {}, e.conclusion());
  } else if (es.kind == RuleKind::efq) {
    contractum = efq_detour(system, e, r.premise, supply);
  } else if (!es.is_del()) {
    const Facts facts = intro_facts(x);
    if (const Proof* f = find_fact(facts, e.conclusion())) contractum = *f;
  } else {
    const Facts facts = intro_facts(x);
    const Bindings b = detail::node_bindings(e);
    for (auto j : es.branches()) {
      bool covered = true;
      for (const auto& h : es.hypotheses[j]) covered &= find_fact(facts, instantiate(h, b)) != nullptr;
      if (!covered) continue;
      const auto leaves = detail::leaf_formulas(e.premise(j));
      std::map<Label, Proof> repl;
      for (const auto& l : e.discharges()[j]) {
        auto it = leaves.find(l);
        if (it != leaves.end()) repl.emplace(l, *find_fact(facts, it->second));
      }
      contractum = substitute(e.premise(j), repl, supply);
      break;
    }
  }
  if (!contractum) {
    throw NormalisationError("no contractum for " + std::string(to_string(x.rule())) + " into " +
                             std::string(to_string(e.rule())));
  }
  return prune_discharges(p.replace(r.consumer, *contractum));
}

Proof permute_reduce(SystemId, const Proof& p, const Redex& r) {
  if (r.kind != RedexKind::permutation) throw NormalisationError("not a permutation redex");
  check_fresh(p, r);
  LabelSupply supply(p);
  const Proof& e = p.at(r.consumer);
  const Proof& d = e.premise(r.premise);
  const RuleSchema& ds = rule_schema(d.rule());

  std::vector<Proof> premises = d.premises();
  bool first = true;
  for (auto j : ds.branches()) {
    std::vector<Proof> ep = e.premises();
    ep[r.premise] = d.premise(j);
    Proof moved = Proof::rule(e.rule(), std::move(ep), e.discharges(), e.conclusion());
    premises[j] = first ? moved : relabel_binders(moved, supply);
    first = false;
  }
  Proof pushed = Proof::rule(d.rule(), std::move(premises), d.discharges(), e.conclusion());
  return prune_discharges(p.replace(r.consumer, pushed));
}

Proof reduce(SystemId system, const Proof& p, const Redex& r) {
  switch (r.kind) {
    case RedexKind::detour: return detour_reduce(system, p, r);
    case RedexKind::permutation: return permute_reduce(system, p, r);
    case RedexKind::simplification: return detail::em_simplify(system, p, r);
    case RedexKind::em_split: return detail::em_split(system, p, r);
  }
  throw NormalisationError("unknown redex kind");
}

}  // namespace infectio
