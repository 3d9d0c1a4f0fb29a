#include "infectio/search.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "infectio/semantics.hpp"

namespace infectio {

namespace {

// Semantic pruning is skipped above this many variables (4^6 valuations).
constexpr std::size_t kMaxPrunedVars = 6;
constexpr std::size_t kMemoLimit = 400000;
constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

using Ids = std::vector<int>;
using Bits = ValuationSpace::Bits;

struct Step;
using StepPtr = std::shared_ptr<const Step>;

// Proof tree over interned formulas; leaves name the assumption formula and
// `discharged[i]` lists hypotheses introduced for premise i.
struct Step {
  int formula = -1;
  std::optional<RuleId> rule;
  std::vector<StepPtr> premises;
  std::vector<Ids> discharged;

  // Conversion cache. `open` lists the leaf formulas not discharged inside
  // the subtree; the converted `proof` can be reused whenever no hypothesis
  // in scope matches one of them. `tokens` identify the conversions whose
  // discharge labels occur in `proof`.
  mutable bool summarised = false;
  mutable Ids open;
  mutable std::optional<Proof> proof;
  mutable std::vector<std::size_t> tokens;
};

StepPtr leaf(int f) {
  auto s = std::make_shared<Step>();
  s->formula = f;
  return s;
}

StepPtr node(int f, RuleId r, std::vector<StepPtr> premises, std::vector<Ids> discharged = {}) {
  discharged.resize(premises.size());
  auto s = std::make_shared<Step>();
  s->formula = f;
  s->rule = r;
  s->premises = std::move(premises);
  s->discharged = std::move(discharged);
  return s;
}

struct BudgetExhausted {};

struct Intro {
  RuleId rule;
  Ids premises;
};

struct Elim {
  RuleId rule;
  int conclusion;
};

struct Branching {
  RuleId rule;
  std::vector<Ids> branches;  // hypotheses per branch, in premise order
};

struct Info {
  int neg = -1;
  bool analysed = false;
  std::vector<Intro> intros;
  std::vector<Elim> elims;
  std::vector<Branching> dels;
  Ids subformulas;  // including the formula itself, ordered by `smaller`
  Bits mask;
};

struct Entry {
  StepPtr proof;
  // Searches up to this depth failed; kNever when the failure did not
  // depend on the depth bound.
  std::size_t failed_depth = 0;
  bool failed = false;
};

// A branching elimination on a fact whose every branch adds a new
// hypothesis; `added` drops hypotheses that are assumptions already.
struct Split {
  StepPtr major;
  const Branching* rule;
  std::vector<Ids> added;
};

// Everything known about one set of assumptions.
struct Saturation {
  std::map<int, StepPtr> facts;
  Bits mask;
  std::optional<Ids> universe;  // subformulas of the assumptions
  std::optional<StepPtr> clash;  // an EFQ-ready pair of facts, if any
  std::optional<std::vector<Split>> splits;
  std::optional<Ids> efq_cuts;  // members of `universe` valid together with their negation
  std::unordered_map<int, Entry> memo;  // by goal
};

std::size_t hash_ids(const Ids& ids, std::size_t h) {
  for (int i : ids) h = (h ^ static_cast<std::size_t>(i)) * 0x100000001b3ULL;
  return h;
}

struct IdsHash {
  std::size_t operator()(const Ids& ids) const noexcept { return hash_ids(ids, 0xcbf29ce484222325ULL); }
};

// Orders ids by formula size, then by id.
struct Smaller {
  const std::vector<Formula>* formulas;
  bool operator()(int a, int b) const {
    const std::size_t sa = (*formulas)[a].size(), sb = (*formulas)[b].size();
    return sa != sb ? sa < sb : a < b;
  }
};

template <typename Less = std::less<>>
Ids merge(const Ids& a, const Ids& b, Less less = {}) {
  Ids out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), less);
  return out;
}

}  // namespace

struct Prover::Impl {
  SystemId system;
  LogicId logic;
  bool has_efq;
  bool has_em;
  std::vector<RuleId> intro_rules;
  std::vector<RuleId> elim_rules;
  std::vector<RuleId> del_rules;

  std::vector<std::string> vars;
  std::optional<ValuationSpace> space;
  std::vector<Formula> formulas;
  std::unordered_map<Formula, int> ids;
  std::deque<Info> info;  // stable references while interning
  std::unordered_map<Ids, Saturation, IdsHash> sats;
  std::size_t memo_size = 0;

  SearchBudget budget;
  SearchStats stats;
  // Set when some subgoal below the current one was cut off by the depth
  // bound, so a deeper search might still succeed.
  bool cut = false;

  explicit Impl(SystemId s)
      : system(s), logic(system_logic(s)), has_efq(system_has(s, RuleId::EFQ)),
        has_em(system_has(s, RuleId::EM)) {
    for (RuleId r : system_rules(s)) {
      const RuleSchema& rs = rule_schema(r);
      if (rs.kind == RuleKind::introduction) intro_rules.push_back(r);
      if (rs.kind == RuleKind::elimination) (rs.is_del() ? del_rules : elim_rules).push_back(r);
    }
  }

  void reset(std::vector<std::string> new_vars) {
    vars = std::move(new_vars);
    space.reset();
    if (vars.size() <= kMaxPrunedVars) space.emplace(logic, vars);
    formulas.clear();
    ids.clear();
    info.clear();
    forget();
  }

  void forget() {
    sats.clear();
    memo_size = 0;
    next_label = 1;
  }

  Smaller smaller() const { return {&formulas}; }

  int intern(const Formula& f) {
    if (auto it = ids.find(f); it != ids.end()) return it->second;
    const int id = static_cast<int>(formulas.size());
    formulas.push_back(f);
    ids.emplace(f, id);
    info.emplace_back();
    return id;
  }

  int neg(int f) {
    if (info[f].neg < 0) {
      const int n = intern(~formulas[f]);
      info[f].neg = n;
    }
    return info[f].neg;
  }

  Ids instantiate_all(const std::vector<Formula>& schemas, const Bindings& b) {
    Ids out;
    for (const auto& s : schemas) out.push_back(intern(instantiate(s, b)));
    return out;
  }

  Info& analyse(int f) {
    if (info[f].analysed) return info[f];
    const Formula formula = formulas[f];
    Info fresh;
    fresh.neg = info[f].neg;
    for (RuleId r : intro_rules) {
      Bindings b;
      if (!match_schema(rule_schema(r).conclusion, formula, b)) continue;
      fresh.intros.push_back({r, instantiate_all(rule_schema(r).premises, b)});
    }
    for (RuleId r : elim_rules) {
      Bindings b;
      if (!match_schema(rule_schema(r).premises[0], formula, b)) continue;
      fresh.elims.push_back({r, intern(instantiate(rule_schema(r).conclusion, b))});
    }
    for (RuleId r : del_rules) {
      const RuleSchema& rs = rule_schema(r);
      Bindings b;
      if (!match_schema(rs.premises[0], formula, b)) continue;
      Branching d{r, {}};
      for (auto j : rs.branches()) {
        Ids hyps = instantiate_all(rs.hypotheses[j], b);
        std::sort(hyps.begin(), hyps.end());
        d.branches.push_back(std::move(hyps));
      }
      fresh.dels.push_back(std::move(d));
    }
    for (const auto& g : subformulas(formula)) fresh.subformulas.push_back(intern(g));
    std::sort(fresh.subformulas.begin(), fresh.subformulas.end(), smaller());
    if (space) fresh.mask = space->designated(formula);
    fresh.analysed = true;
    info[f] = std::move(fresh);
    return info[f];
  }

  Saturation& saturate(const Ids& delta) {
    if (auto it = sats.find(delta); it != sats.end()) return it->second;
    Saturation s;
    std::vector<int> work;
    for (int f : delta) {
      s.facts.emplace(f, leaf(f));
      work.push_back(f);
    }
    while (!work.empty()) {
      const int f = work.back();
      work.pop_back();
      const auto& elims = analyse(f).elims;
      for (const auto& e : elims) {
        if (s.facts.contains(e.conclusion)) continue;
        s.facts.emplace(e.conclusion, node(e.conclusion, e.rule, {s.facts.at(f)}));
        work.push_back(e.conclusion);
      }
    }
    if (space) {
      s.mask = space->all();
      for (const auto& [f, _] : s.facts) ValuationSpace::and_into(s.mask, analyse(f).mask);
    }
    return sats.emplace(delta, std::move(s)).first->second;
  }

  bool valid(const Saturation& s, std::span<const int> extra, int goal) {
    if (!space) return true;
    const Bits& g = analyse(goal).mask;
    if (extra.size() > 4) {
      Bits m = s.mask;
      for (int h : extra) ValuationSpace::and_into(m, analyse(h).mask);
      return ValuationSpace::subset(m, g);
    }
    std::array<const Bits*, 4> hyps{};
    for (std::size_t i = 0; i < extra.size(); ++i) hyps[i] = &analyse(extra[i]).mask;
    for (std::size_t w = 0; w < g.size(); ++w) {
      std::uint64_t m = s.mask[w] & ~g[w];
      for (std::size_t i = 0; i < extra.size(); ++i) m &= (*hyps[i])[w];
      if (m) return false;
    }
    return true;
  }

  bool valid(const Saturation& s, std::initializer_list<int> extra, int goal) {
    return valid(s, std::span<const int>(extra.begin(), extra.size()), goal);
  }

  bool valid(const Saturation& s, int goal) {
    if (!space) return true;
    return ValuationSpace::subset(s.mask, analyse(goal).mask);
  }

  void tick() {
    if (stats.nodes == budget.max_nodes) throw BudgetExhausted{};
    ++stats.nodes;
  }

  StepPtr solve(const Ids& delta, int goal, std::size_t depth, bool prune) {
    tick();
    Saturation& sat = saturate(delta);
    if (auto it = sat.facts.find(goal); it != sat.facts.end()) return it->second;
    if (depth == 0) {
      cut = true;
      return nullptr;
    }

    if (auto it = sat.memo.find(goal); it != sat.memo.end()) {
      if (it->second.proof) return it->second.proof;
      if (it->second.failed && it->second.failed_depth >= depth) {
        cut |= it->second.failed_depth != kNever;
        return nullptr;
      }
    }
    if (prune && !valid(sat, goal)) {
      sat.memo[goal] = Entry{nullptr, kNever, true};
      ++memo_size;
      return nullptr;
    }
    const bool outer_cut = cut;
    cut = false;
    StepPtr found = search(delta, sat, goal, depth);
    auto [slot, inserted] = sat.memo.try_emplace(goal);
    memo_size += inserted;
    Entry& e = slot->second;
    if (found) {
      e.proof = found;
    } else {
      e.failed = true;
      e.failed_depth = cut ? std::max(e.failed_depth, depth) : kNever;
    }
    cut |= outer_cut;
    return found;
  }

  // Solves every (hypotheses, goal) subgoal over `delta`.
  std::optional<std::vector<StepPtr>> solve_all(const Ids& delta, const std::vector<Ids>& hyps,
                                                const Ids& goals, std::size_t depth) {
    std::vector<StepPtr> out;
    for (std::size_t i = 0; i < goals.size(); ++i) {
      StepPtr p = solve(hyps[i].empty() ? delta : merge(delta, hyps[i]), goals[i], depth, true);
      if (!p) return std::nullopt;
      out.push_back(std::move(p));
    }
    return out;
  }

  StepPtr search(const Ids& delta, Saturation& sat, int goal, std::size_t depth) {
    // Contradictory facts close any goal at once.
    if (has_efq) {
      if (!sat.clash) {
        sat.clash.emplace();
        for (const auto& [f, step] : sat.facts) {
          auto it = sat.facts.find(neg(f));
          if (it != sat.facts.end()) {
            sat.clash = node(-1, RuleId::EFQ, {step, it->second});
            break;
          }
        }
      }
      if (*sat.clash) return node(goal, RuleId::EFQ, (*sat.clash)->premises);
    }

    const auto& intros = analyse(goal).intros;
    for (const auto& in : intros) {
      if (!std::all_of(in.premises.begin(), in.premises.end(),
                       [&](int p) { return valid(sat, p); })) {
        continue;
      }
      const std::vector<Ids> none(in.premises.size());
      if (auto ps = solve_all(delta, none, in.premises, depth - 1)) {
        return node(goal, in.rule, std::move(*ps));
      }
    }

    for (const Split& sp : splits(delta, sat)) {
      const auto& branches = sp.rule->branches;
      if (!std::all_of(branches.begin(), branches.end(),
                       [&](const Ids& hyps) { return valid(sat, hyps, goal); })) {
        continue;
      }
      const Ids goals(sp.added.size(), goal);
      if (auto ps = solve_all(delta, sp.added, goals, depth - 1)) {
        std::vector<StepPtr> premises = {sp.major};
        std::vector<Ids> discharged = {{}};
        for (std::size_t j = 0; j < ps->size(); ++j) {
          premises.push_back((*ps)[j]);
          discharged.push_back(sp.added[j]);
        }
        return node(goal, sp.rule->rule, std::move(premises), std::move(discharged));
      }
    }

    if (has_efq) {
      for (int x : efq_cuts(delta, sat, goal)) {
        if (auto ps = solve_all(delta, {{}, {}}, {x, neg(x)}, depth - 1)) {
          return node(goal, RuleId::EFQ, std::move(*ps));
        }
      }
    }

    if (has_em) {
      for (int x : local_variables(delta, sat, goal)) {
        const int nx = neg(x);
        if (sat.facts.contains(x) || sat.facts.contains(nx)) continue;
        if (!valid(sat, {x}, goal) || !valid(sat, {nx}, goal)) continue;
        if (auto ps = solve_all(delta, {{x}, {nx}}, {goal, goal}, depth - 1)) {
          return node(goal, RuleId::EM, std::move(*ps), {{x}, {nx}});
        }
      }
    }
    return nullptr;
  }

  const std::vector<Split>& splits(const Ids& delta, Saturation& sat) {
    if (sat.splits) return *sat.splits;
    sat.splits.emplace();
    for (const auto& [major, major_step] : sat.facts) {
      for (const auto& d : analyse(major).dels) {
        // Facts cover every assumption in `delta`, so a branch helps only
        // if it adds a formula that is not yet a fact.
        const bool useful = std::all_of(d.branches.begin(), d.branches.end(), [&](const Ids& hyps) {
          return std::any_of(hyps.begin(), hyps.end(),
                             [&](int h) { return !sat.facts.contains(h); });
        });
        if (!useful) continue;
        Split sp{major_step, &d, {}};
        for (const auto& hyps : d.branches) {
          Ids& fresh = sp.added.emplace_back();
          for (int h : hyps) {
            if (!std::binary_search(delta.begin(), delta.end(), h)) fresh.push_back(h);
          }
        }
        sat.splits->push_back(std::move(sp));
      }
    }
    return *sat.splits;
  }

  bool efq_cut(const Saturation& sat, int x) { return valid(sat, x) && valid(sat, neg(x)); }

  // Subformulas x of the sequent for which both x and ~x are valid
  // subgoals, in universe order.
  Ids efq_cuts(const Ids& delta, Saturation& sat, int goal) {
    const Ids& universe = assumption_universe(delta, sat);
    if (!sat.efq_cuts) {
      sat.efq_cuts.emplace();
      for (int x : universe) {
        if (efq_cut(sat, x)) sat.efq_cuts->push_back(x);
      }
    }
    Ids extra;
    for (int x : analyse(goal).subformulas) {
      if (!std::binary_search(universe.begin(), universe.end(), x, smaller()) && efq_cut(sat, x)) {
        extra.push_back(x);
      }
    }
    return extra.empty() ? *sat.efq_cuts : merge(*sat.efq_cuts, extra, smaller());
  }

  Ids local_variables(const Ids& delta, Saturation& sat, int goal) {
    auto vars_of = [&](const Ids& fs) {
      Ids out;
      for (int x : fs) {
        if (!formulas[x].is_var()) break;
        out.push_back(x);
      }
      return out;
    };
    return merge(vars_of(assumption_universe(delta, sat)), vars_of(analyse(goal).subformulas),
                 smaller());
  }

  // Subformulas of the assumptions, ordered by `smaller` (so variables
  // come first).
  const Ids& assumption_universe(const Ids& delta, Saturation& sat) {
    if (!sat.universe) {
      sat.universe.emplace();
      for (int f : delta) *sat.universe = merge(*sat.universe, analyse(f).subformulas, smaller());
    }
    return *sat.universe;
  }

  struct Binder {
    int formula;
    Label label;
    bool used = false;
  };

  // Conversion state of one call. Discharge labels come from
  // `next_label`, which keeps counting across calls so that cached
  // subproofs never clash with new binders; `emitted` holds the tokens
  // already placed in the proof under construction.
  struct Conversion {
    std::vector<Binder> scope;  // innermost last
    std::vector<std::size_t> emitted;
  };

  std::size_t next_label = 1;
  std::size_t next_token = 1;

  static void summarise(const Step& s) {
    if (s.summarised) return;
    s.summarised = true;
    if (!s.rule) {
      s.open = {s.formula};
      return;
    }
    for (std::size_t i = 0; i < s.premises.size(); ++i) {
      const Step& p = *s.premises[i];
      summarise(p);
      Ids left;
      std::set_difference(p.open.begin(), p.open.end(), s.discharged[i].begin(),
                          s.discharged[i].end(), std::back_inserter(left));
      s.open = merge(s.open, left);
    }
  }

  Proof to_proof(const StepPtr& s, Conversion& c, std::vector<std::size_t>& tokens) {
    summarise(*s);
    const bool shareable = std::none_of(c.scope.begin(), c.scope.end(), [&](const Binder& b) {
      return std::binary_search(s->open.begin(), s->open.end(), b.formula);
    });
    if (shareable && s->proof &&
        std::none_of(s->tokens.begin(), s->tokens.end(), [&](std::size_t t) {
          return std::find(c.emitted.begin(), c.emitted.end(), t) != c.emitted.end();
        })) {
      c.emitted.insert(c.emitted.end(), s->tokens.begin(), s->tokens.end());
      tokens.insert(tokens.end(), s->tokens.begin(), s->tokens.end());
      return *s->proof;
    }
    std::vector<std::size_t> inner;
    bool binds = false;
    Proof out = convert(s, c, inner, binds);
    if (binds) {
      inner.push_back(next_token++);
      c.emitted.push_back(inner.back());
    }
    if (shareable) {
      s->proof = out;
      s->tokens = inner;
    }
    tokens.insert(tokens.end(), inner.begin(), inner.end());
    return out;
  }

  Proof convert(const StepPtr& s, Conversion& c, std::vector<std::size_t>& tokens, bool& binds) {
    const Formula& f = formulas[s->formula];
    if (!s->rule) {
      for (auto it = c.scope.rbegin(); it != c.scope.rend(); ++it) {
        if (it->formula == s->formula) {
          it->used = true;
          return Proof::assume(f, it->label);
        }
      }
      return Proof::assume(f);
    }
    std::vector<Proof> premises;
    std::vector<std::vector<Label>> discharges(s->premises.size());
    premises.reserve(s->premises.size());
    for (std::size_t i = 0; i < s->premises.size(); ++i) {
      const std::size_t mark = c.scope.size();
      for (int h : s->discharged[i]) c.scope.push_back({h, "h" + std::to_string(next_label++)});
      premises.push_back(to_proof(s->premises[i], c, tokens));
      for (std::size_t k = mark; k < c.scope.size(); ++k) {
        if (c.scope[k].used) discharges[i].push_back(c.scope[k].label);
      }
      binds |= !discharges[i].empty();
      c.scope.resize(mark);
    }
    return Proof::rule(*s->rule, std::move(premises), std::move(discharges), f);
  }
};

Prover::Prover(SystemId system) : impl_(std::make_unique<Impl>(system)) {}
Prover::~Prover() = default;
Prover::Prover(Prover&&) noexcept = default;
Prover& Prover::operator=(Prover&&) noexcept = default;

const SearchStats& Prover::last_stats() const { return impl_->stats; }
SystemId Prover::system() const { return impl_->system; }
void Prover::clear_cache() { impl_->forget(); }

std::optional<Proof> Prover::prove(std::span<const Formula> gamma, const Formula& goal,
                                   SearchBudget budget) {
  if (budget.max_depth == 0 || budget.max_nodes == 0) {
    throw std::invalid_argument("search budget must be at least 1");
  }
  Impl& m = *impl_;
  // Interned formulas only mention known variables.
  std::set<std::string> needed;
  auto note = [&](const Formula& f) {
    if (m.ids.contains(f)) return;
    const auto vs = variables(f);
    needed.insert(vs.begin(), vs.end());
  };
  for (const auto& f : gamma) note(f);
  note(goal);
  if (!std::includes(m.vars.begin(), m.vars.end(), needed.begin(), needed.end())) {
    needed.insert(m.vars.begin(), m.vars.end());
    m.reset(std::vector<std::string>(needed.begin(), needed.end()));
  } else if (m.memo_size + m.sats.size() > kMemoLimit) {
    m.forget();
  }

  m.budget = budget;
  m.stats = {};
  Ids delta;
  for (const auto& f : gamma) delta.push_back(m.intern(f));
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  const int g = m.intern(goal);

  try {
    for (std::size_t d = 1; d <= budget.max_depth; ++d) {
      m.stats.depth_reached = d;
      m.cut = false;
      if (StepPtr s = m.solve(delta, g, d, false)) {
        Impl::Conversion c;
        std::vector<std::size_t> tokens;
        return m.to_proof(s, c, tokens);
      }
      if (!m.cut) break;
    }
  } catch (const BudgetExhausted&) {
    m.stats.exhausted = true;
  }
  return std::nullopt;
}

std::optional<Proof> prove(SystemId system, std::span<const Formula> gamma, const Formula& goal,
                           SearchBudget budget) {
  return Prover(system).prove(gamma, goal, budget);
}

}  // namespace infectio
