#include "proof_gen.hpp"

#include <algorithm>

#include "infectio/normaliser.hpp"

namespace infectio::testing {

namespace {

void fill_unbound(const Formula& schema, Bindings& b, ProofGenerator& gen) {
  for (const auto& v : variables(schema)) {
    if (!b.contains(v)) b.emplace(v, gen.random_formula(1));
  }
}

}  // namespace

ProofGenerator::ProofGenerator(SystemId system, std::uint64_t seed, GenOptions options)
    : system_(system), rng_(seed), options_(std::move(options)) {}

bool ProofGenerator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

std::size_t ProofGenerator::pick(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

Label ProofGenerator::fresh() { return "h" + std::to_string(next_label_++); }

Formula ProofGenerator::random_formula(int depth) {
  if (depth <= 0 || chance(0.35)) return Formula::var(options_.variables[pick(options_.variables.size())]);
  switch (pick(3)) {
    case 0: return ~random_formula(depth - 1);
    case 1: return random_formula(depth - 1) & random_formula(depth - 1);
    default: return random_formula(depth - 1) | random_formula(depth - 1);
  }
}

Proof ProofGenerator::leaf(const Formula& goal, const std::vector<Hyp>& hyps) {
  for (auto it = hyps.rbegin(); it != hyps.rend(); ++it) {
    if (it->formula == goal) return Proof::assume(goal, it->label);
  }
  return Proof::assume(goal);
}

std::optional<Proof> ProofGenerator::try_intro(const Formula& goal, int depth,
                                               std::vector<Hyp>& hyps) {
  std::vector<RuleId> options;
  for (RuleId r : system_rules(system_)) {
    Bindings b;
    if (rule_schema(r).kind == RuleKind::introduction &&
        match_schema(rule_schema(r).conclusion, goal, b)) {
      options.push_back(r);
    }
  }
  if (options.empty()) return std::nullopt;
  const RuleSchema& s = rule_schema(options[pick(options.size())]);
  Bindings b;
  match_schema(s.conclusion, goal, b);
  std::vector<Proof> premises;
  for (const auto& p : s.premises) premises.push_back(prove(instantiate(p, b), depth - 1, hyps));
  return Proof::rule(s.id, std::move(premises), {}, goal);
}

Proof ProofGenerator::major(const Formula& f, int depth, std::vector<Hyp>& hyps) {
  if (depth > 0 && chance(options_.detour_rate)) {
    if (chance(0.7)) {
      if (auto p = try_intro(f, depth, hyps)) return *p;
    }
    if (auto p = try_elim(f, depth, hyps)) return *p;
  }
  return prove(f, depth, hyps);
}

std::optional<Proof> ProofGenerator::try_elim(const Formula& goal, int depth,
                                              std::vector<Hyp>& hyps) {
  std::vector<RuleId> options;
  for (RuleId r : system_rules(system_)) {
    const RuleSchema& s = rule_schema(r);
    Bindings b;
    if (s.kind == RuleKind::introduction) continue;
    if (s.kind == RuleKind::elimination && !s.is_del() && !match_schema(s.conclusion, goal, b)) {
      continue;
    }
    options.push_back(r);
  }
  if (options.empty()) return std::nullopt;
  const RuleSchema& s = rule_schema(options[pick(options.size())]);
  Bindings b;
  if (s.kind == RuleKind::efq) {
    b.emplace("A", random_formula(1));
    b.emplace("B", goal);
    Proof pos = major(instantiate(s.premises[0], b), depth - 1, hyps);
    Proof neg = major(instantiate(s.premises[1], b), depth - 1, hyps);
    return Proof::rule(s.id, {std::move(pos), std::move(neg)}, {}, goal);
  }
  b.emplace("C", goal);
  if (s.kind == RuleKind::em) {
    b.emplace("A", chance(0.7) ? Formula::var(options_.variables[pick(options_.variables.size())])
                               : random_formula(1));
  } else {
    match_schema(s.conclusion, goal, b);
    fill_unbound(s.premises[0], b, *this);
  }
  std::vector<Proof> premises;
  std::vector<std::vector<Label>> discharges(s.arity());
  for (std::size_t i = 0; i < s.arity(); ++i) {
    if (s.is_major(i)) {
      premises.push_back(major(instantiate(s.premises[i], b), depth - 1, hyps));
      continue;
    }
    const std::size_t mark = hyps.size();
    for (const auto& h : s.hypotheses[i]) {
      hyps.push_back({instantiate(h, b), fresh()});
      discharges[i].push_back(hyps.back().label);
    }
    premises.push_back(prove(goal, depth - 1, hyps));
    hyps.erase(hyps.begin() + static_cast<std::ptrdiff_t>(mark), hyps.end());
  }
  return Proof::rule(s.id, std::move(premises), std::move(discharges), goal);
}

Proof ProofGenerator::prove(const Formula& goal, int depth, std::vector<Hyp>& hyps) {
  const bool have_hyp = std::any_of(hyps.begin(), hyps.end(),
                                    [&](const Hyp& h) { return h.formula == goal; });
  if (depth <= 0 || chance(have_hyp ? 0.6 : 0.25)) return leaf(goal, hyps);
  if (chance(0.45)) {
    if (auto p = try_intro(goal, depth, hyps)) return *p;
  }
  if (auto p = try_elim(goal, depth, hyps)) return *p;
  return leaf(goal, hyps);
}

Proof ProofGenerator::next() {
  while (true) {
    std::vector<Hyp> hyps;
    const Formula goal = random_formula(2);
    const int depth = 1 + static_cast<int>(pick(static_cast<std::size_t>(options_.max_depth)));
    Proof p = prune_discharges(prove(goal, depth, hyps));
    if (p.node_count() <= options_.max_nodes) return p;
  }
}

Proof ProofGenerator::next_with_redex() {
  while (true) {
    Proof p = next();
    if (!find_redexes(system_, p).empty()) return p;
  }
}

}  // namespace infectio::testing
