#include <algorithm>

#include "infectio/normaliser.hpp"

namespace infectio {

std::string_view to_string(RedexKind k) {
  switch (k) {
    case RedexKind::detour: return "detour";
    case RedexKind::permutation: return "permutation";
    case RedexKind::simplification: return "simplification";
    case RedexKind::em_split: return "em-split";
  }
  return "unknown";
}

std::string render_rank(const Rank& r) {
  return "<" + std::to_string(r.d) + "," + std::to_string(r.l) + ">";
}

namespace {

bool is_del_node(const Proof& p) { return !p.is_assumption() && rule_schema(p.rule()).is_del(); }

// Upward threads from the del-rule conclusion at `path`, each listed top
// (C1) to bottom.
void threads(const Proof& node, Path& path, std::vector<std::vector<Path>>& out) {
  if (!is_del_node(node)) {
    out.push_back({path});
    return;
  }
  for (auto j : rule_schema(node.rule()).branches()) {
    path.push_back(j);
    const std::size_t first = out.size();
    threads(node.premise(j), path, out);
    path.pop_back();
    for (std::size_t t = first; t < out.size(); ++t) out[t].push_back(path);
  }
}

std::size_t measure(const Formula& f, DegreeMeasure m) {
  return m == DegreeMeasure::connectives ? f.degree() : f.size();
}

}  // namespace

std::vector<Redex> find_redexes(SystemId, const Proof& p) {
  std::vector<Redex> out;
  for_each_postorder(p, [&](const Path& path, const Proof& e) {
    if (e.is_assumption()) return;
    const RuleSchema& s = rule_schema(e.rule());
    for (std::size_t k = 0; k < e.premises().size(); ++k) {
      if (!s.is_major(k)) continue;
      const Proof& x = e.premise(k);
      if (x.is_assumption()) continue;
      Path at = path;
      at.push_back(k);
      const RuleKind xk = rule_schema(x.rule()).kind;
      Redex r{.kind = RedexKind::detour,
              .position = at,
              .consumer = path,
              .premise = k,
              .producer = x.rule(),
              .consumer_rule = e.rule(),
              .formula = x.conclusion(),
              .degree = x.conclusion().degree(),
              .segment = {}};
      if (xk == RuleKind::introduction || xk == RuleKind::efq) {
        out.push_back(std::move(r));
      } else if (is_del_node(x)) {
        std::vector<std::vector<Path>> ts;
        Path cur = at;
        threads(x, cur, ts);
        for (auto& t : ts) {
          Redex seg = r;
          seg.kind = RedexKind::permutation;
          seg.segment = std::move(t);
          out.push_back(std::move(seg));
        }
      }
    }
  });
  return out;
}

std::vector<Segment> find_segments(SystemId, const Proof& p) {
  std::vector<Segment> out;
  // Visit each del-rule conclusion that is not itself a minor premise of a
  // del-rule; its threads are the segments ending there.
  auto visit = [&](auto& self, const Proof& node, Path& path, bool minor_of_del,
                   bool major) -> void {
    if (is_del_node(node) && !minor_of_del) {
      std::vector<std::vector<Path>> ts;
      threads(node, path, ts);
      for (auto& t : ts) {
        out.push_back({std::move(t), node.conclusion(), node.conclusion().degree(), major});
      }
    }
    if (node.is_assumption()) return;
    const RuleSchema& s = rule_schema(node.rule());
    for (std::size_t i = 0; i < node.premises().size(); ++i) {
      path.push_back(i);
      self(self, node.premise(i), path, s.is_del() && s.is_branch(i), s.is_major(i));
      path.pop_back();
    }
  };
  Path path;
  visit(visit, p, path, false, false);
  return out;
}

Rank rank_with(SystemId system, const Proof& p, DegreeMeasure m, bool count_top_only) {
  const auto redexes = find_redexes(system, p);
  Rank r;
  for (const auto& x : redexes) r.d = std::max(r.d, measure(x.formula, m));
  for (const auto& x : redexes) {
    if (count_top_only && measure(x.formula, m) != r.d) continue;
    r.l += x.kind == RedexKind::permutation ? x.segment.size() : 1;
  }
  return r;
}

Rank rank(SystemId system, const Proof& p) {
  return rank_with(system, p, DegreeMeasure::connectives, false);
}

bool is_normal(SystemId system, const Proof& p) { return find_redexes(system, p).empty(); }

NspReport check_nsp(SystemId, const Proof& p) {
  std::vector<Formula> roots;
  for (auto& a : open_assumptions(p)) roots.push_back(std::move(a.formula));
  roots.push_back(p.conclusion());
  const FormulaSet allowed = negation_closure(std::span<const Formula>(roots));
  NspReport out;
  for_each_postorder(p, [&](const Path& path, const Proof& q) {
    if (!allowed.contains(q.conclusion())) out.violations.push_back(path);
  });
  out.holds = out.violations.empty();
  return out;
}

}  // namespace infectio
