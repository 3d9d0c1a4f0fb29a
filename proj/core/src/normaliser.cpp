#include <algorithm>

#include "infectio/normaliser.hpp"
#include "reductions.hpp"

namespace infectio {

namespace {

bool has_prefix(const Path& p, const Path& prefix) {
  return p.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

// Subtrees that contracting `r` may copy.
std::vector<Path> duplication_zone(const Proof& p, const Redex& r) {
  std::vector<Path> zone;
  const Proof& e = p.at(r.consumer);
  auto sibling = [&](std::size_t i) {
    Path q = r.consumer;
    q.push_back(i);
    zone.push_back(std::move(q));
  };
  if (r.kind == RedexKind::detour) {
    const Proof& x = e.premise(r.premise);
    for (std::size_t j = 0; j < x.premises().size(); ++j) {
      Path q = r.position;
      q.push_back(j);
      zone.push_back(std::move(q));
    }
    if (e.rule() == RuleId::EFQ) sibling(1 - r.premise);
  } else {
    for (std::size_t i = 0; i < e.premises().size(); ++i) {
      if (i != r.premise) sibling(i);
    }
  }
  return zone;
}

}  // namespace

std::optional<Redex> select_redex(SystemId system, const Proof& p) {
  const auto redexes = find_redexes(system, p);
  if (redexes.empty()) {
    auto foreign = detail::foreign_em(system, p);
    if (foreign.empty()) return std::nullopt;
    return foreign.front();
  }
  std::size_t top = 0;
  for (const auto& r : redexes) top = std::max(top, r.formula.size());
  std::vector<const Redex*> heavy;
  for (const auto& r : redexes) {
    if (r.formula.size() == top) heavy.push_back(&r);
  }
  for (const Redex* r : heavy) {
    const auto zone = duplication_zone(p, *r);
    const bool copies_heavy = std::any_of(heavy.begin(), heavy.end(), [&](const Redex* o) {
      return o != r && std::any_of(zone.begin(), zone.end(),
                                   [&](const Path& z) { return has_prefix(o->consumer, z); });
    });
    if (!copies_heavy) return *r;
  }
  return *heavy.front();
}

Normalisation normalise(SystemId system, const Proof& input) {
  const std::size_t n = input.node_count();
  const std::size_t cap = std::max<std::size_t>(100, 10 * n * n);
  Normalisation out{prune_discharges(input), {}};
  Rank current = rank(system, out.result);
  while (auto r = select_redex(system, out.result)) {
    if (out.trace.size() >= cap) {
      throw NormalisationError("normalisation exceeded " + std::to_string(cap) + " steps");
    }
    Proof next = reduce(system, out.result, *r);
    Rank after = rank(system, next);
    out.trace.push_back({std::move(*r), current, after});
    out.result = std::move(next);
    current = after;
  }
  return out;
}

}  // namespace infectio
