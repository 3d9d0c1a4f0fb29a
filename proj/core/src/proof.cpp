#include "infectio/proof.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace infectio {

std::string render_path(const Path& p) {
  std::string out = "/";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '/';
    out += std::to_string(p[i]);
  }
  return out;
}

Proof Proof::assume(Formula f, Label label) {
  auto n = std::make_shared<Node>(std::move(f));
  n->label = std::move(label);
  return Proof(std::move(n));
}

Proof Proof::rule(RuleId r, std::vector<Proof> premises, std::vector<std::vector<Label>> discharges,
                  Formula conclusion) {
  if (discharges.size() > premises.size()) {
    throw std::invalid_argument("more discharge lists than premises for " +
                                std::string(to_string(r)));
  }
  discharges.resize(premises.size());
  auto n = std::make_shared<Node>(std::move(conclusion));
  n->is_assumption = false;
  n->rule = r;
  for (const auto& q : premises) {
    n->nodes += q.node_count();
    n->height = std::max(n->height, q.height() + 1);
  }
  n->premises = std::move(premises);
  n->discharges = std::move(discharges);
  return Proof(std::move(n));
}

Proof Proof::rule(RuleId r, std::vector<Proof> premises,
                  std::vector<std::vector<Label>> discharges) {
  std::vector<Formula> concl;
  for (const auto& q : premises) concl.push_back(q.conclusion());
  auto c = infer_conclusion(r, concl);
  if (!c) {
    throw std::invalid_argument("conclusion of " + std::string(to_string(r)) +
                                " is not determined by its premises");
  }
  return rule(r, std::move(premises), std::move(discharges), std::move(*c));
}

const Proof& Proof::at(const Path& path) const {
  const Proof* cur = this;
  for (auto i : path) {
    if (i >= cur->premises().size()) throw std::out_of_range("path " + render_path(path));
    cur = &cur->premise(i);
  }
  return *cur;
}

Proof Proof::replace(const Path& path, Proof replacement) const {
  auto go = [&](auto& self, const Proof& cur, std::size_t depth) -> Proof {
    if (depth == path.size()) return replacement;
    const std::size_t i = path[depth];
    if (i >= cur.premises().size()) throw std::out_of_range("path " + render_path(path));
    auto premises = cur.premises();
    premises[i] = self(self, cur.premise(i), depth + 1);
    return rule(cur.rule(), std::move(premises), cur.discharges(), cur.conclusion());
  };
  return go(go, *this, 0);
}

bool operator==(const Proof& a, const Proof& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_assumption() != b.is_assumption() || a.conclusion() != b.conclusion()) return false;
  if (a.is_assumption()) return a.label() == b.label();
  return a.rule() == b.rule() && a.discharges() == b.discharges() && a.premises() == b.premises();
}

namespace {

void collect_open(const Proof& p, std::vector<OpenAssumption>& out) {
  if (p.is_assumption()) {
    out.push_back({p.label(), p.conclusion()});
    return;
  }
  for (std::size_t i = 0; i < p.premises().size(); ++i) {
    const auto& closed = p.discharges()[i];
    if (closed.empty()) {
      collect_open(p.premise(i), out);
      continue;
    }
    std::vector<OpenAssumption> sub;
    collect_open(p.premise(i), sub);
    for (auto& a : sub) {
      if (a.label.empty() || std::find(closed.begin(), closed.end(), a.label) == closed.end()) {
        out.push_back(std::move(a));
      }
    }
  }
}

}  // namespace

std::vector<OpenAssumption> open_assumptions(const Proof& p) {
  std::vector<OpenAssumption> out;
  collect_open(p, out);
  return out;
}

std::vector<Formula> undischarged(const Proof& p) {
  std::vector<Formula> out;
  for (auto& a : open_assumptions(p)) out.push_back(std::move(a.formula));
  std::sort(out.begin(), out.end());
  return out;
}

FormulaSet undischarged_set(const Proof& p) {
  FormulaSet out;
  for (auto& a : open_assumptions(p)) out.insert(std::move(a.formula));
  return out;
}

std::set<Label> bound_labels(const Proof& p) {
  std::set<Label> out;
  for_each_postorder(p, [&](const Path&, const Proof& q) {
    for (const auto& d : q.discharges()) out.insert(d.begin(), d.end());
  });
  return out;
}

std::set<Label> all_labels(const Proof& p) {
  std::set<Label> out;
  for_each_postorder(p, [&](const Path&, const Proof& q) {
    if (q.is_assumption() && !q.label().empty()) out.insert(q.label());
    for (const auto& d : q.discharges()) out.insert(d.begin(), d.end());
  });
  return out;
}

void LabelSupply::reserve(const Label& l) {
  if (l.size() < 2 || l[0] != 'h') return;
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(l.data() + 1, l.data() + l.size(), n);
  if (ec == std::errc() && ptr == l.data() + l.size()) next_ = std::max(next_, n + 1);
}

void LabelSupply::reserve(const Proof& p) {
  for (const auto& l : all_labels(p)) reserve(l);
}

Label LabelSupply::fresh() { return "h" + std::to_string(next_++); }

namespace {

using Renaming = std::map<Label, Label>;

Proof rename(const Proof& p, const Renaming& env, const auto& binder_name) {
  if (p.is_assumption()) {
    auto it = env.find(p.label());
    if (it == env.end()) return p;
    return Proof::assume(p.conclusion(), it->second);
  }
  std::vector<Proof> premises;
  std::vector<std::vector<Label>> discharges;
  for (std::size_t i = 0; i < p.premises().size(); ++i) {
    Renaming inner = env;
    std::vector<Label> names;
    for (const auto& l : binder_name(p, i)) {
      const Label fresh = l.second;
      inner[l.first] = fresh;
      names.push_back(fresh);
    }
    premises.push_back(rename(p.premise(i), inner, binder_name));
    discharges.push_back(std::move(names));
  }
  return Proof::rule(p.rule(), std::move(premises), std::move(discharges), p.conclusion());
}

// Labels of leaves open in `p`, in left-to-right leaf order, without repeats.
void open_label_order(const Proof& p, std::vector<Label>& out) {
  for (const auto& a : open_assumptions(p)) {
    if (!a.label.empty() && std::find(out.begin(), out.end(), a.label) == out.end()) {
      out.push_back(a.label);
    }
  }
}

}  // namespace

Proof relabel_binders(const Proof& p, LabelSupply& supply) {
  auto binder = [&supply](const Proof& node, std::size_t i) {
    std::vector<std::pair<Label, Label>> out;
    for (const auto& l : node.discharges()[i]) out.emplace_back(l, supply.fresh());
    return out;
  };
  return rename(p, {}, binder);
}

Proof prune_discharges(const Proof& p) {
  if (p.is_assumption()) return p;
  std::vector<Proof> premises;
  std::vector<std::vector<Label>> discharges;
  bool changed = false;
  for (std::size_t i = 0; i < p.premises().size(); ++i) {
    Proof q = prune_discharges(p.premise(i));
    changed |= !q.same_node(p.premise(i));
    std::vector<Label> keep;
    if (!p.discharges()[i].empty()) {
      std::vector<Label> open;
      open_label_order(q, open);
      for (const auto& l : p.discharges()[i]) {
        if (std::find(open.begin(), open.end(), l) != open.end()) keep.push_back(l);
      }
      changed |= keep.size() != p.discharges()[i].size();
    }
    premises.push_back(std::move(q));
    discharges.push_back(std::move(keep));
  }
  if (!changed) return p;
  return Proof::rule(p.rule(), std::move(premises), std::move(discharges), p.conclusion());
}

Proof canonical_labels(const Proof& p) {
  const Proof pruned = prune_discharges(p);
  std::set<Label> free;
  for (const auto& a : open_assumptions(pruned)) {
    if (!a.label.empty()) free.insert(a.label);
  }
  std::size_t next = 1;
  auto fresh = [&]() {
    Label l;
    do {
      l = "h" + std::to_string(next++);
    } while (free.contains(l));
    return l;
  };
  // Binders are named in pre-order; within one premise the labels follow
  // the order in which their leaves first occur.
  auto binder = [&](const Proof& node, std::size_t i) {
    std::vector<std::pair<Label, Label>> out;
    const auto& closed = node.discharges()[i];
    if (closed.empty()) return out;
    std::vector<Label> order;
    open_label_order(node.premise(i), order);
    for (const auto& l : order) {
      if (std::find(closed.begin(), closed.end(), l) != closed.end()) out.emplace_back(l, fresh());
    }
    return out;
  };
  return rename(pruned, {}, binder);
}

bool alpha_equivalent(const Proof& a, const Proof& b) {
  return canonical_labels(a) == canonical_labels(b);
}

}  // namespace infectio
