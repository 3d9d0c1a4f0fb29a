#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "infectio/calculus.hpp"
#include "infectio/formula.hpp"

namespace infectio {

using Label = std::string;
/// Child indices from the root; the empty path is the root.
using Path = std::vector<std::size_t>;

std::string render_path(const Path& p);

/// Immutable deduction tree with shared subtrees.
///
/// A node is either an assumption leaf (an empty label means the leaf can
/// never be discharged) or a rule application. `discharges()[i]` lists the
/// labels closed by the node in premise i; every rule-application node
/// stores its conclusion explicitly.
class Proof {
 public:
  static Proof assume(Formula f, Label label = {});
  /// Throws std::invalid_argument when `discharges` has more entries than
  /// premises.
  static Proof rule(RuleId r, std::vector<Proof> premises,
                    std::vector<std::vector<Label>> discharges, Formula conclusion);
  /// As above but infers the conclusion from the premises; throws
  /// std::invalid_argument when the rule does not fix it.
  static Proof rule(RuleId r, std::vector<Proof> premises,
                    std::vector<std::vector<Label>> discharges = {});

  bool is_assumption() const { return node_->is_assumption; }
  const Formula& conclusion() const { return node_->conclusion; }
  /// Leaf label (empty for unlabelled leaves and for rule nodes).
  const Label& label() const { return node_->label; }
  RuleId rule() const { return node_->rule; }
  const std::vector<Proof>& premises() const { return node_->premises; }
  const std::vector<std::vector<Label>>& discharges() const { return node_->discharges; }
  const Proof& premise(std::size_t i) const { return node_->premises[i]; }

  std::size_t node_count() const { return node_->nodes; }
  std::size_t height() const { return node_->height; }

  /// Throws std::out_of_range for a path that leaves the tree.
  const Proof& at(const Path& path) const;
  Proof replace(const Path& path, Proof replacement) const;

  bool same_node(const Proof& other) const { return node_ == other.node_; }

  friend bool operator==(const Proof& a, const Proof& b);

 private:
  struct Node {
    explicit Node(Formula c) : conclusion(std::move(c)) {}

    bool is_assumption = true;
    Formula conclusion;
    Label label;
    RuleId rule = RuleId::AndI;
    std::vector<Proof> premises;
    std::vector<std::vector<Label>> discharges;
    std::size_t nodes = 1;
    std::size_t height = 1;
  };

  explicit Proof(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Calls `fn(path, proof)` on every node, premises before their conclusion,
/// left to right.
template <typename Fn>
void for_each_postorder(const Proof& p, Fn&& fn) {
  Path path;
  auto go = [&](auto& self, const Proof& q) -> void {
    for (std::size_t i = 0; i < q.premises().size(); ++i) {
      path.push_back(i);
      self(self, q.premise(i));
      path.pop_back();
    }
    fn(static_cast<const Path&>(path), q);
  };
  go(go, p);
}

struct OpenAssumption {
  Label label;
  Formula formula;

  friend bool operator==(const OpenAssumption&, const OpenAssumption&) = default;
  friend auto operator<=>(const OpenAssumption&, const OpenAssumption&) = default;
};

/// Assumption leaves not discharged inside `p`, one entry per leaf.
std::vector<OpenAssumption> open_assumptions(const Proof& p);
/// Formulas of the undischarged leaves as a sorted multiset.
std::vector<Formula> undischarged(const Proof& p);
FormulaSet undischarged_set(const Proof& p);

/// Every label discharged by some node of `p`.
std::set<Label> bound_labels(const Proof& p);
/// Every label appearing anywhere in `p` (leaves and discharge lists).
std::set<Label> all_labels(const Proof& p);

/// Source of labels `h<n>` not yet used in a proof.
class LabelSupply {
 public:
  LabelSupply() = default;
  explicit LabelSupply(const Proof& p) { reserve(p); }

  /// Ensures later labels differ from every label in `p`.
  void reserve(const Proof& p);
  void reserve(const Label& l);
  Label fresh();

 private:
  std::size_t next_ = 1;
};

/// Renames every label bound inside `p` to a fresh one; free labels are
/// untouched. Used whenever a subproof is duplicated.
Proof relabel_binders(const Proof& p, LabelSupply& supply);

/// Renames bound labels to h1, h2, ... in post-order of their binders; free
/// labels are kept.
Proof canonical_labels(const Proof& p);

/// Equality up to renaming of discharged labels.
bool alpha_equivalent(const Proof& a, const Proof& b);

/// Drops discharge entries naming labels that no longer occur open in the
/// corresponding premise.
Proof prune_discharges(const Proof& p);

}  // namespace infectio
