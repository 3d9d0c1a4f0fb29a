#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>

#include "infectio/calculus.hpp"
#include "infectio/proof.hpp"

namespace infectio {

/// `max_depth` bounds the nesting of backward steps (introductions, branching
/// eliminations, EFQ and EM); chains of one-premise eliminations applied to
/// available assumptions are free. `max_nodes` bounds the number of
/// subgoals visited per call. Both must be at least 1.
struct SearchBudget {
  std::size_t max_depth = 8;
  std::size_t max_nodes = 200000;
};

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t depth_reached = 0;
  bool exhausted = false;  // stopped by max_nodes
};

/// Goal-directed proof search. Candidate formulas come from the negation
/// closure of the sequent, and subgoals that are not semantically valid in
/// the system's logic are pruned (the top-level sequent itself is searched
/// regardless). Subgoal results are memoised across calls on the same
/// Prover, so reusing one instance for many sequents over the same
/// assumptions is much cheaper than calling `prove` repeatedly. Proofs
/// returned by one Prover may share subtrees, and their discharge labels
/// keep counting up from call to call; apply canonical_labels for h1, h2, ...
class Prover {
 public:
  explicit Prover(SystemId system);
  ~Prover();
  Prover(Prover&&) noexcept;
  Prover& operator=(Prover&&) noexcept;

  /// A proof of `goal` whose undischarged assumptions are among `gamma`, or
  /// nothing when none was found within the budget. Throws
  /// std::invalid_argument for a zero budget.
  std::optional<Proof> prove(std::span<const Formula> gamma, const Formula& goal,
                             SearchBudget budget = {});

  const SearchStats& last_stats() const;
  SystemId system() const;
  void clear_cache();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::optional<Proof> prove(SystemId system, std::span<const Formula> gamma, const Formula& goal,
                           SearchBudget budget = {});

}  // namespace infectio
