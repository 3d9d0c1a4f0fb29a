#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "infectio/calculus.hpp"
#include "infectio/proof.hpp"

namespace infectio {

enum class CheckErrorKind {
  rule_not_in_system,
  arity,
  schema_mismatch,
  illegal_discharge,
  branch_conclusion_mismatch,
  duplicate_discharge,
  label_conflict,
};

std::string_view to_string(CheckErrorKind k);

class ProofError : public std::runtime_error {
 public:
  ProofError(CheckErrorKind kind, Path path, const std::string& detail, int premise = -1);

  CheckErrorKind kind() const { return kind_; }
  const Path& path() const { return path_; }
  /// Offending premise index, or -1 when the node itself is at fault.
  int premise() const { return premise_; }

 private:
  CheckErrorKind kind_;
  Path path_;
  int premise_;
};

struct Judgement {
  /// Undischarged leaves, one entry per occurrence.
  std::vector<OpenAssumption> open;
  Formula conclusion;

  /// Open formulas as a sorted multiset.
  std::vector<Formula> assumptions() const;
};

/// Validates a single rule application given the judgements of its premises.
/// `node` must be a rule application; errors carry an empty path.
Judgement check_step(SystemId system, const Proof& node,
                     const std::vector<Judgement>& premise_judgements);

/// Validates the whole tree; ProofError::path() locates the offending node.
Judgement check_proof(SystemId system, const Proof& p);

/// check_proof without the exception.
bool is_valid(SystemId system, const Proof& p, std::string* why = nullptr);

}  // namespace infectio
