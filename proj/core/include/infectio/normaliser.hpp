#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infectio/calculus.hpp"
#include "infectio/proof.hpp"

namespace infectio {

class NormalisationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RedexKind : std::uint8_t {
  detour,       // introduction (or EFQ) conclusion used as a major premise
  permutation,  // del-rule conclusion used as a major premise
  simplification,
  em_split,
};

std::string_view to_string(RedexKind k);

/// A chain C1..Cn (n >= 2) of occurrences of one formula, each Ci (i < n) a
/// minor premise of the del-rule concluding C(i+1). Positions run from C1
/// down to Cn.
struct Segment {
  std::vector<Path> positions;
  Formula formula;
  std::size_t degree = 0;
  bool is_maximal = false;
};

struct Redex {
  RedexKind kind = RedexKind::detour;
  /// Detour: the maximal formula occurrence. Permutation: the del-rule
  /// node concluding Cn. Simplification / em_split: the EM node.
  Path position;
  /// The node consuming the occurrence at `position` as premise
  /// `premise`; the parent of `position` for detours and permutations.
  Path consumer;
  std::size_t premise = 0;
  RuleId producer = RuleId::AndI;
  RuleId consumer_rule = RuleId::AndI;
  Formula formula;
  std::size_t degree = 0;
  /// Permutation only: the segment positions C1..Cn.
  std::vector<Path> segment;
};

struct Rank {
  std::size_t d = 0;
  std::size_t l = 0;

  friend auto operator<=>(const Rank&, const Rank&) = default;
};

std::string render_rank(const Rank& r);

enum class DegreeMeasure : std::uint8_t {
  connectives,  // formula degree
  symbols,      // connectives plus variable occurrences
};

/// Maximal formulas then maximal segments are reported per consuming node,
/// visiting consumers in post-order (leftmost-innermost first). Each
/// maximal segment (one per upward thread through del-rule branches) is
/// its own permutation redex.
std::vector<Redex> find_redexes(SystemId system, const Proof& p);

/// Every segment of `p`, maximal or not.
std::vector<Segment> find_segments(SystemId system, const Proof& p);

/// d is the highest degree of a maximal formula or segment; l counts the
/// maximal formulas plus the lengths of all maximal segments.
Rank rank(SystemId system, const Proof& p);

/// Rank variant used by the reduction strategy: degrees are measured with
/// `m` and l only counts maximal formulas and segments of degree d.
Rank rank_with(SystemId system, const Proof& p, DegreeMeasure m, bool count_top_only);

Proof detour_reduce(SystemId system, const Proof& p, const Redex& r);
Proof permute_reduce(SystemId system, const Proof& p, const Redex& r);

/// Applies whichever conversion `r.kind` names.
Proof reduce(SystemId system, const Proof& p, const Redex& r);

/// The redex the normalisation strategy would contract next.
std::optional<Redex> select_redex(SystemId system, const Proof& p);

struct TraceStep {
  Redex redex;
  Rank before;
  Rank after;
};

struct Normalisation {
  Proof result;
  std::vector<TraceStep> trace;
};

/// Contracts redexes until none remain. In systems with EM it then also
/// removes EM applications whose eliminated formula is foreign to the
/// end-sequent: a vacuous branch is kept alone, otherwise the EM is split
/// into EMs on immediate subformulas and reduction resumes.
/// Throws NormalisationError after 10 * n^2 steps (n = input node count).
Normalisation normalise(SystemId system, const Proof& p);

bool is_normal(SystemId system, const Proof& p);

struct NspReport {
  bool holds = true;
  std::vector<Path> violations;
};

/// Every occurrence must be a subformula of an undischarged assumption or of
/// the conclusion, or the negation of one.
NspReport check_nsp(SystemId system, const Proof& p);

/// Pushes the context below each EM application into its branches until
/// every EM sits in the chain of EMs ending at the root.
Proof em_finalise(SystemId system, const Proof& p);
bool is_em_final(const Proof& p);

/// Splits EFQ conclusions through introduction rules until each EFQ
/// concludes a variable or a negated variable.
Proof atomise_efq(SystemId system, const Proof& p);

/// Introduction rule used by atomise_efq for a conclusion of `f`'s shape in
/// `system`, if any.
std::optional<RuleId> efq_split_rule(SystemId system, const Formula& f);

}  // namespace infectio
