#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infectio {

enum class Connective : std::uint8_t { var, neg, conj, disj };

/// Immutable propositional formula over ~, & and |.
///
/// Nodes are shared, so copying a Formula is a reference-count bump.
/// Equality and ordering are purely syntactic: ~~p and p are different
/// formulas.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula neg(Formula operand);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);

  Connective kind() const { return node_->kind; }
  bool is_var() const { return kind() == Connective::var; }
  bool is_neg() const { return kind() == Connective::neg; }
  bool is_conj() const { return kind() == Connective::conj; }
  bool is_disj() const { return kind() == Connective::disj; }

  /// Variable name; only meaningful for variables.
  const std::string& name() const { return node_->name; }
  /// Operand of a negation.
  const Formula& operand() const { return node_->children[0]; }
  const Formula& left() const { return node_->children[0]; }
  const Formula& right() const { return node_->children[1]; }

  /// Number of connective occurrences.
  std::size_t degree() const { return node_->degree; }
  /// Number of symbol occurrences (connectives plus variables).
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Connective kind;
    std::string name;
    std::vector<Formula> children;
    std::size_t degree = 0;
    std::size_t size = 1;
    std::size_t hash = 0;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Connective kind, std::string name, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

using FormulaSet = std::set<Formula>;

/// Parses the ASCII/Unicode grammar: `~`/`¬` prefix negation binding
/// tightest, then `&`/`∧`, then `|`/`∨`; binary operators associate to
/// the left. Throws ParseError on malformed input.
Formula parse_formula(std::string_view text);

/// Canonical ASCII rendering with minimal parentheses; parse_formula
/// inverts it exactly.
std::string render_formula(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Formula& f);

inline std::size_t degree(const Formula& f) { return f.degree(); }

std::size_t depth(const Formula& f);

FormulaSet subformulas(const Formula& f);
FormulaSet subformulas(std::span<const Formula> fs);

/// Subformulas of `fs` together with the negation of each of them.
FormulaSet negation_closure(std::span<const Formula> fs);
FormulaSet negation_closure(const FormulaSet& fs);

std::set<std::string> variables(const Formula& f);
std::set<std::string> variables(std::span<const Formula> fs);

/// Shorthands used heavily by tests and rule tables.
inline Formula operator~(const Formula& f) { return Formula::neg(f); }
inline Formula operator&(const Formula& a, const Formula& b) { return Formula::conj(a, b); }
inline Formula operator|(const Formula& a, const Formula& b) { return Formula::disj(a, b); }

}  // namespace infectio

template <>
struct std::hash<infectio::Formula> {
  std::size_t operator()(const infectio::Formula& f) const noexcept { return f.hash(); }
};
