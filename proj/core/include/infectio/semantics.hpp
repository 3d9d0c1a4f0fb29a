#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infectio/formula.hpp"

namespace infectio {

enum class TruthValue : std::uint8_t { T, B, N, F };

inline constexpr std::array<TruthValue, 4> kAllValues = {TruthValue::T, TruthValue::B,
                                                         TruthValue::N, TruthValue::F};

char to_char(TruthValue v);
std::optional<TruthValue> parse_truth_value(char c);

enum class LogicId : std::uint8_t {
  FDE,
  Sfde,
  dSfde,
  SfdeR,
  SfdeL,
  dSfdeR,
  dSfdeL,
  K3,
  LP,
  K3w,
  PWK,
  K3R,
  K3L,
  K3R2,
  K3L2,
};

std::span<const LogicId> all_logics();
std::string_view to_string(LogicId id);
std::optional<LogicId> parse_logic(std::string_view name);

using UnaryTable = std::array<TruthValue, 4>;
using BinaryTable = std::array<std::array<TruthValue, 4>, 4>;

/// Truth tables are indexed by the underlying TruthValue ordinal; cells
/// outside the carrier are unspecified and never consulted.
struct Matrix {
  std::vector<TruthValue> carrier;
  std::vector<TruthValue> designated;
  UnaryTable neg;
  BinaryTable and_;
  BinaryTable or_;

  bool in_carrier(TruthValue v) const;
  bool is_designated(TruthValue v) const;

  TruthValue apply_neg(TruthValue a) const { return neg[idx(a)]; }
  TruthValue apply_and(TruthValue a, TruthValue b) const { return and_[idx(a)][idx(b)]; }
  TruthValue apply_or(TruthValue a, TruthValue b) const { return or_[idx(a)][idx(b)]; }

  static std::size_t idx(TruthValue v) { return static_cast<std::size_t>(v); }
};

const Matrix& logic_matrix(LogicId id);

using Valuation = std::map<std::string, TruthValue>;

/// Throws EvaluationError if a variable is unassigned or assigned a value
/// outside the carrier.
TruthValue eval_formula(LogicId id, const Valuation& v, const Formula& f);

struct EntailmentResult {
  bool holds = false;
  std::optional<Valuation> countermodel;
};

/// Largest number of distinct variables `entails` will enumerate.
inline constexpr std::size_t kMaxEntailmentVariables = 12;

/// Exhaustive check of gamma |= delta. Valuations are visited with variables
/// in lexicographic order, the first variable varying slowest and values in
/// the order T, B, N, F; the first failing valuation is the countermodel.
EntailmentResult entails(LogicId id, std::span<const Formula> gamma,
                         std::span<const Formula> delta);

bool is_infectious_value(LogicId id, TruthValue x);
std::vector<TruthValue> infectious_values(LogicId id);

/// Fixed enumeration of every valuation over a sorted variable list, with
/// per-formula bitsets of the valuations that designate it. Used where
/// many formulas over the same variables are compared.
class ValuationSpace {
 public:
  using Bits = std::vector<std::uint64_t>;

  ValuationSpace(LogicId id, std::vector<std::string> vars);

  LogicId logic() const { return logic_; }
  std::size_t size() const { return size_; }
  const std::vector<std::string>& variables() const { return vars_; }

  /// Value of `f` under every valuation, in enumeration order.
  std::vector<TruthValue> values(const Formula& f) const;
  Bits designated(const Formula& f) const;
  Valuation valuation(std::size_t index) const;

  Bits all() const;
  Bits none() const { return Bits(words(), 0); }
  std::size_t words() const { return (size_ + 63) / 64; }

  static bool subset(const Bits& a, const Bits& b);
  static void and_into(Bits& acc, const Bits& other);
  static void or_into(Bits& acc, const Bits& other);
  /// Index of the lowest set bit of a & ~b, if any.
  static std::optional<std::size_t> first_outside(const Bits& a, const Bits& b);

 private:
  LogicId logic_;
  const Matrix* matrix_;
  std::vector<std::string> vars_;
  std::size_t size_ = 1;
  std::vector<std::vector<TruthValue>> var_values_;
};

}  // namespace infectio
