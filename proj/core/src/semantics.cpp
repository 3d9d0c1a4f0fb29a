#include "infectio/semantics.hpp"

#include <algorithm>
#include <bit>

#include "infectio/error.hpp"

namespace infectio {

char to_char(TruthValue v) {
  static constexpr char kNames[] = {'T', 'B', 'N', 'F'};
  return kNames[static_cast<std::size_t>(v)];
}

std::optional<TruthValue> parse_truth_value(char c) {
  switch (c) {
    case 'T': return TruthValue::T;
    case 'B': return TruthValue::B;
    case 'N': return TruthValue::N;
    case 'F': return TruthValue::F;
    default: return std::nullopt;
  }
}

namespace {

constexpr std::array<LogicId, 15> kLogics = {
    LogicId::FDE,   LogicId::Sfde, LogicId::dSfde, LogicId::SfdeR, LogicId::SfdeL,
    LogicId::dSfdeR, LogicId::dSfdeL, LogicId::K3,  LogicId::LP,    LogicId::K3w,
    LogicId::PWK,   LogicId::K3R,  LogicId::K3L,   LogicId::K3R2,  LogicId::K3L2,
};

constexpr std::array<std::string_view, 15> kLogicNames = {
    "FDE", "Sfde", "dSfde", "SfdeR", "SfdeL", "dSfdeR", "dSfdeL", "K3",
    "LP",  "K3w",  "PWK",   "K3R",   "K3L",   "K3R2",   "K3L2",
};

std::vector<TruthValue> values_of(std::string_view letters) {
  std::vector<TruthValue> out;
  for (char c : letters) out.push_back(*parse_truth_value(c));
  return out;
}

// `rows` lists one row per carrier value, rows separated by spaces, each row
// giving the results for the carrier values in order.
BinaryTable binary(std::string_view carrier, std::string_view rows) {
  BinaryTable t{};
  for (auto& row : t) row.fill(TruthValue::F);
  const auto vals = values_of(carrier);
  std::size_t pos = 0;
  for (auto a : vals) {
    for (auto b : vals) {
      while (rows[pos] == ' ') ++pos;
      t[Matrix::idx(a)][Matrix::idx(b)] = *parse_truth_value(rows[pos++]);
    }
  }
  return t;
}

Matrix make(std::string_view carrier, std::string_view and_rows, std::string_view or_rows) {
  Matrix m;
  m.carrier = values_of(carrier);
  for (auto v : m.carrier) {
    if (v == TruthValue::T || v == TruthValue::B) m.designated.push_back(v);
  }
  m.neg = {TruthValue::F, TruthValue::B, TruthValue::N, TruthValue::T};
  m.and_ = binary(carrier, and_rows);
  m.or_ = binary(carrier, or_rows);
  return m;
}

std::array<Matrix, 15> build_matrices() {
  std::array<Matrix, 15> m;
  auto at = [&m](LogicId id) -> Matrix& { return m[static_cast<std::size_t>(id)]; };

  at(LogicId::FDE) = make("TBNF", "TBNF BBFF NFNF FFFF", "TTTT TBTB TTNN TBNF");
  at(LogicId::Sfde) = make("TBNF", "TBNF BBNF NNNN FFNF", "TTNT TBNB NNNN TBNF");
  at(LogicId::dSfde) = make("TBNF", "TBNF BBBB NBNF FBFF", "TBTT BBBB TBNN TBNF");
  at(LogicId::SfdeR) = make("TBNF", "TBNF BBFF NNNN FFFF", "TTTT TBTB NNNN TBNF");
  at(LogicId::SfdeL) = make("TBNF", "TBNF BBNF NFNF FFNF", "TTNT TBNB TTNN TBNF");
  at(LogicId::dSfdeR) = make("TBNF", "TBNF BBBB NFNF FFFF", "TTTT BBBB TTNN TBNF");
  at(LogicId::dSfdeL) = make("TBNF", "TBNF BBFF NBNF FBFF", "TBTT TBFB TBNN TBNF");

  at(LogicId::K3) = make("TNF", "TNF NNF FFF", "TTT TNN TNF");
  at(LogicId::LP) = make("TBF", "TBF BBF FFF", "TTT TBB TBF");
  at(LogicId::K3w) = make("TNF", "TNF NNN FNF", "TNT NNN TNF");
  at(LogicId::PWK) = make("TBF", "TBF BBB FBF", "TBT BBB TBF");
  at(LogicId::K3R) = make("TNF", "TNF NNN FFF", "TTT NNN TNF");
  at(LogicId::K3L) = make("TNF", "TNF NNF FNF", "TNT TNN TNF");
  at(LogicId::K3R2) = make("TBF", "TBF BBB FFF", "TTT BBB TBF");
  at(LogicId::K3L2) = make("TBF", "TBF BBF FBF", "TBT TBB TBF");
  return m;
}

// Postfix program over variable slots; evaluation is a tight loop.
struct Program {
  enum Op : std::uint8_t { load, neg, conj, disj };
  std::vector<std::pair<Op, std::uint32_t>> code;

  Program(const Formula& f, const std::vector<std::string>& vars) { emit(f, vars); }

  void emit(const Formula& f, const std::vector<std::string>& vars) {
    switch (f.kind()) {
      case Connective::var: {
        auto it = std::lower_bound(vars.begin(), vars.end(), f.name());
        code.emplace_back(load, static_cast<std::uint32_t>(it - vars.begin()));
        break;
      }
      case Connective::neg:
        emit(f.operand(), vars);
        code.emplace_back(neg, 0);
        break;
      case Connective::conj:
      case Connective::disj:
        emit(f.left(), vars);
        emit(f.right(), vars);
        code.emplace_back(f.is_conj() ? conj : disj, 0);
        break;
    }
  }

  TruthValue run(const Matrix& m, const std::vector<TruthValue>& slots,
                 std::vector<TruthValue>& stack) const {
    stack.clear();
    for (const auto& [op, arg] : code) {
      switch (op) {
        case load:
          stack.push_back(slots[arg]);
          break;
        case neg:
          stack.back() = m.apply_neg(stack.back());
          break;
        case conj:
        case disj: {
          const TruthValue b = stack.back();
          stack.pop_back();
          stack.back() = op == conj ? m.apply_and(stack.back(), b) : m.apply_or(stack.back(), b);
          break;
        }
      }
    }
    return stack.back();
  }
};

}  // namespace

std::span<const LogicId> all_logics() { return kLogics; }

std::string_view to_string(LogicId id) { return kLogicNames[static_cast<std::size_t>(id)]; }

std::optional<LogicId> parse_logic(std::string_view name) {
  for (std::size_t i = 0; i < kLogicNames.size(); ++i) {
    if (kLogicNames[i] == name) return kLogics[i];
  }
  return std::nullopt;
}

bool Matrix::in_carrier(TruthValue v) const {
  return std::find(carrier.begin(), carrier.end(), v) != carrier.end();
}

bool Matrix::is_designated(TruthValue v) const {
  return std::find(designated.begin(), designated.end(), v) != designated.end();
}

const Matrix& logic_matrix(LogicId id) {
  static const std::array<Matrix, 15> matrices = build_matrices();
  return matrices[static_cast<std::size_t>(id)];
}

TruthValue eval_formula(LogicId id, const Valuation& v, const Formula& f) {
  const Matrix& m = logic_matrix(id);
  switch (f.kind()) {
    case Connective::var: {
      auto it = v.find(f.name());
      if (it == v.end()) throw EvaluationError("no value for variable '" + f.name() + "'");
      if (!m.in_carrier(it->second)) {
        throw EvaluationError(std::string("value ") + to_char(it->second) + " of '" + f.name() +
                              "' is outside the carrier of " + std::string(to_string(id)));
      }
      return it->second;
    }
    case Connective::neg:
      return m.apply_neg(eval_formula(id, v, f.operand()));
    case Connective::conj:
      return m.apply_and(eval_formula(id, v, f.left()), eval_formula(id, v, f.right()));
    case Connective::disj:
      return m.apply_or(eval_formula(id, v, f.left()), eval_formula(id, v, f.right()));
  }
  return TruthValue::F;
}

EntailmentResult entails(LogicId id, std::span<const Formula> gamma,
                         std::span<const Formula> delta) {
  std::set<std::string> names = variables(gamma);
  names.merge(variables(delta));
  if (names.size() > kMaxEntailmentVariables) {
    throw TooManyVariables(std::to_string(names.size()) + " variables exceed the limit of " +
                           std::to_string(kMaxEntailmentVariables));
  }
  const std::vector<std::string> vars(names.begin(), names.end());
  const Matrix& m = logic_matrix(id);

  std::vector<Program> premises;
  std::vector<Program> conclusions;
  for (const auto& f : gamma) premises.emplace_back(f, vars);
  for (const auto& f : delta) conclusions.emplace_back(f, vars);

  const std::size_t k = m.carrier.size();
  std::vector<std::size_t> digits(vars.size(), 0);
  std::vector<TruthValue> slots(vars.size(), m.carrier[0]);
  std::vector<TruthValue> stack;

  while (true) {
    bool premises_hold = std::all_of(premises.begin(), premises.end(), [&](const Program& p) {
      return m.is_designated(p.run(m, slots, stack));
    });
    if (premises_hold) {
      bool some = std::any_of(conclusions.begin(), conclusions.end(), [&](const Program& p) {
        return m.is_designated(p.run(m, slots, stack));
      });
      if (!some) {
        Valuation cm;
        for (std::size_t i = 0; i < vars.size(); ++i) cm.emplace(vars[i], slots[i]);
        return {false, std::move(cm)};
      }
    }
    // Odometer step: the last variable varies fastest.
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++digits[i] < k) {
        slots[i] = m.carrier[digits[i]];
        break;
      }
      digits[i] = 0;
      slots[i] = m.carrier[0];
      if (i == 0) return {true, std::nullopt};
    }
    if (vars.empty()) return {true, std::nullopt};
  }
}

bool is_infectious_value(LogicId id, TruthValue x) {
  const Matrix& m = logic_matrix(id);
  if (!m.in_carrier(x)) return false;
  if (m.apply_neg(x) != x) return false;
  for (auto y : m.carrier) {
    for (const BinaryTable* t : {&m.and_, &m.or_}) {
      const auto& tab = *t;
      if (tab[Matrix::idx(x)][Matrix::idx(y)] != x) return false;
      if (tab[Matrix::idx(y)][Matrix::idx(x)] != x) return false;
    }
  }
  return true;
}

std::vector<TruthValue> infectious_values(LogicId id) {
  std::vector<TruthValue> out;
  for (auto x : logic_matrix(id).carrier) {
    if (is_infectious_value(id, x)) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------

ValuationSpace::ValuationSpace(LogicId id, std::vector<std::string> vars)
    : logic_(id), matrix_(&logic_matrix(id)), vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  if (vars_.size() > kMaxEntailmentVariables) {
    throw TooManyVariables(std::to_string(vars_.size()) + " variables exceed the limit of " +
                           std::to_string(kMaxEntailmentVariables));
  }
  const std::size_t k = matrix_->carrier.size();
  for (std::size_t i = 0; i < vars_.size(); ++i) size_ *= k;

  // Column of values for each variable across the enumeration.
  var_values_.assign(vars_.size(), std::vector<TruthValue>(size_));
  std::size_t stride = 1;
  for (std::size_t i = vars_.size(); i-- > 0;) {
    for (std::size_t row = 0; row < size_; ++row) {
      var_values_[i][row] = matrix_->carrier[(row / stride) % k];
    }
    stride *= k;
  }
}

std::vector<TruthValue> ValuationSpace::values(const Formula& f) const {
  switch (f.kind()) {
    case Connective::var: {
      auto it = std::lower_bound(vars_.begin(), vars_.end(), f.name());
      if (it == vars_.end() || *it != f.name()) {
        throw EvaluationError("no value for variable '" + f.name() + "'");
      }
      return var_values_[static_cast<std::size_t>(it - vars_.begin())];
    }
    case Connective::neg: {
      auto v = values(f.operand());
      for (auto& x : v) x = matrix_->apply_neg(x);
      return v;
    }
    default: {
      auto a = values(f.left());
      const auto b = values(f.right());
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = f.is_conj() ? matrix_->apply_and(a[i], b[i]) : matrix_->apply_or(a[i], b[i]);
      }
      return a;
    }
  }
}

ValuationSpace::Bits ValuationSpace::designated(const Formula& f) const {
  Bits out = none();
  const auto vals = values(f);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (matrix_->is_designated(vals[i])) out[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return out;
}

Valuation ValuationSpace::valuation(std::size_t index) const {
  Valuation v;
  for (std::size_t i = 0; i < vars_.size(); ++i) v.emplace(vars_[i], var_values_[i][index]);
  return v;
}

ValuationSpace::Bits ValuationSpace::all() const {
  Bits out(words(), ~std::uint64_t{0});
  if (size_ % 64 != 0) out.back() = (std::uint64_t{1} << (size_ % 64)) - 1;
  return out;
}

bool ValuationSpace::subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

void ValuationSpace::and_into(Bits& acc, const Bits& other) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] &= other[i];
}

void ValuationSpace::or_into(Bits& acc, const Bits& other) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] |= other[i];
}

std::optional<std::size_t> ValuationSpace::first_outside(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (const std::uint64_t d = a[i] & ~b[i]) {
      return i * 64 + static_cast<std::size_t>(std::countr_zero(d));
    }
  }
  return std::nullopt;
}

}  // namespace infectio
