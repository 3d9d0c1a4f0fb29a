#include <gtest/gtest.h>

#include <random>

#include "infectio/error.hpp"
#include "infectio/semantics.hpp"
#include "oracle.hpp"

using namespace infectio;
namespace ts = infectio::testing;
using ts::Table;

namespace {

const Formula p = Formula::var("p");
const Formula q = Formula::var("q");

char c(TruthValue v) { return to_char(v); }

TruthValue tv(char ch) { return *parse_truth_value(ch); }

class EveryLogic : public ::testing::TestWithParam<LogicId> {};

std::vector<Formula> pool() { return ts::formulas_up_to({"p", "q"}, 1); }

}  // namespace

TEST(TruthValue, CharRoundTrip) {
  for (TruthValue v : kAllValues) EXPECT_EQ(parse_truth_value(to_char(v)), v);
  EXPECT_FALSE(parse_truth_value('X').has_value());
}

TEST(Logic, NamesRoundTrip) {
  for (LogicId id : all_logics()) EXPECT_EQ(parse_logic(to_string(id)), id);
  EXPECT_EQ(all_logics().size(), 15u);
}

TEST_P(EveryLogic, MatrixMatchesOracle) {
  const LogicId id = GetParam();
  const Table o = ts::oracle_table(id);
  const Matrix& m = logic_matrix(id);
  std::string carrier;
  for (TruthValue v : m.carrier) carrier += c(v);
  std::string designated;
  for (TruthValue v : m.designated) designated += c(v);
  EXPECT_EQ(carrier, o.values);
  EXPECT_EQ(designated, o.designated);
  for (char a : o.values) {
    EXPECT_EQ(c(m.apply_neg(tv(a))), o.neg.at(a)) << "~" << a;
    for (char b : o.values) {
      EXPECT_EQ(c(m.apply_and(tv(a), tv(b))), o.and_.at({a, b})) << a << "&" << b;
      EXPECT_EQ(c(m.apply_or(tv(a), tv(b))), o.or_.at({a, b})) << a << "|" << b;
    }
  }
}

TEST_P(EveryLogic, EntailsAgreesWithBruteForce) {
  const LogicId id = GetParam();
  const Table o = ts::oracle_table(id);
  const auto fs = pool();
  std::mt19937 rng(static_cast<unsigned>(id) + 7);
  std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
  for (int i = 0; i < 400; ++i) {
    std::vector<Formula> gamma;
    for (int k = i % 3; k > 0; --k) gamma.push_back(fs[pick(rng)]);
    std::vector<Formula> delta = {fs[pick(rng)]};
    if (i % 5 == 0) delta.push_back(fs[pick(rng)]);
    const auto r = entails(id, gamma, delta);
    EXPECT_EQ(r.holds, ts::naive_entails(o, gamma, delta));
    EXPECT_EQ(r.countermodel.has_value(), !r.holds);
    if (r.countermodel) {
      ts::NaiveValuation v;
      for (const auto& [name, val] : *r.countermodel) v[name] = c(val);
      for (const auto& g : gamma) EXPECT_NE(o.designated.find(ts::naive_eval(o, g, v)), std::string::npos);
      for (const auto& d : delta) EXPECT_EQ(o.designated.find(ts::naive_eval(o, d, v)), std::string::npos);
    }
  }
}

TEST_P(EveryLogic, EntailmentIsMonotone) {
  const LogicId id = GetParam();
  const auto fs = pool();
  for (const auto& a : fs) {
    for (const auto& b : fs) {
      const std::vector<Formula> g1 = {a};
      const std::vector<Formula> g2 = {a, q & ~p};
      const std::vector<Formula> d = {b};
      if (entails(id, g1, d).holds) EXPECT_TRUE(entails(id, g2, d).holds);
    }
  }
}

TEST_P(EveryLogic, ValuationSpaceMatchesEvaluation) {
  const LogicId id = GetParam();
  const ValuationSpace space(id, {"p", "q"});
  EXPECT_EQ(space.size(), logic_matrix(id).carrier.size() * logic_matrix(id).carrier.size());
  for (const auto& f : pool()) {
    const auto bits = space.designated(f);
    const auto values = space.values(f);
    for (std::size_t i = 0; i < space.size(); ++i) {
      const TruthValue v = eval_formula(id, space.valuation(i), f);
      EXPECT_EQ(values[i], v);
      EXPECT_EQ(((bits[i / 64] >> (i % 64)) & 1) != 0, logic_matrix(id).is_designated(v));
    }
  }
}

TEST_P(EveryLogic, InfectiousValueSpreads) {
  const LogicId id = GetParam();
  for (TruthValue x : infectious_values(id)) {
    for (const auto& f : ts::formulas_up_to({"p", "q"}, 2)) {
      if (!variables(f).contains("p")) continue;
      for (TruthValue y : logic_matrix(id).carrier) {
        EXPECT_EQ(eval_formula(id, {{"p", x}, {"q", y}}, f), x) << render_formula(f);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Logics, EveryLogic, ::testing::ValuesIn(all_logics()),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Semantics, PaperTableCells) {
  auto cell = [](LogicId id, char a, char op, char b) {
    const Matrix& m = logic_matrix(id);
    return c(op == '&' ? m.apply_and(tv(a), tv(b)) : m.apply_or(tv(a), tv(b)));
  };
  EXPECT_EQ(cell(LogicId::Sfde, 'T', '|', 'N'), 'N');
  EXPECT_EQ(cell(LogicId::Sfde, 'B', '&', 'F'), 'F');
  EXPECT_EQ(cell(LogicId::dSfde, 'N', '|', 'B'), 'B');
  EXPECT_EQ(cell(LogicId::dSfde, 'N', '&', 'T'), 'N');
  EXPECT_EQ(cell(LogicId::SfdeR, 'N', '&', 'F'), 'N');
  EXPECT_EQ(cell(LogicId::SfdeR, 'F', '&', 'N'), 'F');
  EXPECT_EQ(cell(LogicId::SfdeL, 'N', '|', 'T'), 'T');
  EXPECT_EQ(cell(LogicId::dSfdeR, 'B', '|', 'N'), 'B');
  EXPECT_EQ(cell(LogicId::dSfdeL, 'B', '|', 'N'), 'F');
}

TEST(Semantics, InfectiousValues) {
  EXPECT_EQ(infectious_values(LogicId::Sfde), std::vector<TruthValue>{TruthValue::N});
  EXPECT_EQ(infectious_values(LogicId::dSfde), std::vector<TruthValue>{TruthValue::B});
  EXPECT_EQ(infectious_values(LogicId::K3w), std::vector<TruthValue>{TruthValue::N});
  EXPECT_EQ(infectious_values(LogicId::PWK), std::vector<TruthValue>{TruthValue::B});
  EXPECT_TRUE(infectious_values(LogicId::FDE).empty());
  EXPECT_TRUE(infectious_values(LogicId::SfdeR).empty());
  EXPECT_FALSE(is_infectious_value(LogicId::K3w, TruthValue::B));  // outside the carrier
}

TEST(Semantics, SpotEntailments) {
  auto holds = [](LogicId id, std::vector<Formula> g, Formula d) {
    return entails(id, g, std::span<const Formula>(&d, 1)).holds;
  };
  EXPECT_TRUE(holds(LogicId::Sfde, {p | q}, q | ~q));
  EXPECT_FALSE(holds(LogicId::Sfde, {p}, p | q));
  EXPECT_FALSE(holds(LogicId::dSfde, {p & q}, p));
  EXPECT_TRUE(holds(LogicId::K3w, {p, ~p}, q));
  EXPECT_TRUE(holds(LogicId::PWK, {}, p | ~p));
  EXPECT_FALSE(holds(LogicId::FDE, {}, p | ~p));
  EXPECT_TRUE(holds(LogicId::LP, {}, p | ~p));
}

TEST(Semantics, CountermodelIsFirstInEnumerationOrder) {
  const Formula d = p | q;
  const auto r = entails(LogicId::Sfde, std::span<const Formula>(&p, 1), std::span<const Formula>(&d, 1));
  ASSERT_TRUE(r.countermodel);
  EXPECT_EQ(r.countermodel->at("p"), TruthValue::T);
  EXPECT_EQ(r.countermodel->at("q"), TruthValue::N);
}

TEST(Semantics, EvaluationErrors) {
  EXPECT_THROW(eval_formula(LogicId::Sfde, {}, p), EvaluationError);
  EXPECT_THROW(eval_formula(LogicId::K3, {{"p", TruthValue::B}}, p), EvaluationError);
}

TEST(Semantics, TooManyVariables) {
  Formula big = Formula::var("v0");
  for (int i = 1; i <= 12; ++i) big = big & Formula::var("v" + std::to_string(i));
  EXPECT_THROW(entails(LogicId::FDE, std::span<const Formula>(&big, 1), std::span<const Formula>(&big, 1)),
               TooManyVariables);
}
