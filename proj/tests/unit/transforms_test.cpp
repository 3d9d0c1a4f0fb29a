#include <gtest/gtest.h>

#include "infectio/checker.hpp"
#include "infectio/normaliser.hpp"
#include "infectio/proof_io.hpp"
#include "oracle.hpp"
#include "proof_gen.hpp"

using namespace infectio;
namespace ts = infectio::testing;

namespace {

const Formula p = Formula::var("p");
const Formula q = Formula::var("q");
const Formula r = Formula::var("r");

Proof figure(const std::string& name) {
  return read_proof_file(ts::data_dir() / "figures" / (name + ".ndp"));
}

Proof efq(const Formula& goal) {
  return Proof::rule(RuleId::EFQ, {Proof::assume(p), Proof::assume(~p)}, {}, goal);
}

bool efq_conclusions_atomic(const Proof& pr) {
  bool ok = true;
  for_each_postorder(pr, [&](const Path&, const Proof& n) {
    if (n.is_assumption() || n.rule() != RuleId::EFQ) return;
    const Formula& c = n.conclusion();
    ok = ok && (c.is_var() || (c.is_neg() && c.operand().is_var()));
  });
  return ok;
}

}  // namespace

TEST(EmFinal, LemmaFigure) {
  const Proof before = figure("em_final.before");
  EXPECT_FALSE(is_em_final(before));
  const Proof out = em_finalise(SystemId::NDp_PWK, before);
  EXPECT_TRUE(is_em_final(out));
  EXPECT_TRUE(alpha_equivalent(out, figure("em_final.after")));
  EXPECT_EQ(check_proof(SystemId::NDp_PWK, out).conclusion, check_proof(SystemId::NDp_PWK, before).conclusion);
}

TEST(EmFinal, ProofWithoutEmIsFinal) {
  EXPECT_TRUE(is_em_final(Proof::assume(p)));
  const Proof pr = Proof::rule(RuleId::AndI, {Proof::assume(p), Proof::assume(q)});
  EXPECT_EQ(em_finalise(SystemId::NDp_PWK, pr), pr);
}

TEST(EmFinal, FuzzedProofs) {
  for (SystemId sys : {SystemId::NDp_PWK, SystemId::NDp_K3R2, SystemId::NDp_K3L2}) {
    ts::ProofGenerator gen(sys, 99);
    for (int i = 0; i < 200; ++i) {
      const Proof pr = gen.next();
      const Proof out = em_finalise(sys, pr);
      EXPECT_TRUE(is_em_final(out));
      const Judgement a = check_proof(sys, pr);
      const Judgement b = check_proof(sys, out);
      EXPECT_EQ(a.conclusion, b.conclusion);
      const FormulaSet open = undischarged_set(pr);
      for (const auto& f : undischarged_set(out)) EXPECT_TRUE(open.contains(f));
    }
  }
}

TEST(Efq, ConjunctionFigure) {
  const Proof out = atomise_efq(SystemId::NDp_K3w, figure("efq_conjunction.before"));
  EXPECT_TRUE(alpha_equivalent(out, figure("efq_conjunction.after")));
}

TEST(Efq, NegatedConjunctionFigure) {
  const Proof out = atomise_efq(SystemId::NDp_K3w, figure("efq_negated_conjunction.before"));
  EXPECT_TRUE(alpha_equivalent(out, figure("efq_negated_conjunction.after")));
  EXPECT_EQ(efq_split_rule(SystemId::NDp_K3w, ~(q & r)), RuleId::NegAndI1p);
  EXPECT_EQ(efq_split_rule(SystemId::NDp_K3w, q & r), RuleId::AndI);
}

TEST(Efq, VariableConclusionUnchanged) {
  EXPECT_EQ(atomise_efq(SystemId::NDp_K3w, efq(q)), efq(q));
  EXPECT_EQ(atomise_efq(SystemId::NDp_K3w, efq(~q)), efq(~q));
  EXPECT_FALSE(efq_split_rule(SystemId::NDp_K3w, q).has_value());
}

TEST(Efq, EverySystemAtomisesDeepConclusions) {
  const std::vector<Formula> goals = {~~(q & r), q | ~r, ~(q | r), ~(~q & (r | q)), (q | r) & ~~q};
  for (SystemId sys : {SystemId::NDp_K3w, SystemId::NDp_K3R, SystemId::NDp_K3L}) {
    for (const auto& g : goals) {
      const Proof out = atomise_efq(sys, efq(g));
      const Judgement j = check_proof(sys, out);
      EXPECT_EQ(j.conclusion, g) << to_string(sys) << " " << render_formula(g);
      EXPECT_TRUE(efq_conclusions_atomic(out)) << to_string(sys) << " " << render_formula(g);
      for (const auto& f : j.assumptions()) EXPECT_TRUE(f == p || f == ~p);
    }
  }
}

TEST(Efq, FuzzedProofs) {
  for (SystemId sys : {SystemId::NDp_K3w, SystemId::NDp_K3R, SystemId::NDp_K3L}) {
    ts::ProofGenerator gen(sys, 7);
    for (int i = 0; i < 200; ++i) {
      const Proof pr = gen.next();
      const Proof out = atomise_efq(sys, pr);
      EXPECT_TRUE(efq_conclusions_atomic(out));
      EXPECT_EQ(check_proof(sys, out).conclusion, check_proof(sys, pr).conclusion);
    }
  }
}
