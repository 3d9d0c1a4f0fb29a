#include <gtest/gtest.h>

#include "infectio/checker.hpp"
#include "infectio/proof_io.hpp"

using namespace infectio;

namespace {

const Formula p = Formula::var("p");
const Formula q = Formula::var("q");

CheckErrorKind kind_of(SystemId s, const Proof& pr) {
  try {
    check_proof(s, pr);
  } catch (const ProofError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "proof was accepted";
  return CheckErrorKind::arity;
}

// {p | q} |- q | p by OrEp.
Proof commute() {
  return parse_proof(R"((rule OrEp
    ((assume "p | q")
     (rule OrI2p ((assume a2 "~q") (assume a1 "p")) (conclude "q | p"))
     (rule OrI1p ((assume b2 "q") (assume b1 "~p")) (conclude "q | p"))
     (rule OrI3p ((assume c2 "q") (assume c1 "p"))))
    (discharge (1 a1 a2) (2 b1 b2) (3 c1 c2))))");
}

}  // namespace

TEST(Checker, AcceptsCommutation) {
  const Judgement j = check_proof(SystemId::NDp_Sfde, commute());
  EXPECT_EQ(j.conclusion, q | p);
  EXPECT_EQ(j.assumptions(), std::vector<Formula>{p | q});
  EXPECT_TRUE(is_valid(SystemId::NDp_Sfde, commute()));
}

TEST(Checker, SingleStep) {
  const Proof node = Proof::rule(RuleId::AndI, {Proof::assume(p, "x"), Proof::assume(q, "y")});
  const Judgement j = check_step(SystemId::NDp_Sfde, node,
                                 {check_proof(SystemId::NDp_Sfde, node.premise(0)),
                                  check_proof(SystemId::NDp_Sfde, node.premise(1))});
  EXPECT_EQ(j.conclusion, p & q);
  EXPECT_EQ(j.open.size(), 2u);
}

TEST(Checker, RuleNotInSystem) {
  const Proof pr = Proof::rule(RuleId::OrI1, {Proof::assume(p)}, {}, p | q);
  EXPECT_EQ(kind_of(SystemId::NDp_Sfde, pr), CheckErrorKind::rule_not_in_system);
  EXPECT_TRUE(is_valid(SystemId::ND_FDEp, pr));
}

TEST(Checker, Arity) {
  const Proof pr = Proof::rule(RuleId::AndI, {Proof::assume(p)}, {}, p & q);
  EXPECT_EQ(kind_of(SystemId::NDp_Sfde, pr), CheckErrorKind::arity);
}

TEST(Checker, SchemaMismatch) {
  const Proof pr = Proof::rule(RuleId::AndI, {Proof::assume(p), Proof::assume(q)}, {}, q & p);
  EXPECT_EQ(kind_of(SystemId::NDp_Sfde, pr), CheckErrorKind::schema_mismatch);
  const Proof efq = Proof::rule(RuleId::EFQ, {Proof::assume(p), Proof::assume(~q)}, {}, q);
  EXPECT_EQ(kind_of(SystemId::NDp_K3w, efq), CheckErrorKind::schema_mismatch);
}

TEST(Checker, IllegalDischarge) {
  // Discharging from a premise that is not a branch.
  const Proof pr = Proof::rule(RuleId::AndI, {Proof::assume(p, "x"), Proof::assume(q)}, {{"x"}}, p & q);
  EXPECT_EQ(kind_of(SystemId::NDp_Sfde, pr), CheckErrorKind::illegal_discharge);
  // Discharging an assumption whose formula is not a hypothesis of the branch.
  const Proof wrong = parse_proof(R"((rule OrEp
    ((assume "p | q") (assume x "q | p") (assume y "q | p") (assume z "q | p"))
    (discharge (1 x))))");
  EXPECT_EQ(kind_of(SystemId::NDp_Sfde, wrong), CheckErrorKind::illegal_discharge);
}

TEST(Checker, BranchConclusionMismatch) {
  const Proof pr = parse_proof(R"((rule OrEp
    ((assume "p | q") (assume "r") (assume "r") (assume "s"))
    (conclude "r")))");
  EXPECT_EQ(kind_of(SystemId::NDp_Sfde, pr), CheckErrorKind::branch_conclusion_mismatch);
}

TEST(Checker, DuplicateDischarge) {
  const Proof pr = parse_proof(R"((rule OrEp
    ((assume "p | q")
     (rule OrEp
       ((assume "p | q") (assume a "p") (assume a "p") (assume a "p"))
       (discharge (1 a) (3 a)))
     (assume "p") (assume "p"))
    (discharge (1 a))))");
  EXPECT_EQ(kind_of(SystemId::NDp_Sfde, pr), CheckErrorKind::duplicate_discharge);
}

TEST(Checker, LabelConflict) {
  const Proof pr = Proof::rule(RuleId::AndI, {Proof::assume(p, "x"), Proof::assume(q, "x")});
  EXPECT_EQ(kind_of(SystemId::NDp_Sfde, pr), CheckErrorKind::label_conflict);
}

TEST(Checker, ErrorsCarryThePath) {
  const Proof bad = Proof::rule(RuleId::OrI1, {Proof::assume(p)}, {}, p | q);
  const Proof pr = Proof::rule(RuleId::NegNegI, {bad});
  try {
    check_proof(SystemId::NDp_Sfde, pr);
    FAIL();
  } catch (const ProofError& e) {
    EXPECT_EQ(e.path(), (Path{0}));
  }
  std::string why;
  EXPECT_FALSE(is_valid(SystemId::NDp_Sfde, pr, &why));
  EXPECT_FALSE(why.empty());
}

TEST(Checker, EmDischargesComplementaryHypotheses) {
  const Proof pr = parse_proof(R"((rule EM
    ((rule OrI1 ((assume a "p")) (conclude "p | ~p"))
     (rule OrI2 ((assume b "~p")) (conclude "p | ~p")))
    (discharge (0 a) (1 b))))");
  const Judgement j = check_proof(SystemId::NDp_PWK, pr);
  EXPECT_TRUE(j.open.empty());
  EXPECT_EQ(kind_of(SystemId::NDp_dSfde, pr), CheckErrorKind::rule_not_in_system);
}
