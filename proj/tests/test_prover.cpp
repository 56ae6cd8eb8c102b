#include <random>

#include "doctest.h"
#include "rcalc/prover.hpp"
#include "test_util.hpp"

using namespace rcalc;
using rcalc::testutil::F;
using rcalc::testutil::G;

namespace {

const Budget kDefault{};

std::vector<Formula> chain_laws() { return {F("A"), F("A -> B"), F("B -> C"), F("E -> F")}; }

}  // namespace

TEST_CASE("axiom sequents") {
  const ProofResult r = prove(Sequent{{F("A")}, F("A")}, kDefault);
  REQUIRE(r.proved());
  CHECK(r.tree->rule == ProofRule::Id);
  CHECK(tree_size(*r.tree) == 1);
  CHECK(check_proof_tree(*r.tree));
}

TEST_CASE("distinct atoms are disproved by a one-element model") {
  const ProofResult r = prove(Sequent{{F("A")}, F("B")}, kDefault);
  REQUIRE(r.status == ProofResult::Status::Disproved);
  REQUIRE(r.countermodel.has_value());
  CHECK(r.countermodel->size == 1);
  CHECK(evaluate(*r.countermodel, F("A")));
  CHECK_FALSE(evaluate(*r.countermodel, F("B")));
}

TEST_CASE("the five-node existential derivation") {
  const Sequent s{{F("C"), F("A"), F("forall x. (A -> B(x))")}, F("exists x. B(x)")};
  const ProofResult r = prove(s, kDefault);
  REQUIRE(r.proved());
  CHECK(check_proof_tree(*r.tree));
  // Shape: exists-right at the root, then forall-left, then imp-left into
  // two axiom leaves.
  CHECK(tree_size(*r.tree) == 5);
  CHECK(r.tree->rule == ProofRule::ExistsR);
  const ProofNode& n2 = r.tree->children[0];
  CHECK(n2.rule == ProofRule::ForallL);
  const ProofNode& n3 = n2.children[0];
  CHECK(n3.rule == ProofRule::ImpL);
  REQUIRE(n3.children.size() == 2);
  CHECK(n3.children[0].rule == ProofRule::Id);
  CHECK(n3.children[1].rule == ProofRule::Id);
}

TEST_CASE("proof tree checker rejects a mutated witness") {
  const Sequent s{{F("C"), F("A"), F("forall x. (A -> B(x))")}, F("exists x. B(x)")};
  ProofResult r = prove(s, kDefault);
  REQUIRE(r.proved());
  ProofNode mutated = *r.tree;
  // Break the forall-left witness under the root: children no longer match
  // the schema.
  REQUIRE(mutated.children[0].rule == ProofRule::ForallL);
  mutated.children[0].witness = cst("zz");
  std::string diag;
  CHECK_FALSE(check_proof_tree(mutated, diag));
  CHECK(!diag.empty());
}

TEST_CASE("chain consequences are proved with sensible trees") {
  const ProofResult r = prove(Sequent{chain_laws(), F("C")}, kDefault);
  REQUIRE(r.proved());
  CHECK(check_proof_tree(*r.tree));
}

TEST_CASE("classical validities need the fallback rule") {
  for (const char* text : {"((A -> B) -> A) -> A", "A | ~A", "~(A & ~A)", "(~A -> A) -> A"}) {
    const ProofResult r = prove(Sequent{{}, F(text)}, kDefault);
    REQUIRE_MESSAGE(r.proved(), text);
    CHECK(check_proof_tree(*r.tree));
  }
}

TEST_CASE("ground equality sequents") {
  const std::vector<Formula> ex53 = {G("f(x) = y"), G("f(y) = z"), G("~(f(f(x)) = z)")};
  // The antecedent is refutable, so anything follows.
  const ProofResult r = prove(Sequent{ex53, G("~(x = x)")}, kDefault);
  REQUIRE(r.proved());
  CHECK(r.tree->rule == ProofRule::EqRefute);
  // Congruence entailment: the first two laws force f(f(x)) = z.
  const ProofResult r2 = prove(Sequent{{G("f(x) = y"), G("f(y) = z")}, G("f(f(x)) = z")}, kDefault);
  REQUIRE(r2.proved());
  CHECK(r2.tree->rule == ProofRule::EqId);
  // Reflexivity closes without any equalities around.
  CHECK(prove(Sequent{{}, G("c = c")}, kDefault).proved());
}

TEST_CASE("consistency oracle") {
  CHECK(consistent({F("A")}, kDefault) == Tri::Yes);
  const std::vector<Formula> ex53 = {G("f(x) = y"), G("f(y) = z"), G("~(f(f(x)) = z)")};
  CHECK(consistent(ex53, kDefault) == Tri::No);
  std::vector<Formula> chain = chain_laws();
  chain.push_back(F("~C"));
  CHECK(consistent(chain, kDefault) == Tri::No);
  CHECK(consistent(chain_laws(), kDefault) == Tri::Yes);
}

TEST_CASE("atomic consequences") {
  const std::vector<Formula> got = atomic_consequences(chain_laws(), kDefault);
  auto contains = [&](const Formula& f) {
    for (const Formula& g : got)
      if (sentence_equal(f, g)) return true;
    return false;
  };
  CHECK(contains(F("A")));
  CHECK(contains(F("B")));
  CHECK(contains(F("C")));
  CHECK_FALSE(contains(F("E")));
  CHECK_FALSE(contains(F("F")));
  CHECK_FALSE(contains(F("~E")));

  CHECK(atomic_consequences({}, kDefault).empty());

  const std::vector<Formula> fo = {G("P(c)"), G("forall x. (P(x) -> Q(x))")};
  const std::vector<Formula> got2 = atomic_consequences(fo, kDefault);
  auto contains2 = [&](const Formula& f) {
    for (const Formula& g : got2)
      if (sentence_equal(f, g)) return true;
    return false;
  };
  CHECK(contains2(G("P(c)")));
  CHECK(contains2(G("Q(c)")));
}

TEST_CASE("soundness spot checks on random provable sequents") {
  std::mt19937 rng(2024);
  const std::vector<std::string> atoms = {"A", "B", "C"};
  int proved_count = 0;
  for (int i = 0; i < 150; ++i) {
    std::vector<Formula> ant;
    const int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < n; ++k) ant.push_back(testutil::random_prop(rng, atoms, 2));
    const Formula succ = testutil::random_prop(rng, atoms, 2);
    const ProofResult r = prove(Sequent{ant, succ}, kDefault);
    if (!r.proved()) continue;
    ++proved_count;
    CHECK(check_proof_tree(*r.tree));
    // Every model of the antecedent up to size 3 satisfies the succedent.
    Signature sig = signature_of(ant);
    sig.merge(signature_of(succ));
    CHECK_FALSE(find_model(sig, ant, {succ}, 3).has_value());
  }
  CHECK(proved_count > 20);
}

TEST_CASE("countermodels really are countermodels") {
  std::mt19937 rng(99);
  const std::vector<std::string> atoms = {"A", "B", "C", "D"};
  int disproved_count = 0;
  for (int i = 0; i < 150; ++i) {
    std::vector<Formula> ant;
    const int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < n; ++k) ant.push_back(testutil::random_prop(rng, atoms, 2));
    const Formula succ = testutil::random_prop(rng, atoms, 2);
    const ProofResult r = prove(Sequent{ant, succ}, kDefault);
    if (r.status != ProofResult::Status::Disproved) continue;
    ++disproved_count;
    for (const Formula& f : ant) CHECK(evaluate(*r.countermodel, f));
    CHECK(evaluate(*r.countermodel, neg(succ)));
  }
  CHECK(disproved_count > 20);
}

TEST_CASE("propositional prove agrees with truth tables") {
  std::mt19937 rng(4242);
  const std::vector<std::string> atoms = {"A", "B", "C", "D", "E", "G"};
  for (int i = 0; i < 150; ++i) {
    std::vector<Formula> ant;
    const int n = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int k = 0; k < n; ++k) ant.push_back(testutil::random_prop(rng, atoms, 2));
    const Formula succ = testutil::random_prop(rng, atoms, 2);
    const bool valid = testutil::tt_valid(ant, succ);
    const ProofResult r = prove(Sequent{ant, succ}, kDefault);
    REQUIRE(r.status != ProofResult::Status::Unknown);
    CHECK(r.proved() == valid);
  }
}

TEST_CASE("budget monotonicity") {
  std::mt19937 rng(31337);
  const std::vector<std::string> atoms = {"A", "B", "C"};
  Budget small;
  small.max_depth = 6;
  small.model_size_cap = 2;
  small.max_instantiations_per_quantifier = 1;
  small.term_depth = 1;
  for (int i = 0; i < 80; ++i) {
    std::vector<Formula> ant;
    const int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < n; ++k) ant.push_back(testutil::random_prop(rng, atoms, 2));
    const Formula succ = testutil::random_prop(rng, atoms, 2);
    const Sequent s{ant, succ};
    const ProofResult lo = prove(s, small);
    const ProofResult hi = prove(s, kDefault);
    if (lo.status == ProofResult::Status::Proved) CHECK(hi.status == ProofResult::Status::Proved);
    if (lo.status == ProofResult::Status::Disproved) CHECK(hi.status == ProofResult::Status::Disproved);
  }
}

TEST_CASE("consistent agrees with the truth tables and the congruence check") {
  std::mt19937 rng(555);
  const std::vector<std::string> atoms = {"A", "B", "C"};
  for (int i = 0; i < 80; ++i) {
    std::vector<Formula> gamma;
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int k = 0; k < n; ++k) gamma.push_back(testutil::random_prop(rng, atoms, 2));
    const Tri got = consistent(gamma, kDefault);
    REQUIRE(got != Tri::Unknown);
    CHECK((got == Tri::Yes) == testutil::tt_satisfiable(gamma));
  }
  CHECK(consistent({G("a = b"), G("b = c"), G("~(a = c)")}, kDefault) == Tri::No);
  CHECK(consistent({G("a = b"), G("b = c"), G("a = c")}, kDefault) == Tri::Yes);
}
