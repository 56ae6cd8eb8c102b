#include <set>

#include "doctest.h"
#include "rcalc/premise.hpp"
#include "rcalc/prover.hpp"
#include "test_util.hpp"

using namespace rcalc;
using rcalc::testutil::F;
using rcalc::testutil::G;

namespace {

const Budget kDefault{};

ProofNode prove_tree(const std::vector<Formula>& ant, const Formula& succ) {
  const ProofResult r = prove(Sequent{ant, succ}, kDefault);
  REQUIRE(r.proved());
  return *r.tree;
}

bool contains_sentence(const std::vector<Formula>& set, const Formula& f) {
  for (const Formula& g : set)
    if (sentence_equal(f, g)) return true;
  return false;
}

}  // namespace

TEST_CASE("axiom marking: the left formula feeds the right") {
  const ProofNode t = prove_tree({F("A")}, F("A"));
  const PremiseMarking m = premise_closure(t);
  REQUIRE(m.base_edges().size() == 1);
  const PremiseEdge& e = m.base_edges()[0];
  CHECK(e.from == Occurrence{1, Side::Antecedent, 0});
  CHECK(e.to == Occurrence{1, Side::Succedent, 0});
  CHECK(m.premise_of(e.from, e.to));
}

TEST_CASE("conjunction-right marking: both conjuncts feed the conjunction") {
  const ProofNode t = prove_tree({F("A"), F("B")}, F("A & B"));
  REQUIRE(t.rule == ProofRule::AndR);
  const PremiseMarking m = premise_closure(t);
  // Side formulas A (node 2 succedent) and B (node 3 succedent) feed the
  // principal A & B at the root.
  CHECK(m.premise_of(Occurrence{2, Side::Succedent, 0}, Occurrence{1, Side::Succedent, 0}));
  CHECK(m.premise_of(Occurrence{3, Side::Succedent, 0}, Occurrence{1, Side::Succedent, 0}));
  const auto premises = necessary_premises(t, {F("A"), F("B")}, F("A & B"));
  CHECK(premises.size() == 2);
}

TEST_CASE("the existential example's marking") {
  // Nodes (pre-order): 1 exists-right, 2 forall-left, 3 imp-left,
  // 4 axiom (|- A), 5 axiom (|- B[t]).
  const std::vector<Formula> gamma = {F("C"), F("A"), F("forall x. (A -> B(x))")};
  const Formula goal = F("exists x. B(x)");
  const ProofNode t = prove_tree(gamma, goal);
  REQUIRE(tree_size(t) == 5);
  const PremiseMarking m = premise_closure(t);

  // The instance B[t] (node 2's succedent) is a premise of exists x. B(x).
  CHECK(m.premise_of(Occurrence{2, Side::Succedent, 0}, Occurrence{1, Side::Succedent, 0}));
  // The universal law (index 2 in the antecedent) feeds the instance
  // A -> B[t] it was specialized to (appended at index 3 in node 3).
  CHECK(m.premise_of(Occurrence{2, Side::Antecedent, 2}, Occurrence{3, Side::Antecedent, 3}));
  // The implication instance feeds both its side formulas and, through them,
  // the goal.
  CHECK(m.premise_of(Occurrence{3, Side::Antecedent, 3}, Occurrence{4, Side::Succedent, 0}));
  CHECK(m.premise_of(Occurrence{3, Side::Antecedent, 3}, Occurrence{1, Side::Succedent, 0}));
  CHECK(m.premise_of(Occurrence{4, Side::Antecedent, 1}, Occurrence{1, Side::Succedent, 0}));
  // C never reaches the goal.
  CHECK_FALSE(m.premise_of(Occurrence{1, Side::Antecedent, 0}, Occurrence{1, Side::Succedent, 0}));

  // The premise set of the goal, filtered to the laws.
  const auto premises = necessary_premises(t, gamma, goal);
  REQUIRE(premises.size() == 2);
  CHECK(contains_sentence(premises, F("A")));
  CHECK(contains_sentence(premises, F("forall x. (A -> B(x))")));
  CHECK_FALSE(contains_sentence(premises, F("C")));

  CHECK_FALSE(is_necessary_premise(F("C"), t, gamma, goal));
  CHECK(is_necessary_premise(F("A"), t, gamma, goal));
}

TEST_CASE("chain law: the middle implication is a necessary premise") {
  const std::vector<Formula> gamma = {F("A"), F("A -> B"), F("B -> C")};
  const ProofNode t = prove_tree(gamma, F("C"));
  const auto premises = necessary_premises(t, gamma, F("C"));
  CHECK(contains_sentence(premises, F("B -> C")));
  CHECK(contains_sentence(premises, F("A -> B")));
  CHECK(contains_sentence(premises, F("A")));
}

TEST_CASE("equality chains mark the used equations") {
  const std::vector<Formula> gamma = {G("f(x) = y"), G("f(y) = z")};
  const Formula goal = G("f(f(x)) = z");
  const ProofNode t = prove_tree(gamma, goal);
  CHECK(is_necessary_premise(G("f(y) = z"), t, gamma, goal));
  CHECK(is_necessary_premise(G("f(x) = y"), t, gamma, goal));
}

TEST_CASE("markings are deterministic") {
  const std::vector<Formula> gamma = {F("C"), F("A"), F("forall x. (A -> B(x))")};
  const ProofNode t1 = prove_tree(gamma, F("exists x. B(x)"));
  const ProofNode t2 = prove_tree(gamma, F("exists x. B(x)"));
  CHECK(premise_closure(t1).base_edges() == premise_closure(t2).base_edges());
  CHECK(premise_closure(t1).dump() == premise_closure(t2).dump());
}

TEST_CASE("closure contains the independent transitive closure of the dump") {
  const std::vector<Formula> gamma = {F("A"), F("A -> B"), F("B -> C"), F("E -> F")};
  const ProofNode t = prove_tree(gamma, F("C"));
  const PremiseMarking m = premise_closure(t);

  const auto& edges = m.base_edges();
  std::set<std::pair<int, int>> reach;
  std::vector<Occurrence> occs;
  auto idx = [&](const Occurrence& o) {
    for (std::size_t i = 0; i < occs.size(); ++i)
      if (occs[i] == o) return static_cast<int>(i);
    occs.push_back(o);
    return static_cast<int>(occs.size() - 1);
  };
  for (const PremiseEdge& e : edges) reach.emplace(idx(e.from), idx(e.to));
  bool changed = true;
  while (changed) {
    changed = false;
    const std::set<std::pair<int, int>> snapshot = reach;
    for (const auto& [a, b] : snapshot)
      for (const auto& [c, d] : snapshot)
        if (b == c && !reach.count({a, d})) {
          reach.emplace(a, d);
          changed = true;
        }
  }
  for (const auto& [a, b] : reach)
    CHECK(m.premise_of(occs[static_cast<std::size_t>(a)], occs[static_cast<std::size_t>(b)]));
}

TEST_CASE("premises are used, not spurious") {
  // Dropping everything except the necessary premises keeps the goal
  // provable (never disproved) on the worked examples.
  struct Case {
    std::vector<Formula> gamma;
    Formula goal;
  };
  const std::vector<Case> cases = {
      {{F("C"), F("A"), F("forall x. (A -> B(x))")}, F("exists x. B(x)")},
      {{F("A"), F("A -> B"), F("B -> C"), F("E -> F")}, F("C")},
      {{G("f(x) = y"), G("f(y) = z"), G("P")}, G("f(f(x)) = z")},
  };
  for (const Case& c : cases) {
    const ProofNode t = prove_tree(c.gamma, c.goal);
    const auto premises = necessary_premises(t, c.gamma, c.goal);
    const ProofResult again = prove(Sequent{premises, c.goal}, kDefault);
    CHECK(again.status != ProofResult::Status::Disproved);
    CHECK(again.proved());
  }
}

TEST_CASE("marking rejects invalid trees and mismatched goals") {
  const ProofNode t = prove_tree({F("A")}, F("A"));
  ProofNode broken = t;
  broken.principal = 3;
  CHECK_THROWS_AS(premise_closure(broken), InvalidTreeError);
  CHECK_THROWS_AS(necessary_premises(t, {F("A")}, F("B")), GoalMismatchError);
}

TEST_CASE("the marking dump names nodes, sides and formulas") {
  const ProofNode t = prove_tree({F("A"), F("B")}, F("A & B"));
  const std::string dump = premise_closure(t).dump();
  CHECK(dump.find("node#1") != std::string::npos);
  CHECK(dump.find("->") != std::string::npos);
  CHECK(dump.find("A & B") != std::string::npos);
}
