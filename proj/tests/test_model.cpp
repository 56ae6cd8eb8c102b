#include "doctest.h"
#include "rcalc/congruence.hpp"
#include "rcalc/model.hpp"
#include "rcalc/runtime.hpp"
#include "test_util.hpp"

using namespace rcalc;
using rcalc::testutil::F;
using rcalc::testutil::G;

TEST_CASE("evaluation basics") {
  FiniteModel m;
  m.size = 2;
  m.predicates["P"] = {1, 1};  // P true of every element

  CHECK(evaluate(m, F("forall x. P(x)")));
  CHECK(evaluate(m, F("exists x. P(x)")));
  m.predicates["P"] = {1, 0};
  CHECK_FALSE(evaluate(m, F("forall x. P(x)")));
  CHECK(evaluate(m, F("exists x. ~P(x)")));

  CHECK_THROWS_AS(evaluate(m, F("Q")), UninterpretedSymbol);
}

TEST_CASE("model satisfying a law set satisfies each law") {
  const std::vector<Formula> gamma = {F("A"), F("A -> B"), F("E -> F")};
  auto m = find_model(signature_of(gamma), gamma, {}, 3);
  REQUIRE(m.has_value());
  for (const Formula& f : gamma) CHECK(evaluate(*m, f));
}

TEST_CASE("a two-element model can falsify an implication") {
  // Truth-table oracle: A true, B false falsifies A -> B.
  REQUIRE_FALSE(testutil::tt_valid({F("A")}, F("B")));
  auto m = find_model(signature_of({F("A"), F("B")}), {F("A")}, {F("B")}, 2);
  REQUIRE(m.has_value());
  CHECK(evaluate(*m, F("A")));
  CHECK_FALSE(evaluate(*m, F("B")));
  CHECK_FALSE(evaluate(*m, F("A -> B")));
}

TEST_CASE("equality is identity on the domain") {
  const Signature sig = signature_of({G("a = b")});
  auto same = find_model(sig, {G("a = b")}, {}, 2);
  REQUIRE(same.has_value());
  CHECK(same->constants.at("a") == same->constants.at("b"));
  auto diff = find_model(sig, {G("~(a = b)")}, {}, 2);
  REQUIRE(diff.has_value());
  CHECK(diff->constants.at("a") != diff->constants.at("b"));
  CHECK_FALSE(find_model(sig, {G("~(a = a)")}, {}, 3).has_value());
}

TEST_CASE("model space enumeration covers function tables") {
  Signature sig;
  sig.constants.insert("a");
  sig.note_function("f", 1);
  ModelSpace space(sig, 2);
  REQUIRE(space.count().has_value());
  CHECK(*space.count() == 2ull * 4ull);  // constant choice x 2^2 table cells
  // Find a model where f is not the identity.
  auto m = find_model(sig, {G("~(f(a) = a)")}, {}, 2);
  REQUIRE(m.has_value());
}

TEST_CASE("congruence closure") {
  // Union-find style oracle case: transitivity.
  CHECK_FALSE(congruence_consistent({G("a = b"), G("b = c"), G("~(a = c)")}));
  CHECK(congruence_consistent({close_free_variables(F("x = x"))}));
  const std::vector<Formula> ex53 = {close_free_variables(F("f(x) = y")),
                                     close_free_variables(F("f(y) = z")),
                                     close_free_variables(F("~(f(f(x)) = z)"))};
  CHECK_FALSE(congruence_consistent(ex53));
  CHECK_THROWS_AS(congruence_consistent({F("f(x) = y")}), NonGroundError);

  // Congruence propagation through function symbols.
  CHECK_FALSE(congruence_consistent({G("a = b"), G("~(f(a) = f(b))")}));
  CHECK(congruence_consistent({G("a = b"), G("~(f(a) = f(c))")}));
}

TEST_CASE("entailment cores are minimal and sufficient") {
  const std::vector<Formula> eqs = {G("a = b"), G("c = d"), G("b = c")};
  GroundFragment frag = ground_fragment(eqs);
  CHECK(equalities_entail(frag.equalities, G("a = d")));
  const std::vector<int> core = entailment_core(frag.equalities, G("a = d"));
  CHECK(core == std::vector<int>{0, 1, 2});
  CHECK(entailment_core(frag.equalities, G("a = b")) == std::vector<int>{0});
  CHECK(entailment_core(frag.equalities, G("a = a")).empty());
}

TEST_CASE("serial and parallel model scans agree") {
  Signature sig;
  sig.constants = {"a", "b", "c"};
  sig.note_function("f", 1);
  sig.note_predicate("P", 1);
  const std::vector<Formula> require = {G("P(f(a))"), G("~(a = b)")};
  runtime::set_parallel(false);
  auto serial = find_model(sig, require, {}, 3);
  runtime::set_parallel(true);
  auto parallel = find_model(sig, require, {}, 3);
  runtime::set_parallel(false);
  REQUIRE(serial.has_value());
  REQUIRE(parallel.has_value());
  CHECK(serial->describe() == parallel->describe());
}
