// Acceptance suite: every criterion prints one PASS/FAIL line with its
// runtime; the process exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rcalc/congruence.hpp"
#include "rcalc/oracle.hpp"
#include "rcalc/runtime.hpp"
#include "rcalc/serialize.hpp"
#include "rcalc/specfile.hpp"
#include "test_util.hpp"

using namespace rcalc;
using rcalc::testutil::F;
using rcalc::testutil::G;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok, double ms, double limit_ms,
            const std::string& detail = "") {
  const bool in_time = ms <= limit_ms;
  if (!ok || !in_time) ++failures;
  std::printf("%s criterion %2d: %s (%.0f ms%s)%s%s\n", ok && in_time ? "PASS" : "FAIL", number,
              what.c_str(), ms, in_time ? "" : ", over budget", detail.empty() ? "" : " -- ",
              detail.c_str());
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string data(const std::string& name) { return std::string(RCALC_TEST_DATA_DIR) + "/" + name; }

bool contains_set(const std::vector<LawSet>& sets, const LawSet& s) {
  for (const LawSet& t : sets)
    if (law_set_equal(t, s)) return true;
  return false;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(RCALC_BIN) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  pclose(p);
  return out;
}

// --- criterion 1: the chain example yields exactly its three revisions ----

void criterion_1() {
  const auto t0 = Clock::now();
  const SpecFile spec = load_specfile(data("chain.rspec"));
  const Configuration start = make_configuration(spec.rejection_formulas(), spec.law_formulas());
  const ExplorationResult res = explore_terminations(start, spec.budget, spec.limit);
  bool ok = res.exhausted && res.terminations.size() == 3;
  const std::vector<LawSet> expected = {
      {F("A"), F("A -> B"), F("E -> F")},
      {F("A"), F("B -> C"), F("E -> F")},
      {F("A -> B"), F("B -> C"), F("E -> F")},
  };
  std::string detail;
  for (const LawSet& want : expected) {
    bool found = false;
    for (const Termination& t : res.terminations)
      if (law_set_equal(t.config.gamma, want)) found = true;
    ok = ok && found;
  }
  for (const Termination& t : res.terminations) {
    bool has_cut = false;
    for (const auto& [tr, cfg] : t.trace.steps)
      if (tr.rule == RuleTag::RCut) has_cut = true;
    std::string why;
    if (!replay_trace(t.trace, spec.budget, &why)) {
      ok = false;
      detail = why;
    }
    ok = ok && has_cut;
  }
  report(1, "chain revision yields exactly the three terminations, cut traces replay", ok,
         ms_since(t0), 5000, detail);
}

// --- criterion 2: necessary premises of the existential goal --------------

void criterion_2() {
  const auto t0 = Clock::now();
  const SpecFile spec = load_specfile(data("exists_goal.rspec"));
  const Formula goal = spec.parse_goal("exists x. B(x)");
  ProofCache cache;
  const ProofResult r = prove(Sequent{spec.law_formulas(), goal}, spec.budget, cache);
  bool ok = r.proved();
  if (ok) {
    const auto premises = necessary_premises(*r.tree, spec.law_formulas(), goal);
    ok = premises.size() == 2;
    bool has_a = false, has_all = false, has_c = false;
    for (const Formula& p : premises) {
      if (sentence_equal(p, F("A"))) has_a = true;
      if (sentence_equal(p, F("forall x. (A -> B(x))"))) has_all = true;
      if (sentence_equal(p, F("C"))) has_c = true;
    }
    ok = ok && has_a && has_all && !has_c;
  }
  report(2, "necessary premises of the existential goal are the law and its driver", ok,
         ms_since(t0), 1000);
}

// --- criterion 3: a universal law falls to a rejected instance ------------

void criterion_3() {
  const auto t0 = Clock::now();
  const SpecFile spec = load_specfile(data("forall_elim.rspec"));
  const Configuration start = make_configuration(spec.rejection_formulas(), spec.law_formulas());
  ProofCache cache;
  bool ok = false;
  // The universal law is deleted by the quantifier rule whose numerator is
  // one axiom step, with the witness drawn from the rejected instance.
  for (const auto& [t, cfg] : enumerate_steps(start, spec.budget, cache)) {
    if (t.rule != RuleTag::RForall) continue;
    if (!t.witness_term || !(*t.witness_term == cst("c"))) continue;
    if (t.subs.size() != 1 || t.subs[0]->steps.size() != 1) continue;
    if (t.subs[0]->steps[0].first.rule != RuleTag::RAxiom) continue;
    if (!law_set_equal(cfg.gamma, {F("B")})) continue;
    ok = true;
  }
  const ExplorationResult res = explore_terminations(start, spec.budget, spec.limit);
  bool reached = false;
  for (const Termination& t : res.terminations)
    if (law_set_equal(t.config.gamma, {F("B")})) reached = true;
  report(3, "universal law eliminated through its rejected instance, witness recorded",
         ok && reached, ms_since(t0), 1000);
}

// --- criterion 4: the inconsistent equality chain --------------------------

void criterion_4() {
  const auto t0 = Clock::now();
  const SpecFile spec = load_specfile(data("equality_chain.rspec"));
  const Configuration start = make_configuration(spec.rejection_formulas(), spec.law_formulas());
  const ExplorationResult res = explore_terminations(start, spec.budget, spec.limit);
  const LawSet want = {G("f(x) = y"), G("~(f(f(x)) = z)")};
  bool reached = false;
  for (const Termination& t : res.terminations)
    if (law_set_equal(t.config.gamma, want)) reached = true;
  const auto maximal = maximal_contractions(spec.law_formulas(), start.delta, spec.budget);
  const bool certified = contains_set(maximal, want);
  report(4, "equality chain reaches the maximal subset and the oracle certifies it",
         reached && certified, ms_since(t0), 5000);
}

// --- criterion 5: the diamond's non-maximal and maximal terminations ------

void criterion_5() {
  const auto t0 = Clock::now();
  const SpecFile spec = load_specfile(data("diamond.rspec"));
  const RCondition delta = RCondition::make(spec.rejection_formulas());
  const ContractionReport rep =
      reachability_report(spec.law_formulas(), delta, spec.budget, spec.limit);
  const LawSet non_maximal = {F("B -> C"), F("A -> E"), F("E -> C")};
  const LawSet maximal = {F("A -> B"), F("B -> C"), F("A -> E"), F("E -> C")};
  const bool ok = contains_set(rep.non_maximal_reached, non_maximal) &&
                  contains_set(rep.matched, maximal) && contains_set(rep.oracle_maximal, maximal) &&
                  !contains_set(rep.oracle_maximal, non_maximal);
  report(5, "diamond reaches both the overshoot and the maximal contraction, classified", ok,
         ms_since(t0), 5000);
}

// --- criterion 6: randomized reachability ----------------------------------

void criterion_6() {
  const auto t0 = Clock::now();
  const std::vector<std::string> atoms = {"A", "B", "C", "D"};
  const Budget budget{};
  bool ok = true;
  std::vector<std::pair<std::vector<Formula>, Formula>> cases;
  std::mt19937 rng(60601);
  while (cases.size() < 100) {
    std::vector<Formula> gamma;
    const int n = std::uniform_int_distribution<int>(2, 5)(rng);
    for (int k = 0; k < n; ++k) {
      Formula f = testutil::random_prop(rng, atoms, 2);
      bool dup = false;
      for (const Formula& g : gamma)
        if (sentence_equal(f, g)) dup = true;
      if (!dup) gamma.push_back(f);
    }
    Formula rejected;
    bool found = false;
    for (const std::string& a : atoms) {
      if (testutil::tt_valid(gamma, atom(a))) {
        rejected = neg(atom(a));
        found = true;
        break;
      }
      if (testutil::tt_valid(gamma, neg(atom(a)))) {
        rejected = atom(a);
        found = true;
        break;
      }
    }
    if (!found) continue;
    cases.emplace_back(std::move(gamma), std::move(rejected));
  }
  std::vector<char> results(cases.size(), 1);
  std::vector<char> counted(cases.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long i = 0; i < static_cast<long long>(cases.size()); ++i) {
    const auto& [gamma, rejected] = cases[static_cast<std::size_t>(i)];
    const ContractionReport rep =
        reachability_report(gamma, RCondition::make({rejected}), budget, 4000);
    if (rep.exploration_exhausted && rep.budget_notes.empty()) {
      counted[static_cast<std::size_t>(i)] = 1;
      if (!rep.unreached_maximal.empty()) results[static_cast<std::size_t>(i)] = 0;
    }
  }
  int checked = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (counted[i]) {
      ++checked;
      if (!results[i]) ok = false;
    }
  }
  std::ostringstream detail;
  detail << cases.size() << " instances, " << checked << " fully explored, all maximal reached";
  report(6, "randomized reachability: every maximal contraction is reached", ok && checked >= 90,
         ms_since(t0), 120000, detail.str());
}

// --- criterion 7: compatible configurations terminate ----------------------

void criterion_7() {
  const auto t0 = Clock::now();
  const std::vector<std::string> atoms = {"A", "B", "C", "D"};
  const Budget budget{};
  std::mt19937 rng(70701);
  std::vector<std::pair<std::vector<Formula>, Formula>> cases;
  while (cases.size() < 100) {
    std::vector<Formula> gamma;
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    // Negations at the literal level only: an expandable negation is never
    // part of a terminated configuration.
    for (int k = 0; k < n; ++k) gamma.push_back(testutil::random_prop(rng, atoms, 2, true));
    Formula lit = testutil::random_prop(rng, atoms, 0, true);
    std::vector<Formula> all = gamma;
    all.push_back(lit);
    if (!testutil::tt_satisfiable(all)) continue;
    cases.emplace_back(std::move(gamma), std::move(lit));
  }
  std::vector<char> results(cases.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long i = 0; i < static_cast<long long>(cases.size()); ++i) {
    const auto& [gamma, lit] = cases[static_cast<std::size_t>(i)];
    ProofCache cache;
    const Configuration c = make_configuration({lit}, gamma);
    results[static_cast<std::size_t>(i)] = is_termination(c, budget, cache) == Tri::Yes ? 1 : 0;
  }
  bool ok = true;
  for (char r : results)
    if (!r) ok = false;
  report(7, "compatible rejected facts leave the configuration terminated", ok, ms_since(t0),
         60000);
}

// --- criterion 8: rule soundness --------------------------------------------

void criterion_8() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  // Axiom and connective deletions satisfy delta |- ~L on random
  // propositional instances.
  std::mt19937 rng(80801);
  const std::vector<std::string> atoms = {"A", "B", "C"};
  const Budget budget{};
  ProofCache cache;
  int deletions = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> delta_lits;
    const int nd = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int k = 0; k < nd; ++k) delta_lits.push_back(testutil::random_prop(rng, atoms, 0));
    std::vector<Formula> gamma;
    const int ng = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < ng; ++k) gamma.push_back(testutil::random_prop(rng, atoms, 2));
    Configuration c;
    try {
      c = make_configuration(delta_lits, gamma);
    } catch (const RConditionError&) {
      continue;
    }
    for (const auto& [t, result] : enumerate_steps(c, budget, cache)) {
      if (t.rule == RuleTag::RCut || t.rule == RuleTag::RNeg) continue;
      const Formula deleted = c.gamma[static_cast<std::size_t>(t.position)];
      ++deletions;
      if (!testutil::tt_valid(c.delta.literals, neg(deleted))) {
        ok = false;
        detail = "unsound deletion of " + to_string(deleted);
      }
    }
  }
  if (deletions < 50) {
    ok = false;
    detail = "too few deletions exercised";
  }
  // Ground equality instance: the axiom deletion against reflexivity.
  {
    const Configuration c = make_configuration({G("x = x")}, {G("~(x = x)"), G("f(x) = y")});
    bool found = false;
    for (const auto& [t, result] : step_axiom(c)) {
      found = true;
      std::vector<Formula> delta_plus = c.delta.literals;
      delta_plus.push_back(c.gamma[static_cast<std::size_t>(t.position)]);
      if (congruence_consistent(delta_plus)) ok = false;  // delta must refute the deleted literal
    }
    if (!found) ok = false;
  }
  // The negation-expansion table preserves meaning on every model up to
  // size 3.
  const std::vector<Formula> rows = {
      G("~(P(c) & Q(c))"),       G("~(P(c) | Q(c))"),      G("~~P(c)"),
      G("~(P(c) -> Q(c))"),      G("~(forall x. P(x))"),   G("~(exists x. P(x))"),
  };
  for (const Formula& f : rows) {
    const Formula g = neg_expand(f);
    Signature sig = signature_of(f);
    sig.merge(signature_of(g));
    for (int size = 1; size <= 3; ++size) {
      ModelSpace space(sig, size);
      if (!space.count()) {
        ok = false;
        continue;
      }
      for (std::uint64_t i = 0; i < *space.count(); ++i) {
        const FiniteModel m = space.decode(i);
        if (evaluate(m, f) != evaluate(m, g)) {
          ok = false;
          detail = "expansion changed meaning of " + to_string(f);
        }
      }
    }
  }
  report(8, "axiom/connective deletions sound against delta; expansion table semantics", ok,
         ms_since(t0), 120000, detail);
}

// --- criterion 9: prover validity -------------------------------------------

void criterion_9() {
  const auto t0 = Clock::now();
  std::mt19937 rng(90901);
  const std::vector<std::string> atoms = {"A", "B", "C", "D", "E", "G"};
  const Budget budget{};
  bool ok = true;
  std::string detail;
  int proved = 0, disproved = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<Formula> ant;
    const int n = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int k = 0; k < n; ++k) ant.push_back(testutil::random_prop(rng, atoms, 2));
    const Formula succ = testutil::random_prop(rng, atoms, 2);
    const bool valid = testutil::tt_valid(ant, succ);
    const ProofResult r = prove(Sequent{ant, succ}, budget);
    if (r.status == ProofResult::Status::Unknown) {
      ok = false;
      detail = "unknown on " + to_string(Sequent{ant, succ});
      continue;
    }
    if (r.proved() != valid) {
      ok = false;
      detail = "disagreement on " + to_string(Sequent{ant, succ});
    }
    if (r.proved()) {
      ++proved;
      std::string diag;
      if (!check_proof_tree(*r.tree, diag)) {
        ok = false;
        detail = diag;
      }
    } else {
      ++disproved;
    }
  }
  std::ostringstream stats;
  stats << proved << " proved, " << disproved << " disproved, 0 disagreements";
  report(9, "prover matches the truth tables; every tree checks", ok && proved > 50, ms_since(t0),
         120000, stats.str());
}

// --- criterion 10: determinism ----------------------------------------------

void criterion_10() {
  const auto t0 = Clock::now();
  const std::string revise_cmd = "--trace --check revise " + data("chain.rspec");
  const std::string a = run_cli(revise_cmd);
  const std::string b = run_cli(revise_cmd);
  const std::string c = run_cli(revise_cmd);
  bool ok = !a.empty() && a == b && b == c;

  const std::string script_path = "/tmp/rcalc_acceptance_script.txt";
  {
    std::ofstream f(script_path);
    f << "show\nconsequences\nrevisions\nchoose 1\nshow\nsave /tmp/rcalc_acceptance_saved.rspec\n"
         "quit\n";
  }
  const std::string repl_cmd = "repl " + data("chain.rspec") + " < " + script_path;
  const std::string r1 = run_cli(repl_cmd);
  const std::string r2 = run_cli(repl_cmd);
  const std::string r3 = run_cli(repl_cmd);
  ok = ok && !r1.empty() && r1 == r2 && r2 == r3;
  report(10, "revision traces and scripted sessions are byte-identical across runs", ok,
         ms_since(t0), 60000);
}

}  // namespace

int main() {
  runtime::set_parallel(true);
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
