#ifndef RCALC_ENGINE_HPP
#define RCALC_ENGINE_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcalc/premise.hpp"
#include "rcalc/proof.hpp"
#include "rcalc/prover.hpp"

namespace rcalc {

struct RConditionError : SyntaxError {
  using SyntaxError::SyntaxError;
};

// A finite consistent set of literals (atoms and negated atoms/equalities).
struct RCondition {
  std::vector<Formula> literals;

  // Validates literal shapes and internal consistency (no complementary pair,
  // congruence-consistent ground equality fragment). Duplicates collapse.
  static RCondition make(std::vector<Formula> lits);
};

// Delta overrides gamma. Gamma is an ordered, duplicate-free (under sentence
// equality) sequence of sentences.
struct Configuration {
  RCondition delta;
  std::vector<Formula> gamma;
};

std::string to_string(const Configuration& c);
// Order-insensitive identity of a configuration (structural rules collapse).
std::string config_key(const Configuration& c);

enum class RuleTag {
  ContractionL,
  ContractionR,
  ExchangeL,
  ExchangeR,
  RAxiom,
  RCut,
  RAndLeft,
  RAndRight,
  ROr,
  RImp,
  RForall,
  RExists,
  RNeg
};
const char* rule_tag_name(RuleTag t);

struct SubDerivation;

// One rule application at a gamma position, with enough recorded evidence to
// replay it: the cut carries its partition, lemma, target literal and both
// proof trees; quantifier rules carry the witness term / eigenvariable; the
// connective rules carry the sub-derivations that delete their numerator
// side formulas.
struct Transition {
  RuleTag rule = RuleTag::RAxiom;
  int position = -1;
  std::optional<Term> witness_term;  // RForall
  std::string eigen;                 // RExists
  struct CutWitness {
    std::vector<int> gamma1, gamma2;  // indices into the source gamma, position excluded
    Formula lemma;
    Formula target;  // the literal C whose negation sits in delta
    ProofNode first;   // Gamma1, A |- lemma
    ProofNode second;  // lemma, Gamma2 |- target
  };
  std::shared_ptr<const CutWitness> cut;
  std::vector<std::shared_ptr<const SubDerivation>> subs;
};

// Derivation of one numerator: a chain of expansions/deletions at position 0
// of `start`, ending with the side formula removed.
struct SubDerivation {
  Configuration start;
  std::vector<std::pair<Transition, Configuration>> steps;
};

struct DerivationTrace {
  Configuration start;
  std::vector<std::pair<Transition, Configuration>> steps;
};

// Normalizes (deduplicates) delta and gamma; emitted structural transitions
// record the collapses.
Configuration make_configuration(std::vector<Formula> delta_literals, std::vector<Formula> laws,
                                 std::vector<Transition>* structural = nullptr);

// Def-style validity of the R-condition against gamma: for each delta member
// A, is gamma |- ~A provable (with ~~A read as A)?
std::vector<Tri> validate_configuration(const Configuration& c, const Budget& b, ProofCache& cache);

using StepList = std::vector<std::pair<Transition, Configuration>>;

StepList step_axiom(const Configuration& c);
StepList step_cut(const Configuration& c, const Budget& b, ProofCache& cache, bool* saw_unknown);
StepList step_and(const Configuration& c, int position, const Budget& b);
StepList step_or(const Configuration& c, int position, const Budget& b);
StepList step_imp(const Configuration& c, int position, const Budget& b);
StepList step_forall(const Configuration& c, int position, const Budget& b);
StepList step_exists(const Configuration& c, int position, const Budget& b);
StepList step_neg(const Configuration& c, int position);

// Union of all rule emitters, ordered by (rule tag, position), deduplicated
// by (rule tag, position, resulting configuration).
StepList enumerate_steps(const Configuration& c, const Budget& b, ProofCache& cache,
                         bool* saw_unknown = nullptr);

Tri is_termination(const Configuration& c, const Budget& b, ProofCache& cache);

struct Termination {
  Configuration config;
  DerivationTrace trace;
  bool conclusive = true;  // no budget incident while deciding emptiness
};

struct ExplorationResult {
  std::vector<Termination> terminations;
  bool exhausted = true;  // frontier fully explored within the limit
  int explored = 0;       // distinct configurations expanded
  std::vector<std::string> notes;
};

// Breadth-first closure of enumerate_steps up to `limit` distinct canonical
// configurations, returning every termination with one witnessing trace.
// Frontier levels may be expanded in parallel; merges are ordered, so the
// result is scheduling-independent.
ExplorationResult explore_terminations(const Configuration& c, const Budget& b, int limit);

// Replay: apply the transition structurally; verify re-checks the recorded
// witnesses (proof trees, premise claims, sub-derivations) first.
std::optional<Configuration> apply_transition(const Configuration& c, const Transition& t);
bool verify_transition(const Configuration& c, const Transition& t, const Budget& b, std::string* why);
bool replay_trace(const DerivationTrace& trace, const Budget& b, std::string* why = nullptr);

}  // namespace rcalc

#endif
