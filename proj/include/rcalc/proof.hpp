#ifndef RCALC_PROOF_HPP
#define RCALC_PROOF_HPP

#include <optional>
#include <string>
#include <vector>

#include "rcalc/model.hpp"
#include "rcalc/syntax.hpp"

namespace rcalc {

// Single-succedent sequent: antecedent |- succedent.
struct Sequent {
  std::vector<Formula> antecedent;
  Formula succedent;

  bool operator==(const Sequent&) const = default;
};

std::string to_string(const Sequent& s);
// Order-insensitive key (used for loop checks and failure memos).
std::string canonical_key(const Sequent& s);
// Order-sensitive key (used for the proved-tree memo).
std::string exact_key(const Sequent& s);

// Rules of the calculus. Left rules decompose the antecedent, right rules the
// succedent. ImpL keeps its principal implication in the first numerator.
// NegL is the succedent-discarding rule (G |- A proves G, ~A |- C). Raa adds
// the negated succedent to the antecedent; it is what makes the calculus
// classically complete. EqId / EqRefute close sequents whose ground equality
// fragment entails the succedent / is itself inconsistent.
enum class ProofRule {
  Id,
  EqId,
  EqRefute,
  AndL,
  OrL,
  ImpL,
  NegL,
  NegLExpand,
  ExistsL,
  ForallL,
  AndR,
  OrR1,
  OrR2,
  ImpR,
  NegRExpand,
  ForallR,
  ExistsR,
  Raa
};

const char* rule_name(ProofRule r);
bool is_left_rule(ProofRule r);
bool is_right_rule(ProofRule r);

struct ProofNode {
  Sequent sequent;
  ProofRule rule = ProofRule::Id;
  int principal = -1;           // antecedent index for left rules / Id; -1 = succedent
  std::optional<Term> witness;  // ForallL, ExistsR
  std::string eigen;            // ForallR, ExistsL (fresh constant name)
  std::vector<int> used;        // EqId / EqRefute: antecedent indices consumed
  std::vector<ProofNode> children;
};

// The child sequents the rule schema demands for this node, or nullopt if the
// node's rule/principal/witness do not fit its sequent. Shared between the
// prover (to build children) and the checker (to validate them).
std::optional<std::vector<Sequent>> rule_children(const ProofNode& n);

// True iff every node instantiates its rule schema, leaves are axioms, and
// eigenvariable freshness holds. The diagnostic names the first bad node.
bool check_proof_tree(const ProofNode& root);
bool check_proof_tree(const ProofNode& root, std::string& diagnostic);

std::size_t tree_size(const ProofNode& root);

// Search budgets. All fields must stay positive.
struct Budget {
  int max_depth = 40;
  int max_instantiations_per_quantifier = 4;
  int term_depth = 2;
  int model_size_cap = 3;

  void validate() const;
};

struct ProofResult {
  enum class Status { Proved, Disproved, Unknown };
  Status status = Status::Unknown;
  std::optional<ProofNode> tree;         // Proved
  std::optional<FiniteModel> countermodel;  // Disproved
  std::string note;                      // Unknown: what ran out

  bool proved() const { return status == Status::Proved; }
};

}  // namespace rcalc

#endif
