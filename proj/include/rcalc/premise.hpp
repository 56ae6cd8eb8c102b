#ifndef RCALC_PREMISE_HPP
#define RCALC_PREMISE_HPP

#include <string>
#include <vector>

#include "rcalc/proof.hpp"

namespace rcalc {

struct InvalidTreeError : SyntaxError {
  using SyntaxError::SyntaxError;
};
struct GoalMismatchError : SyntaxError {
  using SyntaxError::SyntaxError;
};

enum class Side { Antecedent, Succedent };

// A formula occurrence: (node id, side, index). Nodes are numbered pre-order
// from 1, children left to right; the succedent has index 0.
struct Occurrence {
  int node = 0;
  Side side = Side::Antecedent;
  int index = 0;

  auto operator<=>(const Occurrence&) const = default;
};

struct PremiseEdge {
  Occurrence from, to;

  auto operator<=>(const PremiseEdge&) const = default;
};

// The premise relation of a proof tree. Formula occurrences persist through
// rule applications (a context formula in a numerator is the same occurrence
// as in the denominator); persistence is kept as an equivalence over
// occurrences, and the stored base edges are exactly the dependency clauses:
// axiom-leaf matches, side formulas feeding principal formulas of right
// rules, and principal formulas of left rules feeding their side formulas
// which in turn feed the denominator's succedent. Reachability is the
// reflexive-transitive closure over persistence classes.
class PremiseMarking {
 public:
  const std::vector<PremiseEdge>& base_edges() const { return edges_; }
  // Does `from` reach `to` through the closed relation?
  bool premise_of(const Occurrence& from, const Occurrence& to) const;
  // Formulas at occurrences that reach the root succedent.
  std::vector<Formula> premises_of_goal() const;
  const Sequent& node_sequent(int node_id) const;
  int node_count() const { return static_cast<int>(sequents_.size()); }
  std::string dump() const;

 private:
  friend PremiseMarking premise_closure(const ProofNode& t);
  int occ_id(const Occurrence& o) const;
  const Formula& formula_at(const Occurrence& o) const;
  int find(int i) const;

  std::vector<Sequent> sequents_;       // by node id - 1
  std::vector<int> occ_offsets_;        // occurrence id of node's ant[0]
  mutable std::vector<int> uf_;         // persistence classes
  std::vector<PremiseEdge> edges_;      // base relation, sorted
  std::vector<std::vector<int>> succ_;  // closure adjacency per class
  std::vector<char> reaches_goal_;      // per class
};

// Computes the full marking. Requires check_proof_tree(t).
PremiseMarking premise_closure(const ProofNode& t);

// Laws of gamma that are premises of the goal in this tree. The tree must
// prove goal (sentence-equal to its root succedent) from a superset of gamma.
std::vector<Formula> necessary_premises(const ProofNode& t, const std::vector<Formula>& gamma,
                                        const Formula& goal);
bool is_necessary_premise(const Formula& p, const ProofNode& t, const std::vector<Formula>& gamma,
                          const Formula& goal);

}  // namespace rcalc

#endif
