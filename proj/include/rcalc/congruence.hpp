#ifndef RCALC_CONGRUENCE_HPP
#define RCALC_CONGRUENCE_HPP

#include <map>
#include <string>
#include <vector>

#include "rcalc/syntax.hpp"

namespace rcalc {

struct NonGroundError : SyntaxError {
  using SyntaxError::SyntaxError;
};

// Union-find congruence closure over ground terms.
class CongruenceClosure {
 public:
  int intern(const Term& t);            // adds all subterms; t must be ground
  void merge(const Term& a, const Term& b);
  bool equal(const Term& a, const Term& b);  // closes first

 private:
  struct Node {
    std::string name;
    std::vector<int> kids;
  };
  int find(int i);
  void unite(int a, int b);
  void close();

  std::vector<Node> nodes_;
  std::map<std::pair<std::string, std::vector<int>>, int> index_;
  std::vector<int> parent_;
  bool dirty_ = false;
};

// The ground literal fragment of a formula sequence, with indices back into it.
struct GroundFragment {
  std::vector<std::pair<int, Formula>> equalities;     // s = t
  std::vector<std::pair<int, Formula>> disequalities;  // ~(s = t)
  std::vector<std::pair<int, Formula>> pos_atoms;      // P(...)
  std::vector<std::pair<int, Formula>> neg_atoms;      // ~P(...)
  bool has_equality() const { return !equalities.empty() || !disequalities.empty(); }
};

GroundFragment ground_fragment(const std::vector<Formula>& formulas);

// Inconsistency of the fragment under congruence closure of its equalities:
// a disequality between congruent terms, or an atom held both positively and
// negatively on argwise-congruent tuples.
bool fragment_inconsistent(const GroundFragment& frag);

// Indices (into the original sequence) of a greedily minimized inconsistent
// core; empty if the fragment is consistent.
std::vector<int> refutation_core(const std::vector<Formula>& formulas);

// Does the congruence closure of the given equalities force lhs = rhs?
bool equalities_entail(const std::vector<std::pair<int, Formula>>& equalities, const Formula& equality);
// Greedily minimized indices of equalities needed for the entailment.
std::vector<int> entailment_core(const std::vector<std::pair<int, Formula>>& equalities,
                                 const Formula& equality);

// True iff the congruence closure of the equalities refutes no disequality
// (and no atom pair). All literals must be ground; throws NonGroundError.
bool congruence_consistent(const std::vector<Formula>& literals);

}  // namespace rcalc

#endif
