#ifndef RCALC_ORACLE_HPP
#define RCALC_ORACLE_HPP

#include <string>
#include <vector>

#include "rcalc/engine.hpp"
#include "rcalc/model.hpp"

namespace rcalc {

struct SizeGuardError : SyntaxError {
  using SyntaxError::SyntaxError;
};
struct ModelDeltaError : SyntaxError {
  using SyntaxError::SyntaxError;
};

using LawSet = std::vector<Formula>;

// Setwise comparison under sentence equality.
bool law_set_equal(const LawSet& a, const LawSet& b);
bool law_set_subset(const LawSet& a, const LawSet& b);

// All subset-maximal Lambda of gamma with consistent(Lambda + delta) = yes,
// by brute-force enumeration in descending size (supersets of found maximal
// sets are pruned). Subsets whose consistency stays unknown are excluded and
// logged. Guarded to |gamma| <= 20. Consistency checks of one size level run
// in parallel under the OpenMP lane; merges are mask-ordered.
std::vector<LawSet> maximal_contractions(const LawSet& gamma, const RCondition& delta, const Budget& b,
                                         std::vector<std::string>* notes = nullptr);

struct RejectionModel {
  FiniteModel model;
  LawSet satisfied;  // laws of gamma true in the model
  bool ideal = false;
};

// Finite models of ~goal up to size_cap, each paired with the satisfied
// subset of gamma; deduplicated by subset, ideal = maximal among returned.
std::vector<RejectionModel> user_rejection_models(const LawSet& gamma, const Formula& goal, int size_cap);

struct ContractionReport {
  LawSet gamma;
  std::vector<Formula> delta;
  std::vector<LawSet> oracle_maximal;
  std::vector<LawSet> reached;
  std::vector<LawSet> matched;              // reached and maximal
  std::vector<LawSet> non_maximal_reached;  // reached, not maximal
  std::vector<LawSet> unreached_maximal;    // maximal, not reached
  std::vector<std::string> budget_notes;
  bool exploration_exhausted = true;
};

ContractionReport reachability_report(const LawSet& gamma, const RCondition& delta, const Budget& b,
                                      int limit);

// Evaluates gamma under the model (which must satisfy every rejected fact)
// and reports whether some reached termination equals the satisfied subset.
bool completeness_check(const LawSet& gamma, const RCondition& delta, const FiniteModel& m,
                        const Budget& b, int limit);

}  // namespace rcalc

#endif
