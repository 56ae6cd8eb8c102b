#ifndef RCALC_PROVER_HPP
#define RCALC_PROVER_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rcalc/proof.hpp"

namespace rcalc {

enum class Tri { Yes, No, Unknown };
const char* to_string(Tri t);

// Memo shared across prove calls made under one fixed budget. Proved entries
// are keyed by the exact sequent (the stored tree embeds its antecedent
// order); failure entries are keyed order-insensitively and only recorded for
// quantifier-free sequents, whose failures do not depend on instantiation
// counters. Thread-safe.
class ProofCache {
 public:
  std::optional<ProofNode> lookup_proved(const std::string& exact_key) const;
  void store_proved(const std::string& exact_key, const ProofNode& tree);
  // remaining-depth at which the sequent failed; INT_MAX = fails at any depth
  std::optional<int> lookup_failed(const std::string& canonical_key) const;
  void store_failed(const std::string& canonical_key, int depth_remaining);

 private:
  mutable std::mutex mu_;
  std::map<std::string, ProofNode> proved_;
  std::map<std::string, int> failed_;
};

// Bounded proof search. Proved results carry trees that pass
// check_proof_tree; disproved results carry a verified finite countermodel;
// anything else is Unknown with a note. Deterministic: fixed rule order,
// positions left to right, witness terms by (size, print).
ProofResult prove(const Sequent& s, const Budget& b);
ProofResult prove(const Sequent& s, const Budget& b, ProofCache& cache);

// Tri-valued consistency: No when the ground fragment refutes or a
// contradiction is proved within budget, Yes when a finite model turns up
// within the size cap, Unknown otherwise. `note` collects budget incidents.
Tri consistent(const std::vector<Formula>& gamma, const Budget& b);
Tri consistent(const std::vector<Formula>& gamma, const Budget& b, ProofCache& cache,
               std::string* note = nullptr);

// Ground literals over the term universe provable from gamma within budget.
std::vector<Formula> atomic_consequences(const std::vector<Formula>& gamma, const Budget& b);
std::vector<Formula> atomic_consequences(const std::vector<Formula>& gamma, const Budget& b,
                                         ProofCache& cache);

}  // namespace rcalc

#endif
