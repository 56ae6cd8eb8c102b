#include "rcalc/prover.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <map>
#include <set>

#include "rcalc/congruence.hpp"

namespace rcalc {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

std::optional<ProofNode> ProofCache::lookup_proved(const std::string& key) const {
  std::lock_guard lock(mu_);
  auto it = proved_.find(key);
  if (it == proved_.end()) return std::nullopt;
  return it->second;
}
void ProofCache::store_proved(const std::string& key, const ProofNode& tree) {
  std::lock_guard lock(mu_);
  proved_.emplace(key, tree);
}
std::optional<int> ProofCache::lookup_failed(const std::string& key) const {
  std::lock_guard lock(mu_);
  auto it = failed_.find(key);
  if (it == failed_.end()) return std::nullopt;
  return it->second;
}
void ProofCache::store_failed(const std::string& key, int depth_remaining) {
  std::lock_guard lock(mu_);
  auto [it, inserted] = failed_.emplace(key, depth_remaining);
  if (!inserted && it->second < depth_remaining) it->second = depth_remaining;
}

namespace {

bool has_quantifier(const Formula& f) {
  if (f.kind == Formula::Kind::Universal || f.kind == Formula::Kind::Existential) return true;
  for (const Formula& s : f.sub)
    if (has_quantifier(s)) return true;
  return false;
}
bool has_quantifier(const Sequent& s) {
  if (has_quantifier(s.succedent)) return true;
  for (const Formula& f : s.antecedent)
    if (has_quantifier(f)) return true;
  return false;
}

bool sequent_is_closed(const Sequent& s) {
  if (!is_sentence(s.succedent)) return false;
  for (const Formula& f : s.antecedent)
    if (!is_sentence(f)) return false;
  return true;
}

// Decision procedure for quantifier-free branch sets (propositional skeleton
// plus ground equality literals): closes by complementary literals or by the
// congruence check, decomposes everything else. No backtracking: the case
// splits are semantically invertible. Memoized on the deduplicated branch.
struct RefuteOracle {
  std::map<std::string, bool> memo;

  static std::vector<Formula> dedup(const std::vector<Formula>& fs) {
    std::vector<Formula> out;
    std::set<std::string> seen;
    for (const Formula& f : fs)
      if (seen.insert(alpha_key(f)).second) out.push_back(f);
    return out;
  }

  static std::string key_of(const std::vector<Formula>& fs) {
    std::set<std::string> keys;
    for (const Formula& f : fs) keys.insert(alpha_key(f));
    std::string key;
    for (const std::string& k : keys) key += k + ";";
    return key;
  }

  bool unsat(const std::vector<Formula>& input) {
    const std::vector<Formula> fs = dedup(input);
    const std::string key = key_of(fs);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool result = false;
    // Complementary literals close the branch.
    for (const Formula& f : fs) {
      if (f.kind != Formula::Kind::Negation || !is_literal(f)) continue;
      for (const Formula& g : fs)
        if (alpha_equal(g, f.sub[0])) {
          result = true;
          break;
        }
      if (result) break;
    }
    if (!result) {
      GroundFragment frag = ground_fragment(fs);
      if (frag.has_equality() && fragment_inconsistent(frag)) result = true;
    }
    if (!result) {
      for (std::size_t i = 0; i < fs.size(); ++i) {
        const Formula& f = fs[i];
        auto with = [&](std::vector<Formula> parts) {
          std::vector<Formula> next;
          for (std::size_t j = 0; j < fs.size(); ++j)
            if (j != i) next.push_back(fs[j]);
          for (Formula& p : parts) next.push_back(std::move(p));
          return next;
        };
        if (f.kind == Formula::Kind::Conjunction) {
          result = unsat(with({f.sub[0], f.sub[1]}));
          break;
        }
        if (neg_expand_applicable(f)) {
          result = unsat(with({neg_expand(f)}));
          break;
        }
        if (f.kind == Formula::Kind::Disjunction) {
          result = unsat(with({f.sub[0]})) && unsat(with({f.sub[1]}));
          break;
        }
        if (f.kind == Formula::Kind::Implication) {
          result = unsat(with({neg(f.sub[0])})) && unsat(with({f.sub[1]}));
          break;
        }
      }
    }
    memo.emplace(key, result);
    return result;
  }

  // Greedily minimized unsatisfiable subset, as alpha keys; nullopt when the
  // branch is satisfiable. Drops from the end, so earlier formulas (already
  // decomposed material) are preferred over late additions like the negated
  // succedent.
  std::optional<std::set<std::string>> core(const std::vector<Formula>& input) {
    std::vector<Formula> pool = dedup(input);
    if (!unsat(pool)) return std::nullopt;
    for (std::size_t i = pool.size(); i-- > 0;) {
      std::vector<Formula> without = pool;
      without.erase(without.begin() + static_cast<long>(i));
      if (unsat(without)) pool = std::move(without);
    }
    std::set<std::string> keys;
    for (const Formula& f : pool) keys.insert(alpha_key(f));
    return keys;
  }
};

// Depth-first proof search with a fixed rule order. Loop-pruned branches are
// remembered with the level of the ancestor they collided with: a failure is
// only memoized globally when every prune in its subtree pointed at the node
// itself or deeper (otherwise the failure is an artifact of the outer path).
struct Search {
  const Budget& budget;
  ProofCache& cache;
  std::map<std::string, int> path_level;  // canonical key -> level on current branch
  int level = 0;
  bool budget_hit = false;         // any depth / instantiation cap fired
  bool quantifier_choice = false;  // a witness pool was enumerated somewhere
  int min_prune_level = INT_MAX;   // shallowest ancestor a prune pointed at
  int eigen_counter = 0;
  // Implications decomposed on the current branch. ImpL keeps its principal
  // in the first numerator, so without this the same implication could be
  // split again and again; one split per branch is all completeness needs.
  // raa is likewise held to once per succedent per branch: re-assuming a
  // negation whose content is already on the branch only re-derives it with
  // fresh eigenvariables, which the loop check cannot see. Results computed
  // while either guard actually restricted the search are path-dependent and
  // must not be memoized as failures.
  std::map<std::string, int> imp_used;
  std::map<std::string, int> raa_used;
  bool imp_context = false;
  RefuteOracle refuter;

  std::string fresh_eigen(const Sequent& s) {
    for (;; ++eigen_counter) {
      std::string name = "v" + std::to_string(eigen_counter);
      Signature sig = signature_of(s.antecedent);
      sig.merge(signature_of(s.succedent));
      if (!sig.constants.count(name) && !sig.variables.count(name) && !sig.functions.count(name) &&
          !sig.predicates.count(name))
        return name;
    }
  }

  std::optional<ProofNode> close(ProofNode cand, int depth, std::map<std::string, int>& inst) {
    auto kids = rule_children(cand);
    if (!kids) return std::nullopt;
    for (const Sequent& child : *kids) {
      auto sub = search(child, depth - 1, inst);
      if (!sub) return std::nullopt;
      cand.children.push_back(std::move(*sub));
    }
    return cand;
  }

  std::optional<ProofNode> search(const Sequent& s, int depth, std::map<std::string, int>& inst) {
    const auto& ant = s.antecedent;
    const Formula& succ = s.succedent;

    // Leaves close regardless of remaining depth.
    for (std::size_t i = 0; i < ant.size(); ++i)
      if (alpha_equal(ant[i], succ))
        return ProofNode{s, ProofRule::Id, static_cast<int>(i), {}, "", {}, {}};

    if (succ.kind == Formula::Kind::Equality && is_ground(succ)) {
      GroundFragment frag = ground_fragment(ant);
      if (equalities_entail(frag.equalities, succ)) {
        ProofNode n{s, ProofRule::EqId, -1, {}, "", {}, {}};
        std::vector<int> core = entailment_core(frag.equalities, succ);
        // entailment_core returns positions in `equalities`; map to antecedent.
        for (int k : core) n.used.push_back(k);
        return n;
      }
    }
    {
      GroundFragment frag = ground_fragment(ant);
      if (frag.has_equality() && fragment_inconsistent(frag)) {
        ProofNode n{s, ProofRule::EqRefute, -1, {}, "", {}, {}};
        n.used = refutation_core(ant);
        return n;
      }
    }

    const std::string ckey = canonical_key(s);
    if (auto it = path_level.find(ckey); it != path_level.end()) {
      min_prune_level = std::min(min_prune_level, it->second);
      return std::nullopt;
    }
    if (auto failed = cache.lookup_failed(ckey); failed && depth <= *failed) return std::nullopt;
    const std::string ekey = exact_key(s);
    if (auto hit = cache.lookup_proved(ekey)) return hit;

    if (depth <= 0) {
      budget_hit = true;
      return std::nullopt;
    }

    const int my_level = level++;
    path_level.emplace(ckey, my_level);
    const bool outer_budget = budget_hit;
    const int outer_prune = min_prune_level;
    const bool outer_imp = imp_context;
    budget_hit = false;
    min_prune_level = INT_MAX;
    imp_context = false;

    auto result = expand(s, depth, inst);

    const bool budget_below = budget_hit;
    const int prune_below = min_prune_level;
    const bool imp_below = imp_context;
    budget_hit = outer_budget || budget_below;
    min_prune_level = std::min(outer_prune, prune_below);
    imp_context = outer_imp || imp_below;
    path_level.erase(ckey);
    --level;

    if (result) {
      cache.store_proved(ekey, *result);
    } else if (prune_below >= my_level && !imp_below) {
      // No prune pointed above this node and no spent implication restricted
      // the subtree, so the failure is independent of the outer path.
      // Without a budget incident below it is also independent of depth and
      // of the instantiation counters (the caps never fired), hence
      // absolute. Depth-bounded failures are memoized only for
      // quantifier-free sequents, where depth is the only budget.
      if (!budget_below)
        cache.store_failed(ckey, INT_MAX);
      else if (!has_quantifier(s))
        cache.store_failed(ckey, depth);
    }
    return result;
  }

  std::optional<ProofNode> expand(const Sequent& s, int depth, std::map<std::string, int>& inst) {
    const auto& ant = s.antecedent;
    const Formula& succ = s.succedent;
    auto node = [&](ProofRule r, int principal) { return ProofNode{s, r, principal, {}, "", {}, {}}; };

    // Invertible antecedent decompositions.
    for (std::size_t i = 0; i < ant.size(); ++i)
      if (ant[i].kind == Formula::Kind::Conjunction)
        if (auto n = close(node(ProofRule::AndL, static_cast<int>(i)), depth, inst)) return n;
    for (std::size_t i = 0; i < ant.size(); ++i)
      if (neg_expand_applicable(ant[i]))
        if (auto n = close(node(ProofRule::NegLExpand, static_cast<int>(i)), depth, inst)) return n;
    for (std::size_t i = 0; i < ant.size(); ++i)
      if (ant[i].kind == Formula::Kind::Existential) {
        ProofNode n = node(ProofRule::ExistsL, static_cast<int>(i));
        n.eigen = fresh_eigen(s);
        if (auto r = close(std::move(n), depth, inst)) return r;
      }
    for (std::size_t i = 0; i < ant.size(); ++i)
      if (ant[i].kind == Formula::Kind::Disjunction)
        if (auto n = close(node(ProofRule::OrL, static_cast<int>(i)), depth, inst)) return n;

    // Invertible succedent rules.
    if (succ.kind == Formula::Kind::Implication)
      if (auto n = close(node(ProofRule::ImpR, -1), depth, inst)) return n;
    if (succ.kind == Formula::Kind::Universal) {
      ProofNode n = node(ProofRule::ForallR, -1);
      n.eigen = fresh_eigen(s);
      if (auto r = close(std::move(n), depth, inst)) return r;
    }
    if (succ.kind == Formula::Kind::Conjunction)
      if (auto n = close(node(ProofRule::AndR, -1), depth, inst)) return n;
    if (neg_expand_applicable(succ))
      if (auto n = close(node(ProofRule::NegRExpand, -1), depth, inst)) return n;

    // Branching / committing rules.
    for (std::size_t i = 0; i < ant.size(); ++i) {
      if (ant[i].kind != Formula::Kind::Implication) continue;
      const std::string key = alpha_key(ant[i]);
      if (imp_used[key] > 0) {
        imp_context = true;
        continue;
      }
      ++imp_used[key];
      auto n = close(node(ProofRule::ImpL, static_cast<int>(i)), depth, inst);
      --imp_used[key];
      if (n) return n;
    }
    // NegL discards the succedent, so only use it to close a saturated
    // branch: the numerator must be a leaf.
    for (std::size_t i = 0; i < ant.size(); ++i) {
      if (ant[i].kind != Formula::Kind::Negation) continue;
      if (ant[i].sub[0].kind != Formula::Kind::Atom && ant[i].sub[0].kind != Formula::Kind::Equality)
        continue;
      ProofNode cand = node(ProofRule::NegL, static_cast<int>(i));
      auto kids = rule_children(cand);
      if (!kids) continue;
      if (!closes_immediately((*kids)[0])) continue;
      if (auto n = close(std::move(cand), depth, inst)) return n;
    }
    if (succ.kind == Formula::Kind::Disjunction) {
      if (auto n = close(node(ProofRule::OrR1, -1), depth, inst)) return n;
      if (auto n = close(node(ProofRule::OrR2, -1), depth, inst)) return n;
    }

    // Witness rules: candidate terms from the sequent's own universe,
    // smallest first, bounded per quantifier occurrence.
    if (succ.kind == Formula::Kind::Existential) {
      quantifier_choice = true;
      const std::string key = "R:" + alpha_key(succ);
      if (inst[key] >= budget.max_instantiations_per_quantifier) {
        budget_hit = true;
      } else {
        ++inst[key];
        for (const Term& t : universe_of(s)) {
          ProofNode n = node(ProofRule::ExistsR, -1);
          n.witness = t;
          if (auto r = close(std::move(n), depth, inst)) {
            --inst[key];
            return r;
          }
        }
        --inst[key];
      }
    }
    for (std::size_t i = 0; i < ant.size(); ++i) {
      if (ant[i].kind != Formula::Kind::Universal) continue;
      quantifier_choice = true;
      const std::string key = "L:" + alpha_key(ant[i]);
      if (inst[key] >= budget.max_instantiations_per_quantifier) {
        budget_hit = true;
        continue;
      }
      ++inst[key];
      for (const Term& t : universe_of(s)) {
        const Formula instance = substitute(ant[i].sub[0], ant[i].name, t);
        bool present = false;
        for (const Formula& f : ant)
          if (alpha_equal(f, instance)) {
            present = true;
            break;
          }
        if (present) continue;
        ProofNode n = node(ProofRule::ForallL, static_cast<int>(i));
        n.witness = t;
        if (auto r = close(std::move(n), depth, inst)) {
          --inst[key];
          return r;
        }
      }
      --inst[key];
    }

    // Classical fallback. Quantifier-free sequents are decided outright by
    // the refutation builder; only quantified ones fall back to blind raa.
    if (!has_quantifier(s)) return refute_build(s, depth);
    {
      const std::string key = alpha_key(succ);
      if (raa_used[key] > 0) {
        imp_context = true;
      } else {
        ++raa_used[key];
        auto n = close(node(ProofRule::Raa, -1), depth, inst);
        --raa_used[key];
        if (n) return n;
      }
    }
    return std::nullopt;
  }

  // Deterministic refutation construction for quantifier-free sequents:
  // decide the branch (antecedent plus negated succedent) with the oracle,
  // keep only a minimal unsatisfiable core, and translate its closure into
  // the calculus (raa, antecedent decompositions, NegL/Id/Eq leaves). No
  // backtracking: failure means the sequent is invalid. The recursion is
  // structural (every step consumes branch material), so it runs under a
  // node-count guard rather than the tree-depth budget.
  long refute_nodes = 0;
  static constexpr long kRefuteNodeGuard = 200000;

  std::optional<ProofNode> refute_build(const Sequent& s, int depth) {
    if (++refute_nodes > kRefuteNodeGuard) {
      budget_hit = true;
      return std::nullopt;
    }
    const auto& ant = s.antecedent;
    const Formula& succ = s.succedent;
    auto make = [&](ProofRule r, int principal) { return ProofNode{s, r, principal, {}, "", {}, {}}; };

    // Leaf closures.
    for (std::size_t i = 0; i < ant.size(); ++i)
      if (alpha_equal(ant[i], succ)) return make(ProofRule::Id, static_cast<int>(i));
    if (succ.kind == Formula::Kind::Equality && is_ground(succ)) {
      GroundFragment frag = ground_fragment(ant);
      if (equalities_entail(frag.equalities, succ)) {
        ProofNode n = make(ProofRule::EqId, -1);
        n.used = entailment_core(frag.equalities, succ);
        return n;
      }
    }
    {
      GroundFragment frag = ground_fragment(ant);
      if (frag.has_equality() && fragment_inconsistent(frag)) {
        ProofNode n = make(ProofRule::EqRefute, -1);
        n.used = refutation_core(ant);
        return n;
      }
    }
    // NegL against a complementary antecedent literal.
    for (std::size_t i = 0; i < ant.size(); ++i) {
      if (ant[i].kind != Formula::Kind::Negation || !is_literal(ant[i])) continue;
      for (std::size_t j = 0; j < ant.size(); ++j)
        if (alpha_equal(ant[j], ant[i].sub[0])) {
          ProofNode n = make(ProofRule::NegL, static_cast<int>(i));
          auto kids = rule_children(n);
          if (!kids) break;
          auto sub = refute_build((*kids)[0], depth - 1);
          if (!sub) break;
          n.children.push_back(std::move(*sub));
          return n;
        }
    }

    // Branch for the decision oracle: the antecedent minus implications this
    // path already split (their content is cased out and reappears through
    // the succedents of the split), plus the negated succedent. raa is
    // skipped when the remaining branch carries the negated succedent in any
    // guise (sentence-equal is enough: re-adding an expansion variant would
    // loop raa against its own expansion forever).
    std::vector<Formula> branch;
    for (const Formula& f : ant) {
      if (f.kind == Formula::Kind::Implication && imp_used[alpha_key(f)] > 0) {
        imp_context = true;
        continue;
      }
      branch.push_back(f);
    }
    bool succ_neg_present = false;
    const Formula nsucc = neg(succ);
    for (const Formula& f : branch)
      if (alpha_equal(f, nsucc) || sentence_equal(f, nsucc)) succ_neg_present = true;
    if (!succ_neg_present) branch.push_back(nsucc);
    const auto core = refuter.core(branch);
    if (!core) return std::nullopt;

    if (!succ_neg_present && core->count(alpha_key(nsucc))) {
      ProofNode n = make(ProofRule::Raa, -1);
      auto kids = rule_children(n);
      if (!kids) return std::nullopt;
      auto sub = refute_build((*kids)[0], depth - 1);
      if (!sub) return std::nullopt;
      n.children.push_back(std::move(*sub));
      return n;
    }

    // Decompose the first core compound in the antecedent.
    for (std::size_t i = 0; i < ant.size(); ++i) {
      if (!core->count(alpha_key(ant[i]))) continue;
      const Formula& f = ant[i];
      if (f.kind == Formula::Kind::Conjunction || neg_expand_applicable(f)) {
        ProofNode n = make(f.kind == Formula::Kind::Conjunction ? ProofRule::AndL : ProofRule::NegLExpand,
                           static_cast<int>(i));
        auto kids = rule_children(n);
        if (!kids) return std::nullopt;
        auto sub = refute_build((*kids)[0], depth - 1);
        if (!sub) return std::nullopt;
        n.children.push_back(std::move(*sub));
        return n;
      }
      if (f.kind == Formula::Kind::Disjunction) {
        ProofNode n = make(ProofRule::OrL, static_cast<int>(i));
        auto kids = rule_children(n);
        if (!kids) return std::nullopt;
        for (const Sequent& child : *kids) {
          auto sub = refute_build(child, depth - 1);
          if (!sub) return std::nullopt;
          n.children.push_back(std::move(*sub));
        }
        return n;
      }
      if (f.kind == Formula::Kind::Implication) {
        const std::string key = alpha_key(f);
        if (imp_used[key] > 0) {
          imp_context = true;
          continue;
        }
        ++imp_used[key];
        ProofNode n = make(ProofRule::ImpL, static_cast<int>(i));
        auto kids = rule_children(n);
        std::optional<ProofNode> ok;
        if (kids) {
          auto first = refute_build((*kids)[0], depth - 1);
          if (first) {
            auto second = refute_build((*kids)[1], depth - 1);
            if (second) {
              n.children.push_back(std::move(*first));
              n.children.push_back(std::move(*second));
              ok = std::move(n);
            }
          }
        }
        --imp_used[key];
        if (ok) return ok;
        continue;  // another core compound may still close the branch
      }
    }
    return std::nullopt;
  }

  std::vector<Term> universe_of(const Sequent& s) {
    Signature sig = signature_of(s.antecedent);
    sig.merge(signature_of(s.succedent));
    return term_universe(sig, budget.term_depth);
  }

  static bool closes_immediately(const Sequent& s) {
    for (const Formula& f : s.antecedent)
      if (alpha_equal(f, s.succedent)) return true;
    GroundFragment frag = ground_fragment(s.antecedent);
    if (s.succedent.kind == Formula::Kind::Equality && is_ground(s.succedent) &&
        equalities_entail(frag.equalities, s.succedent))
      return true;
    return frag.has_equality() && fragment_inconsistent(frag);
  }
};

}  // namespace

ProofResult prove(const Sequent& s, const Budget& b, ProofCache& cache) {
  b.validate();
  Search search{b, cache};
  std::map<std::string, int> inst;
  auto tree = search.search(s, b.max_depth, inst);
  if (tree) {
    ProofResult r;
    r.status = ProofResult::Status::Proved;
    r.tree = std::move(*tree);
    return r;
  }
  if (sequent_is_closed(s)) {
    Signature sig = signature_of(s.antecedent);
    sig.merge(signature_of(s.succedent));
    if (auto cm = find_model(sig, s.antecedent, {s.succedent}, b.model_size_cap)) {
      ProofResult r;
      r.status = ProofResult::Status::Disproved;
      r.countermodel = std::move(*cm);
      return r;
    }
  }
  ProofResult r;
  r.status = ProofResult::Status::Unknown;
  if (search.budget_hit)
    r.note = "proof search budget exhausted; no countermodel within size cap";
  else if (search.quantifier_choice)
    r.note = "witness pool exhausted; no countermodel within size cap";
  else
    r.note = "no proof found and no countermodel within size cap";
  return r;
}

ProofResult prove(const Sequent& s, const Budget& b) {
  ProofCache cache;
  return prove(s, b, cache);
}

// ---------------------------------------------------------------------------
// Consistency

namespace {

// Candidate contradiction targets: a reflexive equality first (provable iff
// the set is inconsistent at all), then atoms and equalities over the
// universe.
std::vector<Formula> contradiction_targets(const std::vector<Formula>& gamma, const Budget& b,
                                           std::size_t cap) {
  std::vector<Formula> out;
  const Signature sig = signature_of(gamma);
  const std::vector<Term> universe = term_universe(sig, b.term_depth);
  if (!universe.empty()) out.push_back(eq(universe[0], universe[0]));
  for (const auto& [pred, arity] : sig.predicates) {
    if (arity == 0) {
      out.push_back(atom(pred));
      continue;
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    while (out.size() < cap) {
      std::vector<Term> args;
      for (std::size_t i : idx) args.push_back(universe[i]);
      out.push_back(atom(pred, std::move(args)));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == universe.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  for (std::size_t i = 0; i < universe.size() && out.size() < cap; ++i)
    for (std::size_t j = i + 1; j < universe.size() && out.size() < cap; ++j)
      out.push_back(eq(universe[i], universe[j]));
  return out;
}

}  // namespace

Tri consistent(const std::vector<Formula>& gamma, const Budget& b, ProofCache& cache, std::string* note) {
  b.validate();
  if (fragment_inconsistent(ground_fragment(gamma))) return Tri::No;

  bool exhausted = true;
  if (find_model(signature_of(gamma), gamma, {}, b.model_size_cap, &exhausted)) return Tri::Yes;

  bool saw_unknown = !exhausted;
  for (const Formula& target : contradiction_targets(gamma, b, 64)) {
    const ProofResult pos = prove(Sequent{gamma, target}, b, cache);
    if (pos.status == ProofResult::Status::Unknown) saw_unknown = true;
    if (!pos.proved()) continue;
    const ProofResult negr = prove(Sequent{gamma, complement(target)}, b, cache);
    if (negr.status == ProofResult::Status::Unknown) saw_unknown = true;
    if (negr.proved()) return Tri::No;
  }
  if (note && saw_unknown) *note = "consistency undecided within budget";
  return Tri::Unknown;
}

Tri consistent(const std::vector<Formula>& gamma, const Budget& b) {
  ProofCache cache;
  return consistent(gamma, b, cache);
}

// ---------------------------------------------------------------------------
// Atomic consequences

std::vector<Formula> atomic_consequences(const std::vector<Formula>& gamma, const Budget& b,
                                         ProofCache& cache) {
  b.validate();
  const Signature sig = signature_of(gamma);
  // No injected constant here: an empty signature yields no consequences.
  std::vector<Term> universe;
  if (!sig.constants.empty() || !sig.functions.empty()) universe = term_universe(sig, b.term_depth);

  std::vector<Formula> pool;
  for (const auto& [pred, arity] : sig.predicates) {
    if (arity == 0) {
      pool.push_back(atom(pred));
      continue;
    }
    if (universe.empty()) continue;
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    while (pool.size() <= 256) {
      std::vector<Term> args;
      for (std::size_t i : idx) args.push_back(universe[i]);
      pool.push_back(atom(pred, std::move(args)));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == universe.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  for (std::size_t i = 0; i < universe.size(); ++i)
    for (std::size_t j = 0; j < universe.size(); ++j)
      if (i != j && pool.size() <= 256) pool.push_back(eq(universe[i], universe[j]));

  std::vector<Formula> out;
  for (const Formula& a : pool) {
    if (prove(Sequent{gamma, a}, b, cache).proved()) out.push_back(a);
    const Formula na = neg(a);
    if (prove(Sequent{gamma, na}, b, cache).proved()) out.push_back(na);
  }
  std::sort(out.begin(), out.end(), [](const Formula& x, const Formula& y) {
    const int rx = rank(x), ry = rank(y);
    if (rx != ry) return rx < ry;
    return to_string(x) < to_string(y);
  });
  return out;
}

std::vector<Formula> atomic_consequences(const std::vector<Formula>& gamma, const Budget& b) {
  ProofCache cache;
  return atomic_consequences(gamma, b, cache);
}

}  // namespace rcalc
