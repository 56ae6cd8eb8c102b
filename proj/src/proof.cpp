#include "rcalc/proof.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rcalc/congruence.hpp"

namespace rcalc {

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.antecedent[i]);
  }
  out += out.empty() ? "|- " : " |- ";
  out += to_string(s.succedent);
  return out;
}

std::string canonical_key(const Sequent& s) {
  std::set<std::string> left;
  for (const Formula& f : s.antecedent) left.insert(alpha_key(f));
  std::string out;
  for (const std::string& k : left) out += k + ";";
  return out + "|-" + alpha_key(s.succedent);
}

std::string exact_key(const Sequent& s) {
  std::string out;
  for (const Formula& f : s.antecedent) out += alpha_key(f) + ";";
  return out + "|-" + alpha_key(s.succedent);
}

const char* rule_name(ProofRule r) {
  switch (r) {
    case ProofRule::Id: return "axiom";
    case ProofRule::EqId: return "eq-axiom";
    case ProofRule::EqRefute: return "eq-refute";
    case ProofRule::AndL: return "and-left";
    case ProofRule::OrL: return "or-left";
    case ProofRule::ImpL: return "imp-left";
    case ProofRule::NegL: return "not-left";
    case ProofRule::NegLExpand: return "not-left-expand";
    case ProofRule::ExistsL: return "exists-left";
    case ProofRule::ForallL: return "forall-left";
    case ProofRule::AndR: return "and-right";
    case ProofRule::OrR1: return "or-right-1";
    case ProofRule::OrR2: return "or-right-2";
    case ProofRule::ImpR: return "imp-right";
    case ProofRule::NegRExpand: return "not-right-expand";
    case ProofRule::ForallR: return "forall-right";
    case ProofRule::ExistsR: return "exists-right";
    case ProofRule::Raa: return "raa";
  }
  return "?";
}

bool is_left_rule(ProofRule r) {
  switch (r) {
    case ProofRule::AndL:
    case ProofRule::OrL:
    case ProofRule::ImpL:
    case ProofRule::NegL:
    case ProofRule::NegLExpand:
    case ProofRule::ExistsL:
    case ProofRule::ForallL: return true;
    default: return false;
  }
}

bool is_right_rule(ProofRule r) {
  switch (r) {
    case ProofRule::AndR:
    case ProofRule::OrR1:
    case ProofRule::OrR2:
    case ProofRule::ImpR:
    case ProofRule::NegRExpand:
    case ProofRule::ForallR:
    case ProofRule::ExistsR: return true;
    default: return false;
  }
}

namespace {

std::vector<Formula> replace_at(const std::vector<Formula>& v, std::size_t at, std::vector<Formula> with) {
  std::vector<Formula> out;
  out.reserve(v.size() + with.size());
  out.insert(out.end(), v.begin(), v.begin() + static_cast<long>(at));
  for (Formula& f : with) out.push_back(std::move(f));
  out.insert(out.end(), v.begin() + static_cast<long>(at) + 1, v.end());
  return out;
}

std::vector<Formula> append(std::vector<Formula> v, Formula f) {
  v.push_back(std::move(f));
  return v;
}

bool symbol_occurs(const Sequent& s, const std::string& name) {
  Signature sig = signature_of(s.antecedent);
  sig.merge(signature_of(s.succedent));
  return sig.constants.count(name) || sig.variables.count(name) || sig.functions.count(name) ||
         sig.predicates.count(name);
}

}  // namespace

std::optional<std::vector<Sequent>> rule_children(const ProofNode& n) {
  const Sequent& s = n.sequent;
  const auto& ant = s.antecedent;
  const Formula& succ = s.succedent;
  const bool left = is_left_rule(n.rule) || n.rule == ProofRule::Id;
  const int p = n.principal;
  if (left && (p < 0 || p >= static_cast<int>(ant.size()))) return std::nullopt;
  const std::size_t up = static_cast<std::size_t>(p);

  switch (n.rule) {
    case ProofRule::Id:
      if (!alpha_equal(ant[up], succ)) return std::nullopt;
      return std::vector<Sequent>{};
    case ProofRule::EqId: {
      if (succ.kind != Formula::Kind::Equality || !is_ground(succ)) return std::nullopt;
      std::vector<std::pair<int, Formula>> eqs;
      for (int i : n.used) {
        if (i < 0 || i >= static_cast<int>(ant.size())) return std::nullopt;
        const Formula& f = ant[static_cast<std::size_t>(i)];
        if (f.kind != Formula::Kind::Equality || !is_ground(f)) return std::nullopt;
        eqs.emplace_back(i, f);
      }
      if (!equalities_entail(eqs, succ)) return std::nullopt;
      return std::vector<Sequent>{};
    }
    case ProofRule::EqRefute: {
      std::vector<Formula> lits;
      for (int i : n.used) {
        if (i < 0 || i >= static_cast<int>(ant.size())) return std::nullopt;
        lits.push_back(ant[static_cast<std::size_t>(i)]);
      }
      GroundFragment frag = ground_fragment(lits);
      if (!frag.has_equality() || !fragment_inconsistent(frag)) return std::nullopt;
      return std::vector<Sequent>{};
    }
    case ProofRule::AndL: {
      const Formula& f = ant[up];
      if (f.kind != Formula::Kind::Conjunction) return std::nullopt;
      return std::vector<Sequent>{{replace_at(ant, up, {f.sub[0], f.sub[1]}), succ}};
    }
    case ProofRule::OrL: {
      const Formula& f = ant[up];
      if (f.kind != Formula::Kind::Disjunction) return std::nullopt;
      return std::vector<Sequent>{{replace_at(ant, up, {f.sub[0]}), succ},
                                  {replace_at(ant, up, {f.sub[1]}), succ}};
    }
    case ProofRule::ImpL: {
      const Formula& f = ant[up];
      if (f.kind != Formula::Kind::Implication) return std::nullopt;
      // Principal stays in the first numerator; the second replaces it by B.
      return std::vector<Sequent>{{ant, f.sub[0]}, {replace_at(ant, up, {f.sub[1]}), succ}};
    }
    case ProofRule::NegL: {
      const Formula& f = ant[up];
      if (f.kind != Formula::Kind::Negation) return std::nullopt;
      if (f.sub[0].kind != Formula::Kind::Atom && f.sub[0].kind != Formula::Kind::Equality)
        return std::nullopt;
      return std::vector<Sequent>{{replace_at(ant, up, {}), f.sub[0]}};
    }
    case ProofRule::NegLExpand: {
      const Formula& f = ant[up];
      if (!neg_expand_applicable(f)) return std::nullopt;
      return std::vector<Sequent>{{replace_at(ant, up, {neg_expand(f)}), succ}};
    }
    case ProofRule::ExistsL: {
      const Formula& f = ant[up];
      if (f.kind != Formula::Kind::Existential || n.eigen.empty()) return std::nullopt;
      if (symbol_occurs(s, n.eigen)) return std::nullopt;  // eigen must be fresh for the conclusion
      return std::vector<Sequent>{{replace_at(ant, up, {substitute(f.sub[0], f.name, cst(n.eigen))}), succ}};
    }
    case ProofRule::ForallL: {
      const Formula& f = ant[up];
      if (f.kind != Formula::Kind::Universal || !n.witness) return std::nullopt;
      return std::vector<Sequent>{{append(ant, substitute(f.sub[0], f.name, *n.witness)), succ}};
    }
    case ProofRule::AndR:
      if (succ.kind != Formula::Kind::Conjunction) return std::nullopt;
      return std::vector<Sequent>{{ant, succ.sub[0]}, {ant, succ.sub[1]}};
    case ProofRule::OrR1:
      if (succ.kind != Formula::Kind::Disjunction) return std::nullopt;
      return std::vector<Sequent>{{ant, succ.sub[0]}};
    case ProofRule::OrR2:
      if (succ.kind != Formula::Kind::Disjunction) return std::nullopt;
      return std::vector<Sequent>{{ant, succ.sub[1]}};
    case ProofRule::ImpR:
      if (succ.kind != Formula::Kind::Implication) return std::nullopt;
      return std::vector<Sequent>{{append(ant, succ.sub[0]), succ.sub[1]}};
    case ProofRule::NegRExpand:
      if (!neg_expand_applicable(succ)) return std::nullopt;
      return std::vector<Sequent>{{ant, neg_expand(succ)}};
    case ProofRule::ForallR: {
      if (succ.kind != Formula::Kind::Universal || n.eigen.empty()) return std::nullopt;
      if (symbol_occurs(s, n.eigen)) return std::nullopt;
      return std::vector<Sequent>{{ant, substitute(succ.sub[0], succ.name, cst(n.eigen))}};
    }
    case ProofRule::ExistsR: {
      if (succ.kind != Formula::Kind::Existential || !n.witness) return std::nullopt;
      return std::vector<Sequent>{{ant, substitute(succ.sub[0], succ.name, *n.witness)}};
    }
    case ProofRule::Raa: {
      // Progress guard: refuse stacking the same assumption twice.
      for (const Formula& f : ant)
        if (alpha_equal(f, neg(succ))) return std::nullopt;
      return std::vector<Sequent>{{append(ant, neg(succ)), succ}};
    }
  }
  return std::nullopt;
}

namespace {

bool check_node(const ProofNode& n, std::string& diag, int& counter) {
  const int id = ++counter;
  auto expected = rule_children(n);
  if (!expected) {
    diag = "node #" + std::to_string(id) + " (" + rule_name(n.rule) + "): rule does not fit sequent " +
           to_string(n.sequent);
    return false;
  }
  if (expected->size() != n.children.size()) {
    diag = "node #" + std::to_string(id) + " (" + rule_name(n.rule) + "): expected " +
           std::to_string(expected->size()) + " children, found " + std::to_string(n.children.size());
    return false;
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (!(n.children[i].sequent == (*expected)[i])) {
      diag = "node #" + std::to_string(id) + " (" + rule_name(n.rule) + "): child " + std::to_string(i) +
             " is " + to_string(n.children[i].sequent) + ", schema requires " + to_string((*expected)[i]);
      return false;
    }
  }
  for (const ProofNode& c : n.children)
    if (!check_node(c, diag, counter)) return false;
  return true;
}

}  // namespace

bool check_proof_tree(const ProofNode& root, std::string& diagnostic) {
  int counter = 0;
  return check_node(root, diagnostic, counter);
}

bool check_proof_tree(const ProofNode& root) {
  std::string diag;
  return check_proof_tree(root, diag);
}

std::size_t tree_size(const ProofNode& root) {
  std::size_t n = 1;
  for (const ProofNode& c : root.children) n += tree_size(c);
  return n;
}

void Budget::validate() const {
  if (max_depth <= 0 || max_instantiations_per_quantifier <= 0 || term_depth <= 0 || model_size_cap <= 0)
    throw SyntaxError("budget fields must be positive");
}

}  // namespace rcalc
