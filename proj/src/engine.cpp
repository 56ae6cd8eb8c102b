#include "rcalc/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "rcalc/congruence.hpp"
#include "rcalc/runtime.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rcalc {

const char* rule_tag_name(RuleTag t) {
  switch (t) {
    case RuleTag::ContractionL: return "contraction-l";
    case RuleTag::ContractionR: return "contraction-r";
    case RuleTag::ExchangeL: return "exchange-l";
    case RuleTag::ExchangeR: return "exchange-r";
    case RuleTag::RAxiom: return "r-axiom";
    case RuleTag::RCut: return "r-cut";
    case RuleTag::RAndLeft: return "r-and-left";
    case RuleTag::RAndRight: return "r-and-right";
    case RuleTag::ROr: return "r-or";
    case RuleTag::RImp: return "r-imp";
    case RuleTag::RForall: return "r-forall";
    case RuleTag::RExists: return "r-exists";
    case RuleTag::RNeg: return "r-neg";
  }
  return "?";
}

RCondition RCondition::make(std::vector<Formula> lits) {
  std::vector<Formula> kept;
  for (const Formula& f : lits) {
    if (!is_literal(f)) throw RConditionError("not a literal: " + to_string(f));
    if (!is_sentence(f)) throw RConditionError("not a sentence: " + to_string(f));
    bool dup = false;
    for (const Formula& k : kept)
      if (alpha_equal(k, f)) {
        dup = true;
        break;
      }
    if (dup) continue;
    for (const Formula& k : kept)
      if (alpha_equal(k, complement(f)))
        throw RConditionError("inconsistent rejected facts: " + to_string(f) + " vs " + to_string(k));
    kept.push_back(f);
  }
  // Ground equality fragment must be congruence-consistent.
  if (fragment_inconsistent(ground_fragment(kept)))
    throw RConditionError("rejected facts refute themselves under congruence");
  RCondition rc;
  rc.literals = std::move(kept);
  return rc;
}

std::string to_string(const Configuration& c) {
  std::string out;
  for (std::size_t i = 0; i < c.delta.literals.size(); ++i) {
    if (i) out += ", ";
    out += to_string(c.delta.literals[i]);
  }
  out += out.empty() ? "|" : " |";
  if (c.gamma.empty()) return out + " (empty)";
  for (std::size_t i = 0; i < c.gamma.size(); ++i) out += (i ? ", " : " ") + to_string(c.gamma[i]);
  return out;
}

std::string config_key(const Configuration& c) {
  std::set<std::string> left, right;
  for (const Formula& f : c.delta.literals) left.insert(alpha_key(f));
  for (const Formula& f : c.gamma) right.insert(alpha_key(f));
  std::string out;
  for (const std::string& k : left) out += k + ";";
  out += "|";
  for (const std::string& k : right) out += k + ";";
  return out;
}

namespace {

// Duplicate-free gamma under sentence equality, preserving first occurrences.
std::vector<Formula> normalize_gamma(const std::vector<Formula>& laws, std::vector<int>* dropped = nullptr) {
  std::vector<Formula> out;
  for (std::size_t i = 0; i < laws.size(); ++i) {
    bool dup = false;
    for (const Formula& k : out)
      if (sentence_equal(k, laws[i])) {
        dup = true;
        break;
      }
    if (dup) {
      if (dropped) dropped->push_back(static_cast<int>(i));
    } else {
      out.push_back(laws[i]);
    }
  }
  return out;
}

std::vector<Formula> without(const std::vector<Formula>& v, int pos) {
  std::vector<Formula> out;
  out.reserve(v.size() - 1);
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (i != pos) out.push_back(v[static_cast<std::size_t>(i)]);
  return out;
}

bool axiom_matches(const Formula& delta_member, const Formula& law) {
  return is_literal(law) && alpha_equal(complement(delta_member), law);
}

Signature config_signature(const Configuration& c) {
  Signature sig = signature_of(c.delta.literals);
  sig.merge(signature_of(c.gamma));
  return sig;
}

std::string fresh_symbol(const Signature& sig, int& counter) {
  for (;; ++counter) {
    std::string name = "v" + std::to_string(counter);
    if (!sig.constants.count(name) && !sig.variables.count(name) && !sig.functions.count(name) &&
        !sig.predicates.count(name))
      return name;
  }
}

// ---------------------------------------------------------------------------
// Numerator derivations: delete the formula at position 0 of delta | F, ctx.
// Cut is deliberately not available here; deletions come from the axiom, the
// connective rules and chains of expansions, which keeps every connective
// deletion sound against delta alone.

std::optional<SubDerivation> derive_deletion(const RCondition& delta, const Formula& f,
                                             const std::vector<Formula>& ctx, const Budget& b);

std::optional<Transition> deleting_transition(const RCondition& delta, const Formula& f,
                                              const std::vector<Formula>& ctx, const Budget& b) {
  // R-axiom
  for (const Formula& d : delta.literals)
    if (axiom_matches(d, f)) {
      Transition t;
      t.rule = RuleTag::RAxiom;
      t.position = 0;
      return t;
    }
  switch (f.kind) {
    case Formula::Kind::Conjunction: {
      if (auto sd = derive_deletion(delta, f.sub[0], ctx, b)) {
        Transition t;
        t.rule = RuleTag::RAndLeft;
        t.position = 0;
        t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sd)));
        return t;
      }
      if (auto sd = derive_deletion(delta, f.sub[1], ctx, b)) {
        Transition t;
        t.rule = RuleTag::RAndRight;
        t.position = 0;
        t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sd)));
        return t;
      }
      return std::nullopt;
    }
    case Formula::Kind::Disjunction: {
      auto sa = derive_deletion(delta, f.sub[0], ctx, b);
      if (!sa) return std::nullopt;
      auto sb = derive_deletion(delta, f.sub[1], ctx, b);
      if (!sb) return std::nullopt;
      Transition t;
      t.rule = RuleTag::ROr;
      t.position = 0;
      t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sa)));
      t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sb)));
      return t;
    }
    case Formula::Kind::Implication: {
      auto sa = derive_deletion(delta, neg(f.sub[0]), ctx, b);
      if (!sa) return std::nullopt;
      auto sb = derive_deletion(delta, f.sub[1], ctx, b);
      if (!sb) return std::nullopt;
      Transition t;
      t.rule = RuleTag::RImp;
      t.position = 0;
      t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sa)));
      t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sb)));
      return t;
    }
    case Formula::Kind::Universal: {
      Signature sig = signature_of(ctx);
      sig.merge(signature_of(delta.literals));
      sig.merge(signature_of(f));
      for (const Term& t : term_universe(sig, b.term_depth)) {
        if (auto sd = derive_deletion(delta, substitute(f.sub[0], f.name, t), ctx, b)) {
          Transition tr;
          tr.rule = RuleTag::RForall;
          tr.position = 0;
          tr.witness_term = t;
          tr.subs.push_back(std::make_shared<SubDerivation>(std::move(*sd)));
          return tr;
        }
      }
      return std::nullopt;
    }
    case Formula::Kind::Existential: {
      Signature sig = config_signature({delta, ctx});
      sig.merge(signature_of(f));
      int counter = 0;
      const std::string y = fresh_symbol(sig, counter);
      if (auto sd = derive_deletion(delta, substitute(f.sub[0], f.name, cst(y)), ctx, b)) {
        Transition t;
        t.rule = RuleTag::RExists;
        t.position = 0;
        t.eigen = y;
        t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sd)));
        return t;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;  // unmatched literal
  }
}

std::optional<SubDerivation> derive_deletion(const RCondition& delta, const Formula& f,
                                             const std::vector<Formula>& ctx, const Budget& b) {
  // Numerator gammas are plain sequences: the side formula sits at position 0
  // and may duplicate a context law, so no contraction is applied mid-chain.
  SubDerivation sd;
  std::vector<Formula> gamma;
  gamma.push_back(f);
  gamma.insert(gamma.end(), ctx.begin(), ctx.end());
  sd.start = Configuration{delta, gamma};

  Formula cur = f;
  Configuration cfg = sd.start;
  // Chains of expansions first: deleting ~A for compound A needs the
  // negation pushed inward before any rule can take the formula apart.
  while (true) {
    if (auto t = deleting_transition(delta, cur, ctx, b)) {
      Configuration result{delta, ctx};
      sd.steps.emplace_back(std::move(*t), std::move(result));
      return sd;
    }
    if (!neg_expand_applicable(cur)) return std::nullopt;
    cur = neg_expand(cur);
    std::vector<Formula> g = cfg.gamma;
    g[0] = cur;
    Configuration next{delta, g};
    Transition t;
    t.rule = RuleTag::RNeg;
    t.position = 0;
    sd.steps.emplace_back(std::move(t), next);
    cfg = std::move(next);
  }
}

}  // namespace

Configuration make_configuration(std::vector<Formula> delta_literals, std::vector<Formula> laws,
                                 std::vector<Transition>* structural) {
  RCondition delta = RCondition::make(delta_literals);
  if (structural) {
    // Record collapsed duplicates as contraction moves (right side = gamma).
    std::vector<int> dropped;
    normalize_gamma(laws, &dropped);
    for (int i : dropped) {
      Transition t;
      t.rule = RuleTag::ContractionR;
      t.position = i;
      structural->push_back(t);
    }
  }
  for (Formula& f : laws)
    if (!is_sentence(f)) throw RConditionError("law is not a sentence: " + to_string(f));
  return Configuration{std::move(delta), normalize_gamma(laws)};
}

std::vector<Tri> validate_configuration(const Configuration& c, const Budget& b, ProofCache& cache) {
  std::vector<Tri> out;
  for (const Formula& a : c.delta.literals) {
    // Gamma |- ~A, with ~~X read as X.
    const Formula goal = complement(a);
    const ProofResult r = prove(Sequent{c.gamma, goal}, b, cache);
    switch (r.status) {
      case ProofResult::Status::Proved: out.push_back(Tri::Yes); break;
      case ProofResult::Status::Disproved: out.push_back(Tri::No); break;
      case ProofResult::Status::Unknown: out.push_back(Tri::Unknown); break;
    }
  }
  return out;
}

StepList step_axiom(const Configuration& c) {
  StepList out;
  for (int p = 0; p < static_cast<int>(c.gamma.size()); ++p) {
    for (const Formula& d : c.delta.literals) {
      if (axiom_matches(d, c.gamma[static_cast<std::size_t>(p)])) {
        Transition t;
        t.rule = RuleTag::RAxiom;
        t.position = p;
        out.emplace_back(std::move(t), Configuration{c.delta, normalize_gamma(without(c.gamma, p))});
        break;
      }
    }
  }
  return out;
}

namespace {

// Lemma candidates: closed subformulas of gamma plus ground literals over the
// term universe of delta and gamma (reflexive equalities excluded).
std::vector<Formula> lemma_pool(const Configuration& c, const Budget& b) {
  std::vector<Formula> pool = closed_subformula_pool(c.gamma);
  Signature sig = config_signature(c);
  const std::vector<Term> universe = term_universe(sig, b.term_depth);
  std::vector<Formula> lits;
  for (const auto& [pred, arity] : sig.predicates) {
    if (arity == 0) {
      lits.push_back(atom(pred));
      continue;
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    while (lits.size() < 64) {
      std::vector<Term> args;
      for (std::size_t i : idx) args.push_back(universe[i]);
      lits.push_back(atom(pred, std::move(args)));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == universe.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  for (std::size_t i = 0; i < universe.size() && lits.size() < 96; ++i)
    for (std::size_t j = 0; j < universe.size() && lits.size() < 96; ++j)
      if (i != j) lits.push_back(eq(universe[i], universe[j]));
  const std::size_t base = lits.size();
  for (std::size_t i = 0; i < base; ++i) lits.push_back(neg(lits[i]));
  std::set<std::string> seen;
  std::vector<Formula> out;
  for (const Formula& f : lits)
    if (seen.insert(alpha_key(f)).second) out.push_back(f);
  for (const Formula& f : pool)
    if (seen.insert(alpha_key(f)).second) out.push_back(f);
  std::sort(out.begin(), out.end(), [](const Formula& a, const Formula& bq) {
    const int ra = rank(a), rb = rank(bq);
    if (ra != rb) return ra < rb;
    return to_string(a) < to_string(bq);
  });
  return out;
}

}  // namespace

StepList step_cut(const Configuration& c, const Budget& b, ProofCache& cache, bool* saw_unknown) {
  StepList out;
  const int n = static_cast<int>(c.gamma.size());
  if (n == 0 || c.delta.literals.empty()) return out;
  const std::vector<Formula> lemmas = lemma_pool(c, b);

  for (int p = 0; p < n; ++p) {
    const Formula& law = c.gamma[static_cast<std::size_t>(p)];
    std::vector<int> rest_idx;
    for (int i = 0; i < n; ++i)
      if (i != p) rest_idx.push_back(i);
    const int k = static_cast<int>(rest_idx.size());

    // Partitions of the remaining laws into Gamma1/Gamma2. The structural
    // exchange rules make any arrangement of gamma legitimate, so the split
    // ranges over bipartitions, capped for large gammas (positional
    // prefix/suffix splits are always included).
    std::vector<std::uint32_t> masks;
    if (k <= 12) {
      for (std::uint32_t m = 0; m < (1u << k); ++m) masks.push_back(m);
    } else {
      if (saw_unknown) *saw_unknown = true;  // not every arrangement tried
      for (int cutpoint = 0; cutpoint <= k; ++cutpoint) {
        std::uint32_t m = 0;
        for (int i = cutpoint; i < k; ++i) m |= (1u << i);
        masks.push_back(m);
      }
    }

    bool emitted = false;
    for (const Formula& d : c.delta.literals) {
      if (emitted) break;
      const Formula target = complement(d);
      for (const Formula& lemma : lemmas) {
        if (emitted) break;
        for (std::uint32_t mask : masks) {
          std::vector<Formula> g1, g2;
          std::vector<int> g1_idx, g2_idx;
          for (int i = 0; i < k; ++i) {
            const int src = rest_idx[static_cast<std::size_t>(i)];
            if (mask & (1u << i)) {
              g2.push_back(c.gamma[static_cast<std::size_t>(src)]);
              g2_idx.push_back(src);
            } else {
              g1.push_back(c.gamma[static_cast<std::size_t>(src)]);
              g1_idx.push_back(src);
            }
          }
          // Second sequent first: lemma, Gamma2 |- target, with the lemma a
          // necessary premise of the target ("a lemma used in the proof").
          std::vector<Formula> ant2;
          ant2.push_back(lemma);
          ant2.insert(ant2.end(), g2.begin(), g2.end());
          const ProofResult second = prove(Sequent{ant2, target}, b, cache);
          if (second.status == ProofResult::Status::Unknown && saw_unknown) *saw_unknown = true;
          if (!second.proved()) continue;
          if (!is_necessary_premise(lemma, *second.tree, {lemma}, target)) continue;

          std::vector<Formula> ant1 = g1;
          ant1.push_back(law);
          const ProofResult first = prove(Sequent{ant1, lemma}, b, cache);
          if (first.status == ProofResult::Status::Unknown && saw_unknown) *saw_unknown = true;
          if (!first.proved()) continue;
          if (!is_necessary_premise(law, *first.tree, {law}, lemma)) continue;

          auto witness = std::make_shared<Transition::CutWitness>();
          witness->gamma1 = g1_idx;
          witness->gamma2 = g2_idx;
          witness->lemma = lemma;
          witness->target = target;
          witness->first = *first.tree;
          witness->second = *second.tree;
          Transition t;
          t.rule = RuleTag::RCut;
          t.position = p;
          t.cut = std::move(witness);
          out.emplace_back(std::move(t), Configuration{c.delta, normalize_gamma(without(c.gamma, p))});
          emitted = true;
          break;
        }
      }
    }
  }
  return out;
}

namespace {

StepList connective_step(const Configuration& c, int position, const Budget& b, RuleTag tag) {
  StepList out;
  if (position < 0 || position >= static_cast<int>(c.gamma.size())) throw NotApplicable("bad position");
  const Formula& f = c.gamma[static_cast<std::size_t>(position)];
  const std::vector<Formula> ctx = without(c.gamma, position);
  const Configuration result{c.delta, normalize_gamma(ctx)};
  auto emit = [&](Transition t) {
    t.position = position;
    out.emplace_back(std::move(t), result);
  };

  switch (tag) {
    case RuleTag::RAndLeft: {
      if (f.kind != Formula::Kind::Conjunction) throw NotApplicable("not a conjunction");
      if (auto sd = derive_deletion(c.delta, f.sub[0], ctx, b)) {
        Transition t;
        t.rule = RuleTag::RAndLeft;
        t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sd)));
        emit(std::move(t));
      }
      if (auto sd = derive_deletion(c.delta, f.sub[1], ctx, b)) {
        Transition t;
        t.rule = RuleTag::RAndRight;
        t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sd)));
        emit(std::move(t));
      }
      return out;
    }
    case RuleTag::ROr: {
      if (f.kind != Formula::Kind::Disjunction) throw NotApplicable("not a disjunction");
      auto sa = derive_deletion(c.delta, f.sub[0], ctx, b);
      if (!sa) return out;
      auto sb = derive_deletion(c.delta, f.sub[1], ctx, b);
      if (!sb) return out;
      Transition t;
      t.rule = RuleTag::ROr;
      t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sa)));
      t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sb)));
      emit(std::move(t));
      return out;
    }
    case RuleTag::RImp: {
      if (f.kind != Formula::Kind::Implication) throw NotApplicable("not an implication");
      auto sa = derive_deletion(c.delta, neg(f.sub[0]), ctx, b);
      if (!sa) return out;
      auto sb = derive_deletion(c.delta, f.sub[1], ctx, b);
      if (!sb) return out;
      Transition t;
      t.rule = RuleTag::RImp;
      t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sa)));
      t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sb)));
      emit(std::move(t));
      return out;
    }
    case RuleTag::RForall: {
      if (f.kind != Formula::Kind::Universal) throw NotApplicable("not a universal");
      Signature sig = config_signature(c);
      for (const Term& t : term_universe(sig, b.term_depth)) {
        if (auto sd = derive_deletion(c.delta, substitute(f.sub[0], f.name, t), ctx, b)) {
          Transition tr;
          tr.rule = RuleTag::RForall;
          tr.witness_term = t;
          tr.subs.push_back(std::make_shared<SubDerivation>(std::move(*sd)));
          emit(std::move(tr));
          break;  // further witnesses reach the same configuration
        }
      }
      return out;
    }
    case RuleTag::RExists: {
      if (f.kind != Formula::Kind::Existential) throw NotApplicable("not an existential");
      Signature sig = config_signature(c);
      int counter = 0;
      const std::string y = fresh_symbol(sig, counter);
      if (auto sd = derive_deletion(c.delta, substitute(f.sub[0], f.name, cst(y)), ctx, b)) {
        Transition t;
        t.rule = RuleTag::RExists;
        t.eigen = y;
        t.subs.push_back(std::make_shared<SubDerivation>(std::move(*sd)));
        emit(std::move(t));
      }
      return out;
    }
    default: throw NotApplicable("not a connective rule");
  }
}

}  // namespace

StepList step_and(const Configuration& c, int position, const Budget& b) {
  return connective_step(c, position, b, RuleTag::RAndLeft);
}
StepList step_or(const Configuration& c, int position, const Budget& b) {
  return connective_step(c, position, b, RuleTag::ROr);
}
StepList step_imp(const Configuration& c, int position, const Budget& b) {
  return connective_step(c, position, b, RuleTag::RImp);
}
StepList step_forall(const Configuration& c, int position, const Budget& b) {
  return connective_step(c, position, b, RuleTag::RForall);
}
StepList step_exists(const Configuration& c, int position, const Budget& b) {
  return connective_step(c, position, b, RuleTag::RExists);
}

StepList step_neg(const Configuration& c, int position) {
  if (position < 0 || position >= static_cast<int>(c.gamma.size())) throw NotApplicable("bad position");
  const Formula& f = c.gamma[static_cast<std::size_t>(position)];
  if (!neg_expand_applicable(f)) throw NotApplicable("not an expandable negation: " + to_string(f));
  std::vector<Formula> g = c.gamma;
  g[static_cast<std::size_t>(position)] = neg_expand(f);
  Transition t;
  t.rule = RuleTag::RNeg;
  t.position = position;
  StepList out;
  out.emplace_back(std::move(t), Configuration{c.delta, normalize_gamma(g)});
  return out;
}

StepList enumerate_steps(const Configuration& c, const Budget& b, ProofCache& cache, bool* saw_unknown) {
  StepList all = step_axiom(c);
  {
    StepList cuts = step_cut(c, b, cache, saw_unknown);
    all.insert(all.end(), cuts.begin(), cuts.end());
  }
  auto add_shape = [&](Formula::Kind kind, auto&& stepper) {
    for (int p = 0; p < static_cast<int>(c.gamma.size()); ++p)
      if (c.gamma[static_cast<std::size_t>(p)].kind == kind) {
        StepList s = stepper(p);
        all.insert(all.end(), s.begin(), s.end());
      }
  };
  add_shape(Formula::Kind::Conjunction, [&](int p) { return step_and(c, p, b); });
  add_shape(Formula::Kind::Disjunction, [&](int p) { return step_or(c, p, b); });
  add_shape(Formula::Kind::Implication, [&](int p) { return step_imp(c, p, b); });
  add_shape(Formula::Kind::Universal, [&](int p) { return step_forall(c, p, b); });
  add_shape(Formula::Kind::Existential, [&](int p) { return step_exists(c, p, b); });
  for (int p = 0; p < static_cast<int>(c.gamma.size()); ++p)
    if (neg_expand_applicable(c.gamma[static_cast<std::size_t>(p)])) {
      StepList s = step_neg(c, p);
      all.insert(all.end(), s.begin(), s.end());
    }

  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    if (x.first.rule != y.first.rule) return x.first.rule < y.first.rule;
    return x.first.position < y.first.position;
  });
  StepList out;
  std::set<std::string> seen;
  for (auto& step : all) {
    std::string key = std::string(rule_tag_name(step.first.rule)) + "#" +
                      std::to_string(step.first.position) + "#" + config_key(step.second);
    if (seen.insert(key).second) out.push_back(std::move(step));
  }
  return out;
}

Tri is_termination(const Configuration& c, const Budget& b, ProofCache& cache) {
  bool saw_unknown = false;
  const StepList steps = enumerate_steps(c, b, cache, &saw_unknown);
  if (!steps.empty()) return Tri::No;
  return saw_unknown ? Tri::Unknown : Tri::Yes;
}

// ---------------------------------------------------------------------------
// Exploration

ExplorationResult explore_terminations(const Configuration& start, const Budget& b, int limit) {
  if (limit <= 0) throw SyntaxError("exploration limit must be positive");
  ExplorationResult result;
  ProofCache cache;

  struct Node {
    Configuration config;
    int parent = -1;
    std::optional<Transition> via;
  };
  std::vector<Node> nodes;
  std::set<std::string> visited;
  nodes.push_back({start, -1, std::nullopt});
  visited.insert(config_key(start));

  std::size_t frontier_begin = 0;
  while (frontier_begin < nodes.size()) {
    const std::size_t frontier_end = nodes.size();
    const std::size_t width = frontier_end - frontier_begin;

    std::vector<StepList> expansions(width);
    std::vector<char> unknowns(width, 0);
    if (runtime::parallel() && width > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (long long i = 0; i < static_cast<long long>(width); ++i) {
        bool u = false;
        expansions[static_cast<std::size_t>(i)] =
            enumerate_steps(nodes[frontier_begin + static_cast<std::size_t>(i)].config, b, cache, &u);
        unknowns[static_cast<std::size_t>(i)] = u ? 1 : 0;
      }
    } else {
      for (std::size_t i = 0; i < width; ++i) {
        bool u = false;
        expansions[i] = enumerate_steps(nodes[frontier_begin + i].config, b, cache, &u);
        unknowns[i] = u ? 1 : 0;
      }
    }

    for (std::size_t i = 0; i < width; ++i) {
      const std::size_t ni = frontier_begin + i;
      if (expansions[i].empty()) {
        Termination term;
        term.config = nodes[ni].config;
        term.conclusive = !unknowns[i];
        if (unknowns[i])
          result.notes.push_back("termination check hit a budget limit at " + to_string(nodes[ni].config));
        // Reconstruct the trace root-to-here.
        std::vector<std::pair<Transition, Configuration>> steps;
        for (int at = static_cast<int>(ni); nodes[static_cast<std::size_t>(at)].parent >= 0;
             at = nodes[static_cast<std::size_t>(at)].parent)
          steps.emplace_back(*nodes[static_cast<std::size_t>(at)].via, nodes[static_cast<std::size_t>(at)].config);
        std::reverse(steps.begin(), steps.end());
        term.trace = DerivationTrace{start, std::move(steps)};
        result.terminations.push_back(std::move(term));
        continue;
      }
      for (auto& [t, next] : expansions[i]) {
        if (static_cast<int>(visited.size()) >= limit) {
          result.exhausted = false;
          continue;
        }
        const std::string key = config_key(next);
        if (visited.insert(key).second) nodes.push_back({next, static_cast<int>(ni), t});
      }
    }
    frontier_begin = frontier_end;
  }
  result.explored = static_cast<int>(visited.size());
  return result;
}

// ---------------------------------------------------------------------------
// Replay

std::optional<Configuration> apply_transition(const Configuration& c, const Transition& t) {
  const int p = t.position;
  switch (t.rule) {
    case RuleTag::ContractionR:
    case RuleTag::RAxiom:
    case RuleTag::RCut:
    case RuleTag::RAndLeft:
    case RuleTag::RAndRight:
    case RuleTag::ROr:
    case RuleTag::RImp:
    case RuleTag::RForall:
    case RuleTag::RExists: {
      if (p < 0 || p >= static_cast<int>(c.gamma.size())) return std::nullopt;
      return Configuration{c.delta, normalize_gamma(without(c.gamma, p))};
    }
    case RuleTag::RNeg: {
      if (p < 0 || p >= static_cast<int>(c.gamma.size())) return std::nullopt;
      if (!neg_expand_applicable(c.gamma[static_cast<std::size_t>(p)])) return std::nullopt;
      std::vector<Formula> g = c.gamma;
      g[static_cast<std::size_t>(p)] = neg_expand(g[static_cast<std::size_t>(p)]);
      return Configuration{c.delta, normalize_gamma(g)};
    }
    case RuleTag::ContractionL: {
      if (p < 0 || p >= static_cast<int>(c.delta.literals.size())) return std::nullopt;
      std::vector<Formula> d = c.delta.literals;
      d.erase(d.begin() + p);
      return Configuration{RCondition::make(d), c.gamma};
    }
    case RuleTag::ExchangeL:
    case RuleTag::ExchangeR:
      return c;  // canonical representation: exchanges are identities
  }
  return std::nullopt;
}

namespace {

bool verify_subderivation(const Configuration& parent, int position, const Formula& side,
                          const SubDerivation& sd, const Budget& b, std::string* why) {
  // Expected numerator: delta | side, (gamma without position). Numerator
  // gammas are sequences; steps act on position 0 and are applied without
  // contraction so a side formula may shadow a context law.
  std::vector<Formula> ctx;
  for (int i = 0; i < static_cast<int>(parent.gamma.size()); ++i)
    if (i != position) ctx.push_back(parent.gamma[static_cast<std::size_t>(i)]);
  std::vector<Formula> expect;
  expect.push_back(side);
  expect.insert(expect.end(), ctx.begin(), ctx.end());
  bool same = sd.start.gamma.size() == expect.size();
  for (std::size_t i = 0; same && i < expect.size(); ++i)
    same = alpha_equal(sd.start.gamma[i], expect[i]);
  if (!same) {
    if (why) *why = "sub-derivation starts from the wrong numerator";
    return false;
  }
  Configuration cur = sd.start;
  if (sd.steps.empty()) {
    if (why) *why = "empty sub-derivation";
    return false;
  }
  for (const auto& [t, recorded] : sd.steps) {
    if (t.position != 0) {
      if (why) *why = "sub-derivation step off its side formula";
      return false;
    }
    if (!verify_transition(cur, t, b, why)) return false;
    std::vector<Formula> g = cur.gamma;
    if (t.rule == RuleTag::RNeg) {
      g[0] = neg_expand(g[0]);
    } else {
      g.erase(g.begin());
    }
    Configuration next{cur.delta, std::move(g)};
    if (config_key(next) != config_key(recorded)) {
      if (why) *why = "sub-derivation step does not replay";
      return false;
    }
    cur = recorded;
  }
  if (config_key(cur) != config_key(Configuration{parent.delta, ctx})) {
    if (why) *why = "sub-derivation does not delete its side formula";
    return false;
  }
  return true;
}

}  // namespace

bool verify_transition(const Configuration& c, const Transition& t, const Budget& b, std::string* why) {
  const int p = t.position;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (t.rule == RuleTag::ContractionL || t.rule == RuleTag::ContractionR || t.rule == RuleTag::ExchangeL ||
      t.rule == RuleTag::ExchangeR)
    return true;
  if (p < 0 || p >= static_cast<int>(c.gamma.size())) return fail("position out of range");
  const Formula& law = c.gamma[static_cast<std::size_t>(p)];

  switch (t.rule) {
    case RuleTag::RAxiom: {
      for (const Formula& d : c.delta.literals)
        if (axiom_matches(d, law)) return true;
      return fail("axiom: no rejected fact matches " + to_string(law));
    }
    case RuleTag::RNeg:
      return neg_expand_applicable(law) ? true : fail("neg: not expandable");
    case RuleTag::RCut: {
      if (!t.cut) return fail("cut: witnesses missing");
      const auto& w = *t.cut;
      bool target_ok = false;
      for (const Formula& d : c.delta.literals)
        if (alpha_equal(complement(d), w.target)) target_ok = true;
      if (!target_ok) return fail("cut: target literal not rejected by delta");
      std::string diag;
      if (!check_proof_tree(w.first, diag)) return fail("cut: first tree invalid: " + diag);
      if (!check_proof_tree(w.second, diag)) return fail("cut: second tree invalid: " + diag);
      // Conclusions must match the recorded partition.
      std::vector<Formula> ant1;
      for (int i : w.gamma1) {
        if (i < 0 || i >= static_cast<int>(c.gamma.size()) || i == p) return fail("cut: bad partition");
        ant1.push_back(c.gamma[static_cast<std::size_t>(i)]);
      }
      ant1.push_back(law);
      if (exact_key(w.first.sequent) != exact_key(Sequent{ant1, w.lemma}))
        return fail("cut: first sequent mismatch");
      std::vector<Formula> ant2;
      ant2.push_back(w.lemma);
      for (int i : w.gamma2) {
        if (i < 0 || i >= static_cast<int>(c.gamma.size()) || i == p) return fail("cut: bad partition");
        ant2.push_back(c.gamma[static_cast<std::size_t>(i)]);
      }
      if (exact_key(w.second.sequent) != exact_key(Sequent{ant2, w.target}))
        return fail("cut: second sequent mismatch");
      if (!is_necessary_premise(law, w.first, {law}, w.lemma))
        return fail("cut: eliminated law is not a necessary premise of the lemma");
      if (!is_necessary_premise(w.lemma, w.second, {w.lemma}, w.target))
        return fail("cut: lemma is not a necessary premise of the target");
      return true;
    }
    case RuleTag::RAndLeft:
    case RuleTag::RAndRight: {
      if (law.kind != Formula::Kind::Conjunction) return fail("and: not a conjunction");
      if (t.subs.size() != 1) return fail("and: expected one sub-derivation");
      const Formula& side = t.rule == RuleTag::RAndLeft ? law.sub[0] : law.sub[1];
      return verify_subderivation(c, p, side, *t.subs[0], b, why);
    }
    case RuleTag::ROr: {
      if (law.kind != Formula::Kind::Disjunction) return fail("or: not a disjunction");
      if (t.subs.size() != 2) return fail("or: expected two sub-derivations");
      return verify_subderivation(c, p, law.sub[0], *t.subs[0], b, why) &&
             verify_subderivation(c, p, law.sub[1], *t.subs[1], b, why);
    }
    case RuleTag::RImp: {
      if (law.kind != Formula::Kind::Implication) return fail("imp: not an implication");
      if (t.subs.size() != 2) return fail("imp: expected two sub-derivations");
      return verify_subderivation(c, p, neg(law.sub[0]), *t.subs[0], b, why) &&
             verify_subderivation(c, p, law.sub[1], *t.subs[1], b, why);
    }
    case RuleTag::RForall: {
      if (law.kind != Formula::Kind::Universal || !t.witness_term) return fail("forall: shape/witness");
      if (t.subs.size() != 1) return fail("forall: expected one sub-derivation");
      return verify_subderivation(c, p, substitute(law.sub[0], law.name, *t.witness_term), *t.subs[0], b,
                                  why);
    }
    case RuleTag::RExists: {
      if (law.kind != Formula::Kind::Existential || t.eigen.empty()) return fail("exists: shape/eigen");
      const Signature sig = config_signature(c);
      if (sig.constants.count(t.eigen) || sig.functions.count(t.eigen) || sig.predicates.count(t.eigen) ||
          sig.variables.count(t.eigen))
        return fail("exists: eigenvariable occurs in the configuration");
      if (t.subs.size() != 1) return fail("exists: expected one sub-derivation");
      return verify_subderivation(c, p, substitute(law.sub[0], law.name, cst(t.eigen)), *t.subs[0], b, why);
    }
    default:
      return fail("unexpected rule");
  }
}

bool replay_trace(const DerivationTrace& trace, const Budget& b, std::string* why) {
  Configuration cur = trace.start;
  for (const auto& [t, recorded] : trace.steps) {
    if (!verify_transition(cur, t, b, why)) return false;
    auto next = apply_transition(cur, t);
    if (!next || config_key(*next) != config_key(recorded)) {
      if (why) *why = "step does not reproduce the recorded configuration";
      return false;
    }
    cur = recorded;
  }
  return true;
}

}  // namespace rcalc
