#ifndef RCALC_TEST_UTIL_HPP
#define RCALC_TEST_UTIL_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcalc/parse.hpp"
#include "rcalc/syntax.hpp"

namespace rcalc::testutil {

inline Formula F(const std::string& text) { return parse_formula(text); }
// Parse and close free variables into constants (laws are sentences).
inline Formula G(const std::string& text) { return close_free_variables(parse_formula(text)); }

// Independent truth-table oracle for nullary-atom formulas: a direct
// recursive evaluator over assignments, sharing nothing with FiniteModel.
inline bool tt_eval(const Formula& f, const std::map<std::string, bool>& env) {
  switch (f.kind) {
    case Formula::Kind::Atom: return env.at(f.name);
    case Formula::Kind::Negation: return !tt_eval(f.sub[0], env);
    case Formula::Kind::Conjunction: return tt_eval(f.sub[0], env) && tt_eval(f.sub[1], env);
    case Formula::Kind::Disjunction: return tt_eval(f.sub[0], env) || tt_eval(f.sub[1], env);
    case Formula::Kind::Implication: return !tt_eval(f.sub[0], env) || tt_eval(f.sub[1], env);
    default: throw std::runtime_error("tt_eval: propositional formulas only");
  }
}

inline std::vector<std::string> tt_atoms(const Formula& f) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind == Formula::Kind::Atom) {
      if (std::find(out.begin(), out.end(), g.name) == out.end()) out.push_back(g.name);
      return;
    }
    for (const Formula& s : g.sub) walk(s);
  };
  walk(f);
  return out;
}

// Classical validity of antecedent |- succedent over nullary atoms.
inline bool tt_valid(const std::vector<Formula>& antecedent, const Formula& succedent) {
  std::vector<std::string> atoms;
  auto merge = [&atoms](const Formula& f) {
    for (const std::string& a : tt_atoms(f))
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  };
  for (const Formula& f : antecedent) merge(f);
  merge(succedent);
  const std::size_t n = atoms.size();
  for (unsigned bits = 0; bits < (1u << n); ++bits) {
    std::map<std::string, bool> env;
    for (std::size_t i = 0; i < n; ++i) env[atoms[i]] = (bits >> i) & 1u;
    bool all = true;
    for (const Formula& f : antecedent)
      if (!tt_eval(f, env)) {
        all = false;
        break;
      }
    if (all && !tt_eval(succedent, env)) return false;
  }
  return true;
}

// Is the set satisfiable (truth tables)?
inline bool tt_satisfiable(const std::vector<Formula>& fs) {
  std::vector<std::string> atoms;
  for (const Formula& f : fs)
    for (const std::string& a : tt_atoms(f))
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  const std::size_t n = atoms.size();
  for (unsigned bits = 0; bits < (1u << n); ++bits) {
    std::map<std::string, bool> env;
    for (std::size_t i = 0; i < n; ++i) env[atoms[i]] = (bits >> i) & 1u;
    bool all = true;
    for (const Formula& f : fs)
      if (!tt_eval(f, env)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

// Random propositional formulas; negation only at the literal level when
// literal_negations_only is set.
inline Formula random_prop(std::mt19937& rng, const std::vector<std::string>& atoms, int depth,
                           bool literal_negations_only = false) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(atoms.size()) - 1);
  auto literal = [&]() {
    Formula a = atom(atoms[static_cast<std::size_t>(pick(rng))]);
    return std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? neg(a) : a;
  };
  if (depth == 0) return literal();
  const int top = literal_negations_only ? 3 : 4;
  switch (std::uniform_int_distribution<int>(0, top)(rng)) {
    case 0: return conj(random_prop(rng, atoms, depth - 1, literal_negations_only),
                        random_prop(rng, atoms, depth - 1, literal_negations_only));
    case 1: return disj(random_prop(rng, atoms, depth - 1, literal_negations_only),
                        random_prop(rng, atoms, depth - 1, literal_negations_only));
    case 2: return implies(random_prop(rng, atoms, depth - 1, literal_negations_only),
                           random_prop(rng, atoms, depth - 1, literal_negations_only));
    case 3: return literal();
    default: return neg(random_prop(rng, atoms, depth - 1, false));
  }
}

}  // namespace rcalc::testutil

#endif
