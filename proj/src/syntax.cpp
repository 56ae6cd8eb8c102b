#include "rcalc/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace rcalc {

Term var(std::string name) { return Term{Term::Kind::Variable, std::move(name), {}}; }
Term cst(std::string name) { return Term{Term::Kind::Constant, std::move(name), {}}; }
Term app(std::string fn, std::vector<Term> args) {
  if (args.empty()) throw SyntaxError("application of '" + fn + "' needs arguments");
  return Term{Term::Kind::Application, std::move(fn), std::move(args)};
}

Formula atom(std::string pred, std::vector<Term> args) {
  Formula f;
  f.kind = Formula::Kind::Atom;
  f.name = std::move(pred);
  f.terms = std::move(args);
  return f;
}
Formula eq(Term lhs, Term rhs) {
  Formula f;
  f.kind = Formula::Kind::Equality;
  f.terms = {std::move(lhs), std::move(rhs)};
  return f;
}
static Formula mk1(Formula::Kind k, Formula a) {
  Formula f;
  f.kind = k;
  f.sub = {std::move(a)};
  return f;
}
static Formula mk2(Formula::Kind k, Formula a, Formula b) {
  Formula f;
  f.kind = k;
  f.sub = {std::move(a), std::move(b)};
  return f;
}
Formula neg(Formula body) { return mk1(Formula::Kind::Negation, std::move(body)); }
Formula conj(Formula a, Formula b) { return mk2(Formula::Kind::Conjunction, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return mk2(Formula::Kind::Disjunction, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) { return mk2(Formula::Kind::Implication, std::move(a), std::move(b)); }
static Formula quant(Formula::Kind k, std::string v, Formula body) {
  Formula f;
  f.kind = k;
  f.name = std::move(v);
  f.sub = {std::move(body)};
  return f;
}
Formula forall(std::string v, Formula body) { return quant(Formula::Kind::Universal, std::move(v), std::move(body)); }
Formula exists(std::string v, Formula body) { return quant(Formula::Kind::Existential, std::move(v), std::move(body)); }

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Term& t) {
  if (t.kind != Term::Kind::Application) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t.args[i]);
  }
  return out + ")";
}

// Precedence levels: quantifier 0, -> 1, | 2, & 3, ~ 4, atom 5.
static int precedence(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Universal:
    case Formula::Kind::Existential: return 0;
    case Formula::Kind::Implication: return 1;
    case Formula::Kind::Disjunction: return 2;
    case Formula::Kind::Conjunction: return 3;
    case Formula::Kind::Negation: return 4;
    default: return 5;
  }
}

static void print(const Formula& f, int min_prec, std::string& out) {
  const int p = precedence(f);
  const bool parens = p < min_prec;
  if (parens) out += "(";
  switch (f.kind) {
    case Formula::Kind::Atom:
      out += f.name;
      if (!f.terms.empty()) {
        out += "(";
        for (std::size_t i = 0; i < f.terms.size(); ++i) {
          if (i) out += ", ";
          out += to_string(f.terms[i]);
        }
        out += ")";
      }
      break;
    case Formula::Kind::Equality:
      out += to_string(f.terms[0]) + " = " + to_string(f.terms[1]);
      break;
    case Formula::Kind::Negation:
      out += "~";
      print(f.sub[0], 4, out);
      break;
    case Formula::Kind::Conjunction:
      print(f.sub[0], 3, out);
      out += " & ";
      print(f.sub[1], 4, out);  // left-assoc
      break;
    case Formula::Kind::Disjunction:
      print(f.sub[0], 2, out);
      out += " | ";
      print(f.sub[1], 3, out);
      break;
    case Formula::Kind::Implication:
      print(f.sub[0], 2, out);  // right-assoc
      out += " -> ";
      print(f.sub[1], 1, out);
      break;
    case Formula::Kind::Universal:
    case Formula::Kind::Existential:
      out += (f.kind == Formula::Kind::Universal ? "forall " : "exists ");
      out += f.name + ". ";
      print(f.sub[0], 0, out);
      break;
  }
  if (parens) out += ")";
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Signature

void Signature::note_predicate(const std::string& name, int arity) {
  auto [it, inserted] = predicates.emplace(name, arity);
  if (!inserted && it->second != arity) throw ArityError(name, arity, it->second);
}
void Signature::note_function(const std::string& name, int arity) {
  auto [it, inserted] = functions.emplace(name, arity);
  if (!inserted && it->second != arity) throw ArityError(name, arity, it->second);
}
void Signature::merge(const Signature& other) {
  for (auto& [n, a] : other.predicates) note_predicate(n, a);
  for (auto& [n, a] : other.functions) note_function(n, a);
  constants.insert(other.constants.begin(), other.constants.end());
  variables.insert(other.variables.begin(), other.variables.end());
}

static void collect(const Term& t, Signature& sig) {
  switch (t.kind) {
    case Term::Kind::Variable: sig.variables.insert(t.name); break;
    case Term::Kind::Constant: sig.constants.insert(t.name); break;
    case Term::Kind::Application:
      sig.note_function(t.name, static_cast<int>(t.args.size()));
      for (const Term& a : t.args) collect(a, sig);
      break;
  }
}
static void collect(const Formula& f, Signature& sig) {
  if (f.kind == Formula::Kind::Atom) sig.note_predicate(f.name, static_cast<int>(f.terms.size()));
  for (const Term& t : f.terms) collect(t, sig);
  if (f.kind == Formula::Kind::Universal || f.kind == Formula::Kind::Existential) sig.variables.insert(f.name);
  for (const Formula& s : f.sub) collect(s, sig);
}

Signature signature_of(const Formula& f) {
  Signature sig;
  collect(f, sig);
  return sig;
}
Signature signature_of(const std::vector<Formula>& fs) {
  Signature sig;
  for (const Formula& f : fs) collect(f, sig);
  return sig;
}

// ---------------------------------------------------------------------------
// Free variables, groundness, literals

static void free_vars(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Variable) {
    if (!bound.count(t.name)) out.insert(t.name);
  }
  for (const Term& a : t.args) free_vars(a, bound, out);
}
static void free_vars(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  for (const Term& t : f.terms) free_vars(t, bound, out);
  if (f.kind == Formula::Kind::Universal || f.kind == Formula::Kind::Existential) {
    const bool was = bound.count(f.name) > 0;
    bound.insert(f.name);
    free_vars(f.sub[0], bound, out);
    if (!was) bound.erase(f.name);
  } else {
    for (const Formula& s : f.sub) free_vars(s, bound, out);
  }
}

std::set<std::string> free_variables(const Term& t) {
  std::set<std::string> bound, out;
  free_vars(t, bound, out);
  return out;
}
std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars(f, bound, out);
  return out;
}
bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

bool is_ground(const Term& t) {
  if (t.kind == Term::Kind::Variable) return false;
  for (const Term& a : t.args)
    if (!is_ground(a)) return false;
  return true;
}
bool is_ground(const Formula& f) {
  for (const Term& t : f.terms)
    if (!is_ground(t)) return false;
  for (const Formula& s : f.sub)
    if (!is_ground(s)) return false;
  return true;
}

bool is_literal(const Formula& f) {
  if (f.kind == Formula::Kind::Atom || f.kind == Formula::Kind::Equality) return true;
  if (f.kind == Formula::Kind::Negation)
    return f.sub[0].kind == Formula::Kind::Atom || f.sub[0].kind == Formula::Kind::Equality;
  return false;
}

Formula complement(const Formula& literal) {
  if (!is_literal(literal)) throw NotApplicable("complement: not a literal: " + to_string(literal));
  if (literal.kind == Formula::Kind::Negation) return literal.sub[0];
  return neg(literal);
}

// ---------------------------------------------------------------------------
// Substitution

Term substitute(const Term& in, const std::string& x, const Term& t) {
  switch (in.kind) {
    case Term::Kind::Variable: return in.name == x ? t : in;
    case Term::Kind::Constant: return in;
    case Term::Kind::Application: {
      std::vector<Term> args;
      args.reserve(in.args.size());
      for (const Term& a : in.args) args.push_back(substitute(a, x, t));
      return Term{Term::Kind::Application, in.name, std::move(args)};
    }
  }
  return in;
}

static std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  std::string n = std::move(base);
  while (taken.count(n)) n += "'";
  return n;
}

static Formula subst(const Formula& in, const std::string& x, const Term& t, const std::set<std::string>& avoid) {
  Formula out = in;
  switch (in.kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality:
      for (Term& tm : out.terms) tm = substitute(tm, x, t);
      return out;
    case Formula::Kind::Negation:
    case Formula::Kind::Conjunction:
    case Formula::Kind::Disjunction:
    case Formula::Kind::Implication:
      for (Formula& s : out.sub) s = subst(s, x, t, avoid);
      return out;
    case Formula::Kind::Universal:
    case Formula::Kind::Existential: {
      if (in.name == x) return out;  // x bound here, nothing to do below
      if (avoid.count(in.name)) {
        // Binder would capture a free variable of t: rename it first.
        std::set<std::string> taken = avoid;
        auto fv = free_variables(in.sub[0]);
        taken.insert(fv.begin(), fv.end());
        taken.insert(x);
        const std::string nn = fresh_name(in.name, taken);
        Formula renamed_body = subst(in.sub[0], in.name, var(nn), {});
        out.name = nn;
        out.sub[0] = subst(renamed_body, x, t, avoid);
      } else {
        out.sub[0] = subst(in.sub[0], x, t, avoid);
      }
      return out;
    }
  }
  return out;
}

Formula substitute(const Formula& in, const std::string& x, const Term& t) {
  return canonicalize(subst(in, x, t, free_variables(t)));
}

// ---------------------------------------------------------------------------
// Canonicalization / alpha-equivalence

static Formula canon(const Formula& f, std::map<std::string, std::string>& renaming,
                     std::set<std::string>& used, const std::set<std::string>& frees) {
  Formula out = f;
  switch (f.kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality: {
      for (Term& t : out.terms) {
        std::function<void(Term&)> fix = [&](Term& tm) {
          if (tm.kind == Term::Kind::Variable) {
            auto it = renaming.find(tm.name);
            if (it != renaming.end()) tm.name = it->second;
          }
          for (Term& a : tm.args) fix(a);
        };
        fix(t);
      }
      return out;
    }
    case Formula::Kind::Universal:
    case Formula::Kind::Existential: {
      std::set<std::string> taken = used;
      taken.insert(frees.begin(), frees.end());
      const std::string nn = fresh_name(f.name, taken);
      used.insert(nn);
      auto prev = renaming.find(f.name);
      std::optional<std::string> saved;
      if (prev != renaming.end()) saved = prev->second;
      renaming[f.name] = nn;
      out.name = nn;
      out.sub[0] = canon(f.sub[0], renaming, used, frees);
      if (saved)
        renaming[f.name] = *saved;
      else
        renaming.erase(f.name);
      return out;
    }
    default:
      for (Formula& s : out.sub) s = canon(s, renaming, used, frees);
      return out;
  }
}

Formula canonicalize(const Formula& f) {
  std::map<std::string, std::string> renaming;
  std::set<std::string> used;
  const std::set<std::string> frees = free_variables(f);
  return canon(f, renaming, used, frees);
}

// Positional binder names make the print an alpha-invariant key.
static Formula debruijn(const Formula& f, std::map<std::string, std::string>& renaming, int& counter) {
  Formula out = f;
  switch (f.kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality: {
      for (Term& t : out.terms) {
        std::function<void(Term&)> fix = [&](Term& tm) {
          if (tm.kind == Term::Kind::Variable) {
            auto it = renaming.find(tm.name);
            if (it != renaming.end()) tm.name = it->second;
          }
          for (Term& a : tm.args) fix(a);
        };
        fix(t);
      }
      return out;
    }
    case Formula::Kind::Universal:
    case Formula::Kind::Existential: {
      const std::string nn = "$" + std::to_string(counter++);
      auto prev = renaming.find(f.name);
      std::optional<std::string> saved;
      if (prev != renaming.end()) saved = prev->second;
      renaming[f.name] = nn;
      out.name = nn;
      out.sub[0] = debruijn(f.sub[0], renaming, counter);
      if (saved)
        renaming[f.name] = *saved;
      else
        renaming.erase(f.name);
      return out;
    }
    default:
      for (Formula& s : out.sub) s = debruijn(s, renaming, counter);
      return out;
  }
}

std::string alpha_key(const Formula& f) {
  std::map<std::string, std::string> renaming;
  int counter = 0;
  return to_string(debruijn(f, renaming, counter));
}

bool alpha_equal(const Formula& a, const Formula& b) { return alpha_key(a) == alpha_key(b); }

// ---------------------------------------------------------------------------
// Sentence identity via the propositional skeleton

namespace {

struct Skeleton {
  // 0 = letter index encoded in `letter`, else boolean structure.
  enum class Op { Letter, Not, And, Or, Imp } op;
  int letter = -1;
  std::vector<Skeleton> sub;
};

Skeleton abstract(const Formula& f, std::map<std::string, int>& letters) {
  switch (f.kind) {
    case Formula::Kind::Negation:
      return {Skeleton::Op::Not, -1, {abstract(f.sub[0], letters)}};
    case Formula::Kind::Conjunction:
      return {Skeleton::Op::And, -1, {abstract(f.sub[0], letters), abstract(f.sub[1], letters)}};
    case Formula::Kind::Disjunction:
      return {Skeleton::Op::Or, -1, {abstract(f.sub[0], letters), abstract(f.sub[1], letters)}};
    case Formula::Kind::Implication:
      return {Skeleton::Op::Imp, -1, {abstract(f.sub[0], letters), abstract(f.sub[1], letters)}};
    default: {
      const std::string key = alpha_key(f);
      auto [it, _] = letters.emplace(key, static_cast<int>(letters.size()));
      return {Skeleton::Op::Letter, it->second, {}};
    }
  }
}

bool eval(const Skeleton& s, unsigned bits) {
  switch (s.op) {
    case Skeleton::Op::Letter: return (bits >> s.letter) & 1u;
    case Skeleton::Op::Not: return !eval(s.sub[0], bits);
    case Skeleton::Op::And: return eval(s.sub[0], bits) && eval(s.sub[1], bits);
    case Skeleton::Op::Or: return eval(s.sub[0], bits) || eval(s.sub[1], bits);
    case Skeleton::Op::Imp: return !eval(s.sub[0], bits) || eval(s.sub[1], bits);
  }
  return false;
}

}  // namespace

bool sentence_equal(const Formula& p, const Formula& q) {
  std::map<std::string, int> letters;
  const Skeleton sp = abstract(p, letters);
  const Skeleton sq = abstract(q, letters);
  const std::size_t n = letters.size();
  if (n > 22) return alpha_equal(p, q);  // skeletons this wide never arise here
  for (unsigned bits = 0; bits < (1u << n); ++bits)
    if (eval(sp, bits) != eval(sq, bits)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rank

int rank(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality: return 1;
    default: {
      int r = 1;
      for (const Formula& s : f.sub) r += rank(s);
      return r;
    }
  }
}

int rank(const std::vector<Formula>& laws) {
  if (laws.empty()) return 0;
  int r = 0;
  for (const Formula& f : laws) r += rank(f);
  return r + static_cast<int>(laws.size()) - 1;  // the joining conjunctions
}

// ---------------------------------------------------------------------------
// Negation expansion table

bool neg_expand_applicable(const Formula& f) {
  if (f.kind != Formula::Kind::Negation) return false;
  switch (f.sub[0].kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality: return false;
    default: return true;
  }
}

Formula neg_expand(const Formula& f) {
  if (f.kind != Formula::Kind::Negation)
    throw NotApplicable("neg_expand: not a negation: " + to_string(f));
  const Formula& b = f.sub[0];
  switch (b.kind) {
    case Formula::Kind::Conjunction: return disj(neg(b.sub[0]), neg(b.sub[1]));
    case Formula::Kind::Disjunction: return conj(neg(b.sub[0]), neg(b.sub[1]));
    case Formula::Kind::Negation: return b.sub[0];
    case Formula::Kind::Implication: return conj(b.sub[0], neg(b.sub[1]));
    case Formula::Kind::Universal: return exists(b.name, neg(b.sub[0]));
    case Formula::Kind::Existential: return forall(b.name, neg(b.sub[0]));
    default: throw NotApplicable("neg_expand: negation of a literal: " + to_string(f));
  }
}

// ---------------------------------------------------------------------------
// Closure and term universe

static Term close_term(const Term& t, const std::set<std::string>& frees) {
  if (t.kind == Term::Kind::Variable && frees.count(t.name)) return cst(t.name);
  Term out = t;
  for (Term& a : out.args) a = close_term(a, frees);
  return out;
}
static Formula close_fm(const Formula& f, std::set<std::string> frees) {
  Formula out = f;
  if (f.kind == Formula::Kind::Universal || f.kind == Formula::Kind::Existential) frees.erase(f.name);
  for (Term& t : out.terms) t = close_term(t, frees);
  for (Formula& s : out.sub) s = close_fm(s, frees);
  return out;
}

Formula close_free_variables(const Formula& f) { return close_fm(f, free_variables(f)); }

static int term_size(const Term& t) {
  int n = 1;
  for (const Term& a : t.args) n += term_size(a);
  return n;
}

std::vector<Term> term_universe(const Signature& sig, int depth) {
  std::vector<std::string> consts(sig.constants.begin(), sig.constants.end());
  if (consts.empty()) {
    std::string injected = "c0";
    while (sig.functions.count(injected) || sig.predicates.count(injected)) injected += "'";
    consts.push_back(injected);
  }
  std::vector<Term> level;
  for (const std::string& c : consts) level.push_back(cst(c));
  std::vector<Term> all = level;
  for (int d = 0; d < depth; ++d) {
    std::vector<Term> next;
    for (const auto& [fn, arity] : sig.functions) {
      // all argument tuples over `all`, at least one from the newest level
      std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
      const std::size_t n = all.size();
      if (n == 0) continue;
      while (true) {
        std::vector<Term> args;
        args.reserve(idx.size());
        for (std::size_t i : idx) args.push_back(all[i]);
        Term cand = app(fn, std::move(args));
        if (std::find(all.begin(), all.end(), cand) == all.end() &&
            std::find(next.begin(), next.end(), cand) == next.end())
          next.push_back(std::move(cand));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    if (next.empty()) break;
  }
  std::sort(all.begin(), all.end(), [](const Term& a, const Term& b) {
    const int sa = term_size(a), sb = term_size(b);
    if (sa != sb) return sa < sb;
    return to_string(a) < to_string(b);
  });
  return all;
}

std::vector<Term> term_universe(const std::vector<Formula>& fs, int depth) {
  return term_universe(signature_of(fs), depth);
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    const std::string key = alpha_key(g);
    if (seen.insert(key).second) out.push_back(g);
    for (const Formula& s : g.sub) walk(s);
  };
  walk(f);
  return out;
}

std::vector<Formula> closed_subformula_pool(const std::vector<Formula>& fs) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  for (const Formula& f : fs)
    for (const Formula& s : subformulas(f))
      if (is_sentence(s) && seen.insert(alpha_key(s)).second) out.push_back(s);
  std::sort(out.begin(), out.end(), [](const Formula& a, const Formula& b) {
    const int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
    return to_string(a) < to_string(b);
  });
  return out;
}

}  // namespace rcalc
