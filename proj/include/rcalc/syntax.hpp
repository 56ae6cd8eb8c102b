#ifndef RCALC_SYNTAX_HPP
#define RCALC_SYNTAX_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcalc {

// Errors thrown by the syntax layer. Parse errors carry a byte offset into
// the source text; arity errors name the offending symbol.
struct SyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : SyntaxError {
  ParseError(const std::string& msg, std::size_t position)
      : SyntaxError(msg + " (at offset " + std::to_string(position) + ")"), pos(position) {}
  std::size_t pos;
};
struct ArityError : SyntaxError {
  ArityError(const std::string& sym, int seen, int expected)
      : SyntaxError("arity mismatch for symbol '" + sym + "': used with " + std::to_string(seen) +
                    " argument(s), elsewhere " + std::to_string(expected)),
        symbol(sym) {}
  std::string symbol;
};
struct NotApplicable : SyntaxError {
  using SyntaxError::SyntaxError;
};

// First-order terms. Plain value trees: immutable after construction in
// practice, cheap to compare, safe to share across threads.
struct Term {
  enum class Kind { Variable, Constant, Application };
  Kind kind = Kind::Constant;
  std::string name;
  std::vector<Term> args;  // Application only, never empty there

  bool operator==(const Term&) const = default;
};

Term var(std::string name);
Term cst(std::string name);
Term app(std::string fn, std::vector<Term> args);

struct Formula {
  enum class Kind {
    Atom,         // name = predicate, terms = arguments (possibly none)
    Equality,     // terms = {lhs, rhs}
    Negation,     // sub = {body}
    Conjunction,  // sub = {lhs, rhs}
    Disjunction,
    Implication,
    Universal,    // name = bound variable, sub = {body}
    Existential
  };
  Kind kind = Kind::Atom;
  std::string name;
  std::vector<Term> terms;
  std::vector<Formula> sub;

  bool operator==(const Formula&) const = default;
};

Formula atom(std::string pred, std::vector<Term> args = {});
Formula eq(Term lhs, Term rhs);
Formula neg(Formula body);
Formula conj(Formula lhs, Formula rhs);
Formula disj(Formula lhs, Formula rhs);
Formula implies(Formula lhs, Formula rhs);
Formula forall(std::string v, Formula body);
Formula exists(std::string v, Formula body);

// Rendering with minimal parentheses. Precedence: ~ > & > | > ->, with ->
// right-associative and quantifier bodies extending maximally right.
std::string to_string(const Term& t);
std::string to_string(const Formula& f);

// Signature bookkeeping: arities must stay consistent across a problem.
struct Signature {
  std::map<std::string, int> predicates;
  std::map<std::string, int> functions;
  std::set<std::string> constants;
  std::set<std::string> variables;  // seen free or bound

  void note_predicate(const std::string& name, int arity);
  void note_function(const std::string& name, int arity);
  void merge(const Signature& other);
};

Signature signature_of(const Formula& f);
Signature signature_of(const std::vector<Formula>& fs);

std::set<std::string> free_variables(const Term& t);
std::set<std::string> free_variables(const Formula& f);
bool is_sentence(const Formula& f);

// Literal = atom/equality or the negation of one.
bool is_literal(const Formula& f);
// ~A for atoms, A for ~A. Throws NotApplicable on non-literals.
Formula complement(const Formula& literal);

// Capture-avoiding substitution of term t for free occurrences of x.
Term substitute(const Term& in, const std::string& x, const Term& t);
Formula substitute(const Formula& in, const std::string& x, const Term& t);

// Rename binders so every quantifier in the formula binds a distinct name
// that clashes with no free variable. Deterministic and idempotent; names
// are kept when already unique, otherwise primes are appended.
Formula canonicalize(const Formula& f);

// Alpha-equivalence and a stable key for maps/sets (binders renamed to a
// positional scheme, then printed).
bool alpha_equal(const Formula& a, const Formula& b);
std::string alpha_key(const Formula& f);

// Sentence identity: P and Q are the same sentence iff P<->Q is a tautology
// of the propositional skeleton (atoms, equalities and quantified subformulas
// abstracted as letters, alpha-equivalent ones sharing a letter).
bool sentence_equal(const Formula& p, const Formula& q);

// Structural size: atoms and equalities count 1, each connective or
// quantifier adds 1.
int rank(const Formula& f);
// Rank of the conjunction of a law sequence.
int rank(const std::vector<Formula>& laws);

// One step of the negation-expansion table: ~(B&C), ~(B|C), ~~B, ~(B->C),
// ~forall, ~exists. Pushes the negation one level; throws NotApplicable on
// any other shape.
Formula neg_expand(const Formula& f);
bool neg_expand_applicable(const Formula& f);

// Replace free variables by constants of the same spelling (problem-level
// closure of laws into sentences).
Formula close_free_variables(const Formula& f);

// All ground terms over the constants/functions occurring in the given
// formulas, nested at most `depth` levels. When no constant occurs, a fresh
// one is injected so the set is never empty. Sorted by (size, print).
std::vector<Term> term_universe(const std::vector<Formula>& fs, int depth);
std::vector<Term> term_universe(const Signature& sig, int depth);

// All distinct subformulas (including the formulas themselves), and the
// subset of them that are sentences (used as lemma candidates).
std::vector<Formula> subformulas(const Formula& f);
std::vector<Formula> closed_subformula_pool(const std::vector<Formula>& fs);

bool is_ground(const Term& t);
bool is_ground(const Formula& f);

}  // namespace rcalc

#endif
