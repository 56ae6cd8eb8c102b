#ifndef RCALC_PARSE_HPP
#define RCALC_PARSE_HPP

#include <optional>
#include <set>
#include <string>

#include "rcalc/syntax.hpp"

namespace rcalc {

// Concrete syntax (ASCII):
//   ~ negation, & conjunction, | disjunction, -> implication (right-assoc),
//   forall x. / exists x. (body extends maximally right), = equality,
//   parentheses for grouping. Precedence: ~ > & > | > ->.
//
// Identifier classification in term position: quantifier-bound names and
// names in `variables` parse as variables; in strict mode every other symbol
// must be declared; otherwise unbound term identifiers parse as variables
// (laws are closed into sentences later by close_free_variables).
struct ParseOptions {
  std::set<std::string> variables;
  std::optional<Signature> declared;  // set => strict: undeclared symbols are errors
};

// Returns the alpha-canonical AST. Throws ParseError / ArityError.
Formula parse_formula(const std::string& text);
Formula parse_formula(const std::string& text, const ParseOptions& opts);

}  // namespace rcalc

#endif
