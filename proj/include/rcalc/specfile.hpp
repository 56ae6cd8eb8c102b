#ifndef RCALC_SPECFILE_HPP
#define RCALC_SPECFILE_HPP

#include <optional>
#include <string>
#include <vector>

#include "rcalc/parse.hpp"
#include "rcalc/proof.hpp"

namespace rcalc {

struct SpecFileError : SyntaxError {
  using SyntaxError::SyntaxError;
};

// Line-oriented problem files with sections `decls:`, `laws:`, `reject:`,
// `budget:` and `#` comments:
//
//   decls:
//     var x, y
//     const c
//     func f/1
//     pred A/0, B/1
//   laws:
//     l1: forall x. (A -> B(x))
//   reject:
//     r1: ~A
//   budget:
//     depth 40
//     instantiations 4
//     term_depth 2
//     model_cap 3
//     limit 2000
//
// All symbols must be declared before use; names are unique. Declared
// variables occurring free in a law are closed into constants of the same
// spelling, so every stored law is a sentence.
struct SpecFile {
  Signature declared;
  std::vector<std::string> declared_vars;
  std::vector<std::pair<std::string, Formula>> laws;
  std::vector<std::pair<std::string, Formula>> rejections;
  Budget budget;
  int limit = 2000;

  std::vector<Formula> law_formulas() const;
  std::vector<Formula> rejection_formulas() const;
  Formula parse_goal(const std::string& text) const;  // same strict signature
};

SpecFile parse_specfile_text(const std::string& text);
SpecFile load_specfile(const std::string& path);
std::string write_specfile(const SpecFile& s);

// Compact budget override: "depth=40,inst=4,term=2,model=3,limit=2000".
void apply_budget_override(const std::string& spec, Budget& b, int& limit);

}  // namespace rcalc

#endif
