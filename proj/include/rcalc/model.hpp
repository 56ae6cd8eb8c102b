#ifndef RCALC_MODEL_HPP
#define RCALC_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcalc/syntax.hpp"

namespace rcalc {

struct UninterpretedSymbol : SyntaxError {
  using SyntaxError::SyntaxError;
};

// A finite structure over domain {0, ..., size-1}. Function tables are total;
// equality is interpreted as identity on domain elements.
struct FiniteModel {
  int size = 1;
  std::map<std::string, int> constants;
  // Tables in row-major mixed radix: args (a1..ak) at index a1*size^(k-1)+...+ak.
  std::map<std::string, std::vector<int>> functions;
  std::map<std::string, std::vector<char>> predicates;

  std::string describe() const;
};

using Environment = std::map<std::string, int>;

// Standard Tarskian truth over the finite domain; quantifiers range over the
// whole domain. Throws UninterpretedSymbol if the model lacks a symbol and
// the environment lacks a free variable.
bool evaluate(const FiniteModel& m, const Term& t, const Environment& env, int& out);
bool evaluate(const FiniteModel& m, const Formula& f, const Environment& env = {});

// The space of interpretations of a signature over a fixed domain size,
// indexable so scans can be chunked and parallelized deterministically.
struct ModelSpace {
  ModelSpace(Signature sig, int domain_size);

  // Total number of interpretations; nullopt when it overflows the guard.
  std::optional<std::uint64_t> count() const { return total_; }
  FiniteModel decode(std::uint64_t index) const;

  Signature signature;
  int size;

 private:
  struct Slot {
    enum class What { Constant, Function, Predicate } what;
    std::string name;
    std::uint64_t cells;  // table length
    std::uint64_t radix;  // choices per cell
  };
  std::vector<Slot> slots_;
  std::optional<std::uint64_t> total_;
};

// Smallest model (by domain size, then interpretation index) satisfying all
// of `require` and falsifying all of `forbid`. Scans sizes 1..max_size.
// The OpenMP path blocks the index range and reduces to the minimum hit,
// so serial and parallel agree exactly. `exhausted` reports whether every
// candidate was actually checked (space overflow => false).
std::optional<FiniteModel> find_model(const Signature& sig, const std::vector<Formula>& require,
                                      const std::vector<Formula>& forbid, int max_size,
                                      bool* exhausted = nullptr);

// All satisfying models up to max_size, in (size, index) order, capped.
std::vector<FiniteModel> all_models(const Signature& sig, const std::vector<Formula>& require,
                                    const std::vector<Formula>& forbid, int max_size,
                                    std::size_t cap, bool* exhausted = nullptr);

}  // namespace rcalc

#endif
