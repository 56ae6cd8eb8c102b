#include "rcalc/model.hpp"

#include <cmath>
#include <sstream>

#include "rcalc/runtime.hpp"

namespace rcalc {

std::string FiniteModel::describe() const {
  std::ostringstream os;
  os << "domain size " << size;
  for (const auto& [n, v] : constants) os << "; " << n << " = " << v;
  for (const auto& [n, table] : functions) {
    os << "; " << n << ":";
    for (std::size_t i = 0; i < table.size(); ++i) os << (i ? "," : " ") << table[i];
  }
  for (const auto& [n, table] : predicates) {
    os << "; " << n << ":";
    if (table.size() == 1) {
      os << (table[0] ? " true" : " false");
    } else {
      os << " {";
      bool first = true;
      for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i]) {
          if (!first) os << ",";
          os << i;
          first = false;
        }
      os << "}";
    }
  }
  return os.str();
}

bool evaluate(const FiniteModel& m, const Term& t, const Environment& env, int& out) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      auto it = env.find(t.name);
      if (it == env.end()) throw UninterpretedSymbol("unassigned variable '" + t.name + "'");
      out = it->second;
      return true;
    }
    case Term::Kind::Constant: {
      auto it = m.constants.find(t.name);
      if (it == m.constants.end()) throw UninterpretedSymbol("uninterpreted constant '" + t.name + "'");
      out = it->second;
      return true;
    }
    case Term::Kind::Application: {
      auto it = m.functions.find(t.name);
      if (it == m.functions.end()) throw UninterpretedSymbol("uninterpreted function '" + t.name + "'");
      std::uint64_t idx = 0;
      for (const Term& a : t.args) {
        int v = 0;
        evaluate(m, a, env, v);
        idx = idx * static_cast<std::uint64_t>(m.size) + static_cast<std::uint64_t>(v);
      }
      out = it->second.at(idx);
      return true;
    }
  }
  return false;
}

bool evaluate(const FiniteModel& m, const Formula& f, const Environment& env) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      auto it = m.predicates.find(f.name);
      if (it == m.predicates.end()) throw UninterpretedSymbol("uninterpreted predicate '" + f.name + "'");
      std::uint64_t idx = 0;
      for (const Term& a : f.terms) {
        int v = 0;
        evaluate(m, a, env, v);
        idx = idx * static_cast<std::uint64_t>(m.size) + static_cast<std::uint64_t>(v);
      }
      return it->second.at(idx) != 0;
    }
    case Formula::Kind::Equality: {
      int l = 0, r = 0;
      evaluate(m, f.terms[0], env, l);
      evaluate(m, f.terms[1], env, r);
      return l == r;
    }
    case Formula::Kind::Negation: return !evaluate(m, f.sub[0], env);
    case Formula::Kind::Conjunction: return evaluate(m, f.sub[0], env) && evaluate(m, f.sub[1], env);
    case Formula::Kind::Disjunction: return evaluate(m, f.sub[0], env) || evaluate(m, f.sub[1], env);
    case Formula::Kind::Implication: return !evaluate(m, f.sub[0], env) || evaluate(m, f.sub[1], env);
    case Formula::Kind::Universal: {
      Environment e = env;
      for (int d = 0; d < m.size; ++d) {
        e[f.name] = d;
        if (!evaluate(m, f.sub[0], e)) return false;
      }
      return true;
    }
    case Formula::Kind::Existential: {
      Environment e = env;
      for (int d = 0; d < m.size; ++d) {
        e[f.name] = d;
        if (evaluate(m, f.sub[0], e)) return true;
      }
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// ModelSpace

namespace {
constexpr std::uint64_t kSpaceGuard = 1ull << 34;  // refuse to scan beyond this

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > kSpaceGuard / base) return std::nullopt;
    r *= base;
  }
  return r;
}
}  // namespace

ModelSpace::ModelSpace(Signature sig, int domain_size) : signature(std::move(sig)), size(domain_size) {
  const std::uint64_t k = static_cast<std::uint64_t>(size);
  std::uint64_t total = 1;
  bool overflow = false;
  auto add_slot = [&](Slot s) {
    auto cells_choices = checked_pow(s.radix, s.cells);
    if (!cells_choices || (*cells_choices != 0 && total > kSpaceGuard / std::max<std::uint64_t>(*cells_choices, 1))) {
      overflow = true;
    } else {
      total *= std::max<std::uint64_t>(*cells_choices, 1);
    }
    slots_.push_back(std::move(s));
  };
  for (const std::string& c : signature.constants) add_slot({Slot::What::Constant, c, 1, k});
  for (const auto& [n, arity] : signature.functions) {
    auto cells = checked_pow(k, static_cast<std::uint64_t>(arity));
    if (!cells) {
      overflow = true;
      cells = kSpaceGuard;
    }
    add_slot({Slot::What::Function, n, *cells, k});
  }
  for (const auto& [n, arity] : signature.predicates) {
    auto cells = checked_pow(k, static_cast<std::uint64_t>(arity));
    if (!cells) {
      overflow = true;
      cells = kSpaceGuard;
    }
    add_slot({Slot::What::Predicate, n, *cells, 2});
  }
  total_ = overflow ? std::nullopt : std::optional<std::uint64_t>(total);
}

FiniteModel ModelSpace::decode(std::uint64_t index) const {
  FiniteModel m;
  m.size = size;
  for (const Slot& s : slots_) {
    switch (s.what) {
      case Slot::What::Constant: {
        m.constants[s.name] = static_cast<int>(index % s.radix);
        index /= s.radix;
        break;
      }
      case Slot::What::Function: {
        std::vector<int> table(s.cells);
        for (std::uint64_t i = 0; i < s.cells; ++i) {
          table[i] = static_cast<int>(index % s.radix);
          index /= s.radix;
        }
        m.functions[s.name] = std::move(table);
        break;
      }
      case Slot::What::Predicate: {
        std::vector<char> table(s.cells);
        for (std::uint64_t i = 0; i < s.cells; ++i) {
          table[i] = static_cast<char>(index % 2);
          index /= 2;
        }
        m.predicates[s.name] = std::move(table);
        break;
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Scans

namespace {

bool satisfies(const FiniteModel& m, const std::vector<Formula>& require, const std::vector<Formula>& forbid) {
  for (const Formula& f : require)
    if (!evaluate(m, f)) return false;
  for (const Formula& f : forbid)
    if (evaluate(m, f)) return false;
  return true;
}

// Nullary-only signatures make every domain size equivalent; scanning size 1
// covers all truth assignments.
bool propositional_only(const Signature& sig) {
  if (!sig.constants.empty() || !sig.functions.empty() || !sig.variables.empty()) return false;
  for (const auto& [n, a] : sig.predicates)
    if (a != 0) return false;
  return true;
}

constexpr std::uint64_t kBlock = 1 << 14;

std::optional<std::uint64_t> scan_size(const ModelSpace& space, const std::vector<Formula>& require,
                                       const std::vector<Formula>& forbid) {
  const auto total = space.count();
  if (!total) return std::nullopt;  // caller records non-exhaustive
  for (std::uint64_t base = 0; base < *total; base += kBlock) {
    const std::uint64_t end = std::min(*total, base + kBlock);
    std::uint64_t hit = UINT64_MAX;
    if (runtime::parallel()) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : hit)
#endif
      for (long long i = static_cast<long long>(base); i < static_cast<long long>(end); ++i) {
        const FiniteModel m = space.decode(static_cast<std::uint64_t>(i));
        if (satisfies(m, require, forbid)) hit = std::min<std::uint64_t>(hit, static_cast<std::uint64_t>(i));
      }
    } else {
      for (std::uint64_t i = base; i < end; ++i) {
        const FiniteModel m = space.decode(i);
        if (satisfies(m, require, forbid)) {
          hit = i;
          break;
        }
      }
    }
    if (hit != UINT64_MAX) return hit;
  }
  return UINT64_MAX;  // scanned everything, nothing found
}

}  // namespace

std::optional<FiniteModel> find_model(const Signature& sig, const std::vector<Formula>& require,
                                      const std::vector<Formula>& forbid, int max_size, bool* exhausted) {
  if (exhausted) *exhausted = true;
  const int top = propositional_only(sig) ? 1 : max_size;
  for (int size = 1; size <= top; ++size) {
    ModelSpace space(sig, size);
    auto hit = scan_size(space, require, forbid);
    if (!hit) {
      if (exhausted) *exhausted = false;
      continue;
    }
    if (*hit != UINT64_MAX) return space.decode(*hit);
  }
  return std::nullopt;
}

std::vector<FiniteModel> all_models(const Signature& sig, const std::vector<Formula>& require,
                                    const std::vector<Formula>& forbid, int max_size, std::size_t cap,
                                    bool* exhausted) {
  if (exhausted) *exhausted = true;
  std::vector<FiniteModel> out;
  const int top = propositional_only(sig) ? 1 : max_size;
  for (int size = 1; size <= top; ++size) {
    ModelSpace space(sig, size);
    const auto total = space.count();
    if (!total) {
      if (exhausted) *exhausted = false;
      continue;
    }
    for (std::uint64_t base = 0; base < *total && out.size() < cap; base += kBlock) {
      const std::uint64_t end = std::min(*total, base + kBlock);
      std::vector<char> hits(end - base, 0);
      if (runtime::parallel()) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long i = static_cast<long long>(base); i < static_cast<long long>(end); ++i) {
          const FiniteModel m = space.decode(static_cast<std::uint64_t>(i));
          if (satisfies(m, require, forbid)) hits[static_cast<std::size_t>(i - static_cast<long long>(base))] = 1;
        }
      } else {
        for (std::uint64_t i = base; i < end; ++i) {
          const FiniteModel m = space.decode(i);
          if (satisfies(m, require, forbid)) hits[i - base] = 1;
        }
      }
      for (std::uint64_t i = base; i < end && out.size() < cap; ++i)
        if (hits[i - base]) out.push_back(space.decode(i));
    }
    if (out.size() >= cap) {
      if (exhausted) *exhausted = false;
      break;
    }
  }
  return out;
}

}  // namespace rcalc
