#include "rcalc/congruence.hpp"

#include <algorithm>

namespace rcalc {

int CongruenceClosure::intern(const Term& t) {
  if (t.kind == Term::Kind::Variable) throw NonGroundError("non-ground term: " + to_string(t));
  std::vector<int> kids;
  kids.reserve(t.args.size());
  for (const Term& a : t.args) kids.push_back(intern(a));
  auto key = std::make_pair(t.name, kids);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({t.name, std::move(kids)});
  parent_.push_back(id);
  index_.emplace(std::move(key), id);
  dirty_ = true;
  return id;
}

int CongruenceClosure::find(int i) {
  while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
  return i;
}

void CongruenceClosure::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (a > b) std::swap(a, b);
  parent_[b] = a;
  dirty_ = true;
}

void CongruenceClosure::merge(const Term& a, const Term& b) { unite(intern(a), intern(b)); }

void CongruenceClosure::close() {
  // Fixpoint congruence propagation; node counts here are tiny.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
        if (nodes_[i].name != nodes_[j].name || nodes_[i].kids.size() != nodes_[j].kids.size()) continue;
        if (find(static_cast<int>(i)) == find(static_cast<int>(j))) continue;
        bool congruent = true;
        for (std::size_t k = 0; k < nodes_[i].kids.size(); ++k)
          if (find(nodes_[i].kids[k]) != find(nodes_[j].kids[k])) {
            congruent = false;
            break;
          }
        if (congruent) {
          unite(static_cast<int>(i), static_cast<int>(j));
          changed = true;
        }
      }
    }
  }
  dirty_ = false;
}

bool CongruenceClosure::equal(const Term& a, const Term& b) {
  const int ia = intern(a), ib = intern(b);
  if (dirty_) close();
  return find(ia) == find(ib);
}

// ---------------------------------------------------------------------------

GroundFragment ground_fragment(const std::vector<Formula>& formulas) {
  GroundFragment frag;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    const Formula& f = formulas[i];
    if (!is_literal(f) || !is_ground(f)) continue;
    const int idx = static_cast<int>(i);
    if (f.kind == Formula::Kind::Equality)
      frag.equalities.emplace_back(idx, f);
    else if (f.kind == Formula::Kind::Atom)
      frag.pos_atoms.emplace_back(idx, f);
    else if (f.sub[0].kind == Formula::Kind::Equality)
      frag.disequalities.emplace_back(idx, f);
    else
      frag.neg_atoms.emplace_back(idx, f);
  }
  return frag;
}

bool fragment_inconsistent(const GroundFragment& frag) {
  CongruenceClosure cc;
  for (const auto& [i, f] : frag.equalities) cc.merge(f.terms[0], f.terms[1]);
  for (const auto& [i, f] : frag.disequalities) {
    const Formula& e = f.sub[0];
    if (cc.equal(e.terms[0], e.terms[1])) return true;
  }
  for (const auto& [i, p] : frag.pos_atoms) {
    for (const auto& [j, nf] : frag.neg_atoms) {
      const Formula& n = nf.sub[0];
      if (n.name != p.name || n.terms.size() != p.terms.size()) continue;
      bool same = true;
      for (std::size_t k = 0; k < p.terms.size() && same; ++k)
        same = cc.equal(p.terms[k], n.terms[k]);
      if (same) return true;
    }
  }
  return false;
}

std::vector<int> refutation_core(const std::vector<Formula>& formulas) {
  GroundFragment frag = ground_fragment(formulas);
  if (!fragment_inconsistent(frag)) return {};
  // Greedy minimization: drop literals whose removal keeps the fragment
  // inconsistent, in index order.
  std::vector<std::pair<int, Formula>> pool;
  auto collect = [&pool](const std::vector<std::pair<int, Formula>>& v) {
    pool.insert(pool.end(), v.begin(), v.end());
  };
  collect(frag.equalities);
  collect(frag.disequalities);
  collect(frag.pos_atoms);
  collect(frag.neg_atoms);
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  auto inconsistent = [](const std::vector<std::pair<int, Formula>>& lits) {
    std::vector<Formula> fs;
    fs.reserve(lits.size());
    for (const auto& [i, f] : lits) fs.push_back(f);
    return fragment_inconsistent(ground_fragment(fs));
  };
  for (std::size_t i = 0; i < pool.size();) {
    std::vector<std::pair<int, Formula>> without = pool;
    without.erase(without.begin() + static_cast<long>(i));
    if (inconsistent(without))
      pool = std::move(without);
    else
      ++i;
  }
  std::vector<int> core;
  core.reserve(pool.size());
  for (const auto& [i, f] : pool) core.push_back(i);
  return core;
}

bool equalities_entail(const std::vector<std::pair<int, Formula>>& equalities, const Formula& equality) {
  if (equality.kind != Formula::Kind::Equality) return false;
  if (!is_ground(equality)) return false;
  CongruenceClosure cc;
  for (const auto& [i, f] : equalities) cc.merge(f.terms[0], f.terms[1]);
  return cc.equal(equality.terms[0], equality.terms[1]);
}

std::vector<int> entailment_core(const std::vector<std::pair<int, Formula>>& equalities,
                                 const Formula& equality) {
  if (!equalities_entail(equalities, equality)) return {};
  std::vector<std::pair<int, Formula>> pool = equalities;
  for (std::size_t i = 0; i < pool.size();) {
    std::vector<std::pair<int, Formula>> without = pool;
    without.erase(without.begin() + static_cast<long>(i));
    if (equalities_entail(without, equality))
      pool = std::move(without);
    else
      ++i;
  }
  std::vector<int> core;
  core.reserve(pool.size());
  for (const auto& [i, f] : pool) core.push_back(i);
  return core;
}

bool congruence_consistent(const std::vector<Formula>& literals) {
  for (const Formula& f : literals) {
    if (!is_literal(f)) throw NotApplicable("not a literal: " + to_string(f));
    if (!is_ground(f)) throw NonGroundError("non-ground literal: " + to_string(f));
  }
  return !fragment_inconsistent(ground_fragment(literals));
}

}  // namespace rcalc
