#include "rcalc/oracle.hpp"

#include <algorithm>

#include "rcalc/runtime.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rcalc {

bool law_set_subset(const LawSet& a, const LawSet& b) {
  for (const Formula& x : a) {
    bool found = false;
    for (const Formula& y : b)
      if (sentence_equal(x, y)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool law_set_equal(const LawSet& a, const LawSet& b) {
  return a.size() == b.size() && law_set_subset(a, b) && law_set_subset(b, a);
}

namespace {

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

bool indices_subset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::vector<LawSet> maximal_contractions(const LawSet& gamma, const RCondition& delta, const Budget& b,
                                         std::vector<std::string>* notes) {
  const int n = static_cast<int>(gamma.size());
  if (n > 20) throw SizeGuardError("subset enumeration guard: " + std::to_string(n) + " laws (max 20)");
  ProofCache cache;
  std::vector<std::vector<int>> maximal_idx;

  for (int k = n; k >= 0; --k) {
    std::vector<std::vector<int>> level = combinations(n, k);
    // Subsets of an already-found maximal set cannot be maximal themselves.
    std::vector<std::vector<int>> todo;
    for (auto& c : level) {
      bool covered = false;
      for (const auto& mx : maximal_idx)
        if (indices_subset(c, mx)) {
          covered = true;
          break;
        }
      if (!covered) todo.push_back(std::move(c));
    }
    if (todo.empty()) continue;

    std::vector<int> verdicts(todo.size(), 0);  // 0 unknown, 1 yes, -1 no
    auto check = [&](std::size_t i) {
      std::vector<Formula> fs;
      for (int j : todo[i]) fs.push_back(gamma[static_cast<std::size_t>(j)]);
      fs.insert(fs.end(), delta.literals.begin(), delta.literals.end());
      switch (consistent(fs, b, cache)) {
        case Tri::Yes: verdicts[i] = 1; break;
        case Tri::No: verdicts[i] = -1; break;
        case Tri::Unknown: verdicts[i] = 0; break;
      }
    };
    if (runtime::parallel() && todo.size() > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (long long i = 0; i < static_cast<long long>(todo.size()); ++i) check(static_cast<std::size_t>(i));
    } else {
      for (std::size_t i = 0; i < todo.size(); ++i) check(i);
    }

    for (std::size_t i = 0; i < todo.size(); ++i) {
      if (verdicts[i] == 1) {
        maximal_idx.push_back(todo[i]);
      } else if (verdicts[i] == 0 && notes) {
        std::string desc = "consistency unknown for subset {";
        for (std::size_t j = 0; j < todo[i].size(); ++j)
          desc += (j ? ", " : "") + to_string(gamma[static_cast<std::size_t>(todo[i][j])]);
        notes->push_back(desc + "}");
      }
    }
  }

  std::vector<LawSet> out;
  for (const auto& idx : maximal_idx) {
    LawSet s;
    for (int j : idx) s.push_back(gamma[static_cast<std::size_t>(j)]);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<RejectionModel> user_rejection_models(const LawSet& gamma, const Formula& goal, int size_cap) {
  Signature sig = signature_of(gamma);
  sig.merge(signature_of(goal));
  std::vector<FiniteModel> models = all_models(sig, {neg(goal)}, {}, size_cap, 4096);
  std::vector<RejectionModel> out;
  for (FiniteModel& m : models) {
    LawSet satisfied;
    for (const Formula& law : gamma)
      if (evaluate(m, law)) satisfied.push_back(law);
    bool dup = false;
    for (const RejectionModel& r : out)
      if (law_set_equal(r.satisfied, satisfied)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back({std::move(m), std::move(satisfied), false});
  }
  for (RejectionModel& r : out) {
    r.ideal = true;
    for (const RejectionModel& other : out)
      if (&other != &r && law_set_subset(r.satisfied, other.satisfied) &&
          !law_set_equal(r.satisfied, other.satisfied)) {
        r.ideal = false;
        break;
      }
  }
  return out;
}

ContractionReport reachability_report(const LawSet& gamma, const RCondition& delta, const Budget& b,
                                      int limit) {
  ContractionReport report;
  report.gamma = gamma;
  report.delta = delta.literals;
  report.oracle_maximal = maximal_contractions(gamma, delta, b, &report.budget_notes);

  const Configuration start{delta, gamma};
  ExplorationResult exploration = explore_terminations(start, b, limit);
  report.exploration_exhausted = exploration.exhausted;
  for (const std::string& note : exploration.notes) report.budget_notes.push_back(note);
  if (!exploration.exhausted)
    report.budget_notes.push_back("exploration stopped at the configuration limit");
  for (const Termination& t : exploration.terminations) {
    bool dup = false;
    for (const LawSet& r : report.reached)
      if (law_set_equal(r, t.config.gamma)) {
        dup = true;
        break;
      }
    if (!dup) report.reached.push_back(t.config.gamma);
  }

  for (const LawSet& r : report.reached) {
    bool is_max = false;
    for (const LawSet& m : report.oracle_maximal)
      if (law_set_equal(r, m)) {
        is_max = true;
        break;
      }
    (is_max ? report.matched : report.non_maximal_reached).push_back(r);
  }
  for (const LawSet& m : report.oracle_maximal) {
    bool hit = false;
    for (const LawSet& r : report.reached)
      if (law_set_equal(r, m)) {
        hit = true;
        break;
      }
    if (!hit) report.unreached_maximal.push_back(m);
  }
  return report;
}

bool completeness_check(const LawSet& gamma, const RCondition& delta, const FiniteModel& m,
                        const Budget& b, int limit) {
  for (const Formula& d : delta.literals)
    if (!evaluate(m, d))
      throw ModelDeltaError("model does not satisfy rejected fact " + to_string(d));
  LawSet satisfied;
  for (const Formula& law : gamma)
    if (evaluate(m, law)) satisfied.push_back(law);

  ExplorationResult exploration = explore_terminations(Configuration{delta, gamma}, b, limit);
  for (const Termination& t : exploration.terminations)
    if (law_set_equal(t.config.gamma, satisfied)) return true;
  return false;
}

}  // namespace rcalc
