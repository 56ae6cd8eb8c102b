#include "rcalc/premise.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace rcalc {

namespace {

struct FlatNode {
  const ProofNode* node;
  std::vector<int> children;  // node ids
};

void flatten(const ProofNode& n, std::vector<FlatNode>& out) {
  const int id = static_cast<int>(out.size()) + 1;
  out.push_back({&n, {}});
  for (const ProofNode& c : n.children) {
    out[id - 1].children.push_back(static_cast<int>(out.size()) + 1);
    flatten(c, out);
  }
}

}  // namespace

int PremiseMarking::occ_id(const Occurrence& o) const {
  const int base = occ_offsets_[static_cast<std::size_t>(o.node - 1)];
  if (o.side == Side::Succedent) return base + static_cast<int>(sequents_[o.node - 1].antecedent.size());
  return base + o.index;
}

const Formula& PremiseMarking::formula_at(const Occurrence& o) const {
  const Sequent& s = sequents_[o.node - 1];
  return o.side == Side::Succedent ? s.succedent : s.antecedent[static_cast<std::size_t>(o.index)];
}

int PremiseMarking::find(int i) const {
  while (uf_[i] != i) i = uf_[i] = uf_[uf_[i]];
  return i;
}

const Sequent& PremiseMarking::node_sequent(int node_id) const { return sequents_[node_id - 1]; }

bool PremiseMarking::premise_of(const Occurrence& from, const Occurrence& to) const {
  const int a = find(occ_id(from));
  const int b = find(occ_id(to));
  if (a == b) return true;  // reflexive over the persistence class
  std::deque<int> queue{a};
  std::vector<char> seen(uf_.size(), 0);
  seen[a] = 1;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int nxt : succ_[c]) {
      if (nxt == b) return true;
      if (!seen[nxt]) {
        seen[nxt] = 1;
        queue.push_back(nxt);
      }
    }
  }
  return false;
}

std::vector<Formula> PremiseMarking::premises_of_goal() const {
  std::vector<Formula> out;
  std::vector<std::string> keys;
  for (std::size_t node = 1; node <= sequents_.size(); ++node) {
    const Sequent& s = sequents_[node - 1];
    for (std::size_t i = 0; i <= s.antecedent.size(); ++i) {
      Occurrence o;
      o.node = static_cast<int>(node);
      if (i < s.antecedent.size()) {
        o.side = Side::Antecedent;
        o.index = static_cast<int>(i);
      } else {
        o.side = Side::Succedent;
      }
      if (!reaches_goal_[find(occ_id(o))]) continue;
      const Formula& f = formula_at(o);
      const std::string k = alpha_key(f);
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        keys.push_back(k);
        out.push_back(f);
      }
    }
  }
  return out;
}

std::string PremiseMarking::dump() const {
  std::ostringstream os;
  for (const PremiseEdge& e : edges_) {
    auto show = [&](const Occurrence& o) {
      os << "node#" << o.node << " [" << (o.side == Side::Antecedent ? "ant" : "succ") << ","
         << (o.side == Side::Antecedent ? o.index : 0) << "] " << to_string(formula_at(o));
    };
    show(e.from);
    os << "  ->  ";
    show(e.to);
    os << "\n";
  }
  return os.str();
}

PremiseMarking premise_closure(const ProofNode& t) {
  std::string diag;
  if (!check_proof_tree(t, diag)) throw InvalidTreeError("invalid proof tree: " + diag);

  PremiseMarking m;
  std::vector<FlatNode> flat;
  flatten(t, flat);
  int total = 0;
  for (const FlatNode& fn : flat) {
    m.sequents_.push_back(fn.node->sequent);
    m.occ_offsets_.push_back(total);
    total += static_cast<int>(fn.node->sequent.antecedent.size()) + 1;
  }
  m.uf_.assign(static_cast<std::size_t>(total), 0);
  for (int i = 0; i < total; ++i) m.uf_[static_cast<std::size_t>(i)] = i;

  auto unite = [&m](int a, int b) {
    a = m.find(a);
    b = m.find(b);
    if (a != b) m.uf_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };
  auto ant = [](int node, int i) { return Occurrence{node, Side::Antecedent, i}; };
  auto succ = [](int node) { return Occurrence{node, Side::Succedent, 0}; };

  std::vector<PremiseEdge> edges;
  for (std::size_t ni = 0; ni < flat.size(); ++ni) {
    const int id = static_cast<int>(ni) + 1;
    const ProofNode& n = *flat[ni].node;
    const int asize = static_cast<int>(n.sequent.antecedent.size());
    const int p = n.principal;
    auto child = [&](std::size_t k) { return flat[ni].children[k]; };
    auto persist_ant_identity = [&](int cid, int count) {
      for (int i = 0; i < count; ++i) unite(m.occ_id(ant(id, i)), m.occ_id(ant(cid, i)));
    };
    auto persist_ant_skip = [&](int cid) {  // child antecedent = ours minus position p
      for (int i = 0; i < asize; ++i) {
        if (i == p) continue;
        unite(m.occ_id(ant(id, i)), m.occ_id(ant(cid, i < p ? i : i - 1)));
      }
    };
    auto persist_ant_replaced = [&](int cid, int replaced_width) {
      // child antecedent = ours with position p replaced by `replaced_width` side slots
      for (int i = 0; i < asize; ++i) {
        if (i == p) continue;
        unite(m.occ_id(ant(id, i)), m.occ_id(ant(cid, i < p ? i : i + replaced_width - 1)));
      }
    };
    auto persist_succ = [&](int cid) { unite(m.occ_id(succ(id)), m.occ_id(succ(cid))); };
    auto edge = [&](Occurrence from, Occurrence to) { edges.push_back({from, to}); };

    switch (n.rule) {
      case ProofRule::Id:
        edge(ant(id, p), succ(id));
        break;
      case ProofRule::EqId:
      case ProofRule::EqRefute:
        for (int u : n.used) edge(ant(id, u), succ(id));
        break;
      case ProofRule::AndL: {
        const int c = child(0);
        persist_ant_replaced(c, 2);
        persist_succ(c);
        edge(ant(id, p), ant(c, p));
        edge(ant(id, p), ant(c, p + 1));
        edge(ant(c, p), succ(id));
        edge(ant(c, p + 1), succ(id));
        break;
      }
      case ProofRule::OrL: {
        for (int k = 0; k < 2; ++k) {
          const int c = child(static_cast<std::size_t>(k));
          persist_ant_replaced(c, 1);
          persist_succ(c);
          edge(ant(id, p), ant(c, p));
          edge(ant(c, p), succ(id));
        }
        break;
      }
      case ProofRule::ImpL: {
        const int c1 = child(0), c2 = child(1);
        persist_ant_identity(c1, asize);  // principal stays put in numerator 1
        persist_ant_replaced(c2, 1);
        persist_succ(c2);
        edge(ant(id, p), succ(c1));   // principal -> side A (succedent of numerator 1)
        edge(ant(id, p), ant(c2, p)); // principal -> side B
        edge(succ(c1), succ(id));
        edge(ant(c2, p), succ(id));
        break;
      }
      case ProofRule::NegL: {
        const int c = child(0);
        persist_ant_skip(c);
        edge(ant(id, p), succ(c));
        edge(succ(c), succ(id));
        break;
      }
      case ProofRule::NegLExpand:
      case ProofRule::ExistsL: {
        const int c = child(0);
        persist_ant_replaced(c, 1);
        persist_succ(c);
        edge(ant(id, p), ant(c, p));
        edge(ant(c, p), succ(id));
        break;
      }
      case ProofRule::ForallL: {
        const int c = child(0);
        persist_ant_identity(c, asize);
        persist_succ(c);
        edge(ant(id, p), ant(c, asize));  // the appended instance
        edge(ant(c, asize), succ(id));
        break;
      }
      case ProofRule::AndR: {
        const int c1 = child(0), c2 = child(1);
        persist_ant_identity(c1, asize);
        persist_ant_identity(c2, asize);
        edge(succ(c1), succ(id));
        edge(succ(c2), succ(id));
        break;
      }
      case ProofRule::OrR1:
      case ProofRule::OrR2:
      case ProofRule::NegRExpand:
      case ProofRule::ForallR:
      case ProofRule::ExistsR: {
        const int c = child(0);
        persist_ant_identity(c, asize);
        edge(succ(c), succ(id));
        break;
      }
      case ProofRule::ImpR: {
        const int c = child(0);
        persist_ant_identity(c, asize);
        edge(ant(c, asize), succ(id));  // the discharged assumption
        edge(succ(c), succ(id));
        break;
      }
      case ProofRule::Raa: {
        const int c = child(0);
        persist_ant_identity(c, asize);
        persist_succ(c);
        // The added assumption is a fresh occurrence with no dependency
        // clause of its own.
        break;
      }
    }
  }

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  m.edges_ = std::move(edges);

  // Closure adjacency per persistence class.
  m.succ_.assign(m.uf_.size(), {});
  for (const PremiseEdge& e : m.edges_) {
    const int a = m.find(m.occ_id(e.from));
    const int b = m.find(m.occ_id(e.to));
    m.succ_[static_cast<std::size_t>(a)].push_back(b);
  }
  // Reverse reachability from the root succedent.
  m.reaches_goal_.assign(m.uf_.size(), 0);
  const int goal = m.find(m.occ_id(succ(1)));
  std::vector<std::vector<int>> pred(m.uf_.size());
  for (const PremiseEdge& e : m.edges_) {
    pred[static_cast<std::size_t>(m.find(m.occ_id(e.to)))].push_back(m.find(m.occ_id(e.from)));
  }
  std::deque<int> queue{goal};
  m.reaches_goal_[static_cast<std::size_t>(goal)] = 1;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int prv : pred[static_cast<std::size_t>(c)])
      if (!m.reaches_goal_[static_cast<std::size_t>(prv)]) {
        m.reaches_goal_[static_cast<std::size_t>(prv)] = 1;
        queue.push_back(prv);
      }
  }
  return m;
}

std::vector<Formula> necessary_premises(const ProofNode& t, const std::vector<Formula>& gamma,
                                        const Formula& goal) {
  if (!sentence_equal(t.sequent.succedent, goal))
    throw GoalMismatchError("tree does not conclude the goal: root proves " +
                            to_string(t.sequent.succedent) + ", asked about " + to_string(goal));
  const PremiseMarking m = premise_closure(t);
  const std::vector<Formula> reached = m.premises_of_goal();
  std::vector<Formula> out;
  for (const Formula& law : gamma) {
    for (const Formula& f : reached)
      if (sentence_equal(law, f)) {
        out.push_back(law);
        break;
      }
  }
  return out;
}

bool is_necessary_premise(const Formula& p, const ProofNode& t, const std::vector<Formula>& gamma,
                          const Formula& goal) {
  for (const Formula& law : necessary_premises(t, gamma, goal))
    if (sentence_equal(law, p)) return true;
  return false;
}

}  // namespace rcalc
