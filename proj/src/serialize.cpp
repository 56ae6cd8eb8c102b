#include "rcalc/serialize.hpp"

#include <sstream>

namespace rcalc {

namespace {

void render_node(const ProofNode& n, int depth, int& counter, std::ostringstream& os) {
  const int id = ++counter;
  for (int i = 0; i < depth; ++i) os << "  ";
  os << id << ". [" << rule_name(n.rule) << "] " << to_string(n.sequent);
  if (n.witness) os << "   {t = " << to_string(*n.witness) << "}";
  if (!n.eigen.empty()) os << "   {eigen " << n.eigen << "}";
  os << "\n";
  for (const ProofNode& c : n.children) render_node(c, depth + 1, counter, os);
}

std::string law_list(const std::vector<Formula>& laws) {
  std::string out = "{";
  for (std::size_t i = 0; i < laws.size(); ++i) out += (i ? ", " : "") + to_string(laws[i]);
  return out + "}";
}

void render_transition_line(const Transition& t, std::ostringstream& os) {
  os << rule_tag_name(t.rule) << " @" << t.position;
  if (t.witness_term) os << " {t = " << to_string(*t.witness_term) << "}";
  if (!t.eigen.empty()) os << " {eigen " << t.eigen << "}";
  if (t.cut) {
    os << " {lemma " << to_string(t.cut->lemma) << "; target " << to_string(t.cut->target) << "; split [";
    for (std::size_t i = 0; i < t.cut->gamma1.size(); ++i) os << (i ? "," : "") << t.cut->gamma1[i];
    os << " / ";
    for (std::size_t i = 0; i < t.cut->gamma2.size(); ++i) os << (i ? "," : "") << t.cut->gamma2[i];
    os << "]}";
  }
  for (const auto& sd : t.subs) {
    os << " {numerator: ";
    for (std::size_t i = 0; i < sd->steps.size(); ++i) {
      if (i) os << "; ";
      render_transition_line(sd->steps[i].first, os);
    }
    os << "}";
  }
}

}  // namespace

std::string render_tree(const ProofNode& t) {
  std::ostringstream os;
  int counter = 0;
  render_node(t, 0, counter, os);
  return os.str();
}

std::string render_trace(const DerivationTrace& trace) {
  std::ostringstream os;
  os << "start: " << to_string(trace.start) << "\n";
  int step = 0;
  for (const auto& [t, cfg] : trace.steps) {
    os << "step " << ++step << ": ";
    render_transition_line(t, os);
    os << "  =>  " << to_string(cfg) << "\n";
  }
  return os.str();
}

std::string render_report(const ContractionReport& r) {
  std::ostringstream os;
  os << "specification: " << law_list(r.gamma) << "\n";
  os << "rejected: " << law_list(r.delta) << "\n";
  os << "maximal contractions (" << r.oracle_maximal.size() << "):\n";
  for (const LawSet& s : r.oracle_maximal) os << "  " << law_list(s) << "\n";
  os << "reached terminations (" << r.reached.size() << "):\n";
  for (const LawSet& s : r.reached) {
    bool maximal = false;
    for (const LawSet& m : r.matched)
      if (law_set_equal(m, s)) maximal = true;
    os << "  " << law_list(s) << (maximal ? "  MAXIMAL" : "  NON-MAXIMAL") << "\n";
  }
  os << "unreached maximal (" << r.unreached_maximal.size() << "):\n";
  for (const LawSet& s : r.unreached_maximal) os << "  " << law_list(s) << "\n";
  os << "exploration exhausted: " << (r.exploration_exhausted ? "yes" : "no") << "\n";
  if (!r.budget_notes.empty()) {
    os << "budget notes:\n";
    for (const std::string& n : r.budget_notes) os << "  " << n << "\n";
  }
  return os.str();
}

nlohmann::json tree_json(const ProofNode& t) {
  nlohmann::json node;
  node["rule"] = rule_name(t.rule);
  node["sequent"] = to_string(t.sequent);
  if (t.principal >= 0) node["principal"] = t.principal;
  if (t.witness) node["witness"] = to_string(*t.witness);
  if (!t.eigen.empty()) node["eigen"] = t.eigen;
  if (!t.used.empty()) node["used"] = t.used;
  nlohmann::json kids = nlohmann::json::array();
  for (const ProofNode& c : t.children) kids.push_back(tree_json(c));
  node["children"] = std::move(kids);
  return node;
}

nlohmann::json model_json(const FiniteModel& m) {
  nlohmann::json j;
  j["size"] = m.size;
  j["constants"] = m.constants;
  for (const auto& [n, table] : m.functions) j["functions"][n] = table;
  for (const auto& [n, table] : m.predicates) {
    std::vector<int> t(table.begin(), table.end());
    j["predicates"][n] = t;
  }
  return j;
}

nlohmann::json transition_json(const Transition& t) {
  nlohmann::json j;
  j["rule"] = rule_tag_name(t.rule);
  j["position"] = t.position;
  if (t.witness_term) j["witness"] = to_string(*t.witness_term);
  if (!t.eigen.empty()) j["eigen"] = t.eigen;
  if (t.cut) {
    j["lemma"] = to_string(t.cut->lemma);
    j["target"] = to_string(t.cut->target);
    j["gamma1"] = t.cut->gamma1;
    j["gamma2"] = t.cut->gamma2;
    j["first_tree"] = tree_json(t.cut->first);
    j["second_tree"] = tree_json(t.cut->second);
  }
  if (!t.subs.empty()) {
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& sd : t.subs) {
      nlohmann::json s;
      s["start"] = to_string(sd->start);
      nlohmann::json steps = nlohmann::json::array();
      for (const auto& [st, cfg] : sd->steps) {
        nlohmann::json e;
        e["transition"] = transition_json(st);
        e["result"] = to_string(cfg);
        steps.push_back(std::move(e));
      }
      s["steps"] = std::move(steps);
      subs.push_back(std::move(s));
    }
    j["numerators"] = std::move(subs);
  }
  return j;
}

nlohmann::json trace_json(const DerivationTrace& trace) {
  nlohmann::json j;
  j["start"] = to_string(trace.start);
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& [t, cfg] : trace.steps) {
    nlohmann::json e;
    e["transition"] = transition_json(t);
    e["result"] = to_string(cfg);
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  return j;
}

nlohmann::json report_json(const ContractionReport& r) {
  auto sets = [](const std::vector<LawSet>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const LawSet& s : v) {
      nlohmann::json one = nlohmann::json::array();
      for (const Formula& f : s) one.push_back(to_string(f));
      arr.push_back(std::move(one));
    }
    return arr;
  };
  nlohmann::json j;
  j["schema_version"] = 1;
  nlohmann::json gamma = nlohmann::json::array();
  for (const Formula& f : r.gamma) gamma.push_back(to_string(f));
  j["gamma"] = std::move(gamma);
  nlohmann::json delta = nlohmann::json::array();
  for (const Formula& f : r.delta) delta.push_back(to_string(f));
  j["delta"] = std::move(delta);
  j["oracle_maximal"] = sets(r.oracle_maximal);
  j["reached"] = sets(r.reached);
  j["matched"] = sets(r.matched);
  j["non_maximal_reached"] = sets(r.non_maximal_reached);
  j["unreached_maximal"] = sets(r.unreached_maximal);
  j["budget_notes"] = r.budget_notes;
  j["exploration_exhausted"] = r.exploration_exhausted;
  return j;
}

}  // namespace rcalc
