#include "rcalc/session.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rcalc/oracle.hpp"
#include "rcalc/prover.hpp"

namespace rcalc {

Session::Session() = default;
Session::Session(SpecFile spec) : spec_(std::move(spec)) {}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string Session::fresh_name(const std::string& prefix) const {
  int i = 1;
  while (true) {
    std::string cand = prefix + std::to_string(i);
    bool taken = false;
    for (const auto& [n, f] : spec_.laws)
      if (n == cand) taken = true;
    for (const auto& [n, f] : spec_.rejections)
      if (n == cand) taken = true;
    if (!taken) return cand;
    ++i;
  }
}

void Session::push_undo() { undo_.push_back({spec_, revisions_}); }

bool Session::execute(const std::string& line, std::ostream& out) {
  const std::string cmd = trim(line);
  if (cmd.empty()) return true;
  const auto space = cmd.find(' ');
  const std::string verb = cmd.substr(0, space);
  const std::string arg = space == std::string::npos ? "" : trim(cmd.substr(space + 1));
  try {
    if (verb == "quit" || verb == "exit") return false;
    if (verb == "assert")
      cmd_assert(arg, out);
    else if (verb == "show")
      cmd_show(out);
    else if (verb == "consequences")
      cmd_consequences(out);
    else if (verb == "reject")
      cmd_reject(arg, out);
    else if (verb == "revisions")
      cmd_revisions(out);
    else if (verb == "choose")
      cmd_choose(arg, out);
    else if (verb == "why")
      cmd_why(arg, out);
    else if (verb == "undo")
      cmd_undo(out);
    else if (verb == "save")
      cmd_save(arg, out);
    else if (verb == "help")
      out << "commands: assert <law> | show | consequences | reject <literal> | revisions |"
             " choose <n> | why <law> | undo | save <path> | quit\n";
    else
      out << "error: unknown command '" << verb << "' (try help)\n";
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
  }
  return true;
}

void Session::cmd_assert(const std::string& arg, std::ostream& out) {
  const Formula f = spec_.parse_goal(arg);
  for (const auto& [n, law] : spec_.laws)
    if (sentence_equal(law, f)) {
      out << "already present as " << n << "\n";
      return;
    }
  push_undo();
  const std::string name = fresh_name("l");
  spec_.laws.emplace_back(name, f);
  out << "added " << name << ": " << to_string(f) << "\n";
}

void Session::cmd_show(std::ostream& out) {
  out << "laws:\n";
  for (const auto& [n, f] : spec_.laws) out << "  " << n << ": " << to_string(f) << "\n";
  if (!spec_.rejections.empty()) {
    out << "rejected:\n";
    for (const auto& [n, f] : spec_.rejections) out << "  " << n << ": " << to_string(f) << "\n";
  }
}

void Session::cmd_consequences(std::ostream& out) {
  ProofCache cache;
  for (const Formula& f : atomic_consequences(spec_.law_formulas(), spec_.budget, cache))
    out << "  " << to_string(f) << "\n";
}

void Session::cmd_reject(const std::string& arg, std::ostream& out) {
  const Formula f = spec_.parse_goal(arg);
  if (!is_literal(f)) {
    out << "error: rejected facts must be literals\n";
    return;
  }
  std::vector<Formula> extended = spec_.rejection_formulas();
  extended.push_back(f);
  Configuration c = make_configuration(extended, spec_.law_formulas());
  ProofCache cache;
  const std::vector<Tri> status = validate_configuration(c, spec_.budget, cache);
  const Tri mine = status.back();
  if (mine == Tri::No) {
    out << "error: the laws do not refute " << to_string(f) << "; nothing to revise\n";
    return;
  }
  push_undo();
  const std::string name = fresh_name("r");
  spec_.rejections.emplace_back(name, f);
  out << "rejected " << name << ": " << to_string(f);
  if (mine == Tri::Unknown) out << "  (refutation status unknown within budget)";
  out << "\n";
}

void Session::cmd_revisions(std::ostream& out) {
  if (spec_.rejections.empty()) {
    out << "no rejected facts; nothing to revise\n";
    return;
  }
  Configuration start = make_configuration(spec_.rejection_formulas(), spec_.law_formulas());
  ExplorationResult res = explore_terminations(start, spec_.budget, spec_.limit);
  revisions_ = res.terminations;
  std::vector<LawSet> maximal;
  if (spec_.laws.size() <= 20)
    maximal = maximal_contractions(spec_.law_formulas(), start.delta, spec_.budget);
  for (std::size_t i = 0; i < revisions_.size(); ++i) {
    bool is_max = false;
    for (const LawSet& m : maximal)
      if (law_set_equal(m, revisions_[i].config.gamma)) is_max = true;
    out << "  [" << (i + 1) << "] {";
    const auto& g = revisions_[i].config.gamma;
    for (std::size_t j = 0; j < g.size(); ++j) out << (j ? ", " : "") << to_string(g[j]);
    out << "}" << (is_max ? "  MAXIMAL" : "  NON-MAXIMAL") << "\n";
  }
  if (!res.exhausted) out << "  (exploration stopped at the configuration limit)\n";
}

void Session::cmd_choose(const std::string& arg, std::ostream& out) {
  int n = 0;
  try {
    n = std::stoi(arg);
  } catch (...) {
    out << "error: choose expects a revision number\n";
    return;
  }
  if (n < 1 || n > static_cast<int>(revisions_.size())) {
    out << "error: no revision [" << n << "]; run revisions first\n";
    return;
  }
  const Termination& chosen = revisions_[static_cast<std::size_t>(n - 1)];
  // Adopting a revision must leave the laws consistent with what is rejected.
  std::vector<Formula> check = chosen.config.gamma;
  for (const Formula& r : spec_.rejection_formulas()) check.push_back(r);
  ProofCache cache;
  const Tri ok = consistent(check, spec_.budget, cache);
  if (ok == Tri::No) {
    out << "error: revision [" << n << "] is still inconsistent with the rejected facts\n";
    return;
  }
  push_undo();
  history_.push_back(chosen.trace);
  std::vector<std::pair<std::string, Formula>> new_laws;
  int li = 1;
  for (const Formula& f : chosen.config.gamma) new_laws.emplace_back("l" + std::to_string(li++), f);
  spec_.laws = std::move(new_laws);
  // A rejection is discharged once the revised laws no longer prove its
  // negation within budget.
  std::vector<std::pair<std::string, Formula>> still_active;
  for (const auto& [name, r] : spec_.rejections) {
    const ProofResult pr = prove(Sequent{spec_.law_formulas(), complement(r)}, spec_.budget, cache);
    if (pr.proved()) still_active.emplace_back(name, r);
  }
  const std::size_t cleared = spec_.rejections.size() - still_active.size();
  spec_.rejections = std::move(still_active);
  revisions_.clear();
  out << "adopted revision [" << n << "]; " << spec_.laws.size() << " laws kept";
  if (cleared) out << ", " << cleared << " rejection(s) discharged";
  if (ok == Tri::Unknown) out << "  (consistency unknown within budget)";
  out << "\n";
}

void Session::cmd_why(const std::string& arg, std::ostream& out) {
  const Formula goal = spec_.parse_goal(arg);
  ProofCache cache;
  const ProofResult r = prove(Sequent{spec_.law_formulas(), goal}, spec_.budget, cache);
  if (!r.proved()) {
    out << "cannot determine within budget: " << to_string(goal) << " is not proved\n";
    return;
  }
  const std::vector<Formula> premises = necessary_premises(*r.tree, spec_.law_formulas(), goal);
  out << "necessary premises of " << to_string(goal) << ":\n";
  for (const Formula& p : premises) out << "  " << to_string(p) << "\n";
}

void Session::cmd_undo(std::ostream& out) {
  if (undo_.empty()) {
    out << "nothing to undo\n";
    return;
  }
  spec_ = std::move(undo_.back().spec);
  revisions_ = std::move(undo_.back().revisions);
  undo_.pop_back();
  out << "undone\n";
}

void Session::cmd_save(const std::string& arg, std::ostream& out) {
  if (arg.empty()) {
    out << "error: save expects a path\n";
    return;
  }
  std::ofstream f(arg);
  if (!f) {
    out << "error: cannot write '" << arg << "'\n";
    return;
  }
  f << write_specfile(spec_);
  out << "saved to " << arg << "\n";
}

int run_repl(std::istream& in, std::ostream& out, const std::string& specfile_path) {
  Session session = specfile_path.empty() ? Session() : Session(load_specfile(specfile_path));
  std::string line;
  while (true) {
    out << "rcalc> ";
    if (!std::getline(in, line)) {
      out << "\n";
      return 0;
    }
    out << line << "\n";
    if (!session.execute(line, out)) return 0;
  }
}

}  // namespace rcalc
