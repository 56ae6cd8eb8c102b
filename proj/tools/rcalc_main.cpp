// Command-line front end: batch commands over spec files plus the REPL.
// Exit codes: 0 success, 1 logical negative, 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rcalc/oracle.hpp"
#include "rcalc/runtime.hpp"
#include "rcalc/serialize.hpp"
#include "rcalc/session.hpp"

using namespace rcalc;

namespace {

struct GlobalFlags {
  int budget_depth = -1;
  int term_depth = -1;
  int limit = -1;
  bool check = false;
  bool permissive = false;
  bool trace = false;
  bool dump_tree = false;
  bool serial = false;
  std::string format = "text";
};

void resolve_budget(const GlobalFlags& g, SpecFile& spec) {
  if (const char* env = std::getenv("RCALC_BUDGET")) apply_budget_override(env, spec.budget, spec.limit);
  if (g.budget_depth > 0) spec.budget.max_depth = g.budget_depth;
  if (g.term_depth > 0) spec.budget.term_depth = g.term_depth;
  if (g.limit > 0) spec.limit = g.limit;
  spec.budget.validate();
}

int cmd_prove(const GlobalFlags& g, const std::string& file, const std::string& goal_text) {
  SpecFile spec = load_specfile(file);
  resolve_budget(g, spec);
  const Formula goal = spec.parse_goal(goal_text);
  ProofCache cache;
  const ProofResult r = prove(Sequent{spec.law_formulas(), goal}, spec.budget, cache);
  if (g.format == "structured") {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["goal"] = to_string(goal);
    j["result"] = r.status == ProofResult::Status::Proved
                      ? "proved"
                      : (r.status == ProofResult::Status::Disproved ? "disproved" : "unknown");
    if (r.tree && g.dump_tree) j["tree"] = tree_json(*r.tree);
    if (r.countermodel) j["countermodel"] = model_json(*r.countermodel);
    if (!r.note.empty()) j["note"] = r.note;
    std::cout << j.dump(2) << "\n";
  } else {
    switch (r.status) {
      case ProofResult::Status::Proved:
        std::cout << "proved: " << to_string(goal) << "\n";
        if (g.dump_tree) std::cout << render_tree(*r.tree);
        break;
      case ProofResult::Status::Disproved:
        std::cout << "disproved: " << to_string(goal) << "\n";
        std::cout << "countermodel: " << r.countermodel->describe() << "\n";
        break;
      case ProofResult::Status::Unknown:
        std::cout << "unknown: " << to_string(goal) << " (" << r.note << ")\n";
        break;
    }
  }
  return r.proved() ? 0 : 1;
}

int cmd_premises(const GlobalFlags& g, const std::string& file, const std::string& goal_text) {
  SpecFile spec = load_specfile(file);
  resolve_budget(g, spec);
  const Formula goal = spec.parse_goal(goal_text);
  ProofCache cache;
  const ProofResult r = prove(Sequent{spec.law_formulas(), goal}, spec.budget, cache);
  if (!r.proved()) {
    std::cout << "cannot determine within budget: " << to_string(goal) << " is not proved\n";
    return 1;
  }
  const std::vector<Formula> premises = necessary_premises(*r.tree, spec.law_formulas(), goal);
  if (g.format == "structured") {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["goal"] = to_string(goal);
    nlohmann::json arr = nlohmann::json::array();
    for (const Formula& p : premises) arr.push_back(to_string(p));
    j["premises"] = std::move(arr);
    if (g.trace) {
      const PremiseMarking m = premise_closure(*r.tree);
      j["marking"] = m.dump();
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "necessary premises of " << to_string(goal) << ":\n";
    for (const Formula& p : premises) std::cout << "  " << to_string(p) << "\n";
    if (g.trace) {
      const PremiseMarking m = premise_closure(*r.tree);
      std::cout << "marking:\n" << m.dump();
    }
  }
  return 0;
}

int cmd_revise(const GlobalFlags& g, const std::string& file) {
  SpecFile spec = load_specfile(file);
  resolve_budget(g, spec);
  if (spec.rejections.empty()) {
    std::cerr << "error: the file has no reject: section\n";
    return 2;
  }
  Configuration start = make_configuration(spec.rejection_formulas(), spec.law_formulas());
  ProofCache cache;
  const std::vector<Tri> valid = validate_configuration(start, spec.budget, cache);
  for (std::size_t i = 0; i < valid.size(); ++i) {
    if (valid[i] == Tri::Yes) continue;
    const std::string what = to_string(start.delta.literals[i]);
    if (valid[i] == Tri::No && !g.permissive) {
      std::cout << "invalid rejected fact: the laws do not refute " << what << "\n";
      return 1;
    }
    std::cout << "note: refutation of " << what << " is "
              << (valid[i] == Tri::No ? "disproved" : "unknown") << " within budget\n";
  }

  ExplorationResult res = explore_terminations(start, spec.budget, spec.limit);
  std::vector<LawSet> maximal;
  if (g.check) maximal = maximal_contractions(spec.law_formulas(), start.delta, spec.budget);

  if (g.format == "structured") {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["start"] = to_string(start);
    nlohmann::json terms = nlohmann::json::array();
    for (const Termination& t : res.terminations) {
      nlohmann::json one;
      nlohmann::json laws = nlohmann::json::array();
      for (const Formula& f : t.config.gamma) laws.push_back(to_string(f));
      one["laws"] = std::move(laws);
      one["conclusive"] = t.conclusive;
      if (g.check) {
        bool is_max = false;
        for (const LawSet& m : maximal)
          if (law_set_equal(m, t.config.gamma)) is_max = true;
        one["maximal"] = is_max;
      }
      if (g.trace) one["trace"] = trace_json(t.trace);
      terms.push_back(std::move(one));
    }
    j["terminations"] = std::move(terms);
    j["exhausted"] = res.exhausted;
    j["notes"] = res.notes;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "start: " << to_string(start) << "\n";
    std::cout << "terminations (" << res.terminations.size() << "):\n";
    for (std::size_t i = 0; i < res.terminations.size(); ++i) {
      const Termination& t = res.terminations[i];
      std::cout << "  [" << (i + 1) << "] {";
      for (std::size_t k = 0; k < t.config.gamma.size(); ++k)
        std::cout << (k ? ", " : "") << to_string(t.config.gamma[k]);
      std::cout << "}";
      if (g.check) {
        bool is_max = false;
        for (const LawSet& m : maximal)
          if (law_set_equal(m, t.config.gamma)) is_max = true;
        std::cout << (is_max ? "  MAXIMAL" : "  NON-MAXIMAL");
      }
      if (!t.conclusive) std::cout << "  (budget-limited)";
      std::cout << "\n";
      if (g.trace) {
        std::istringstream lines(render_trace(t.trace));
        std::string line;
        while (std::getline(lines, line)) std::cout << "      " << line << "\n";
      }
    }
    if (!res.exhausted) std::cout << "exploration stopped at the configuration limit\n";
    for (const std::string& n : res.notes) std::cout << "note: " << n << "\n";
  }
  return 0;
}

int cmd_contract(const GlobalFlags& g, const std::string& file) {
  SpecFile spec = load_specfile(file);
  resolve_budget(g, spec);
  if (spec.rejections.empty()) {
    std::cerr << "error: the file has no reject: section\n";
    return 2;
  }
  const RCondition delta = RCondition::make(spec.rejection_formulas());
  std::vector<std::string> notes;
  const std::vector<LawSet> maximal = maximal_contractions(spec.law_formulas(), delta, spec.budget, &notes);
  if (g.format == "structured") {
    nlohmann::json j;
    j["schema_version"] = 1;
    nlohmann::json arr = nlohmann::json::array();
    for (const LawSet& s : maximal) {
      nlohmann::json one = nlohmann::json::array();
      for (const Formula& f : s) one.push_back(to_string(f));
      arr.push_back(std::move(one));
    }
    j["maximal_contractions"] = std::move(arr);
    j["notes"] = notes;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "maximal contractions (" << maximal.size() << "):\n";
    for (const LawSet& s : maximal) {
      std::cout << "  {";
      for (std::size_t k = 0; k < s.size(); ++k) std::cout << (k ? ", " : "") << to_string(s[k]);
      std::cout << "}\n";
    }
    for (const std::string& n : notes) std::cout << "note: " << n << "\n";
  }
  return 0;
}

int cmd_verify_reachability(const GlobalFlags& g, const std::string& file, const std::string& report_path) {
  SpecFile spec = load_specfile(file);
  resolve_budget(g, spec);
  if (spec.rejections.empty()) {
    std::cerr << "error: the file has no reject: section\n";
    return 2;
  }
  const RCondition delta = RCondition::make(spec.rejection_formulas());
  const ContractionReport report = reachability_report(spec.law_formulas(), delta, spec.budget, spec.limit);
  if (g.format == "structured")
    std::cout << report_json(report).dump(2) << "\n";
  else
    std::cout << render_report(report);
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) {
      std::cerr << "error: cannot write '" << report_path << "'\n";
      return 2;
    }
    f << report_json(report).dump(2) << "\n";
  }
  return report.unreached_maximal.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rcalc: revises logical specifications against rejected facts"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--budget-depth", g.budget_depth, "proof search depth override");
  app.add_option("--term-depth", g.term_depth, "term universe depth override");
  app.add_option("--limit", g.limit, "exploration configuration limit override");
  app.add_flag("--check", g.check, "classify terminations against the brute-force oracle");
  app.add_flag("--permissive", g.permissive, "keep going when a rejected fact is not refuted");
  app.add_flag("--trace", g.trace, "print derivation traces / premise markings");
  app.add_flag("--dump-tree", g.dump_tree, "print proof trees");
  app.add_flag("--serial", g.serial, "disable the OpenMP kernels");
  app.add_option("--format", g.format, "text|structured")->check(CLI::IsMember({"text", "structured"}));

  std::string file, goal, report_path;
  CLI::App* prove_cmd = app.add_subcommand("prove", "prove a goal from the laws");
  prove_cmd->add_option("file", file)->required();
  prove_cmd->add_option("goal", goal)->required();
  CLI::App* premises_cmd = app.add_subcommand("premises", "necessary premises of a provable goal");
  premises_cmd->add_option("file", file)->required();
  premises_cmd->add_option("goal", goal)->required();
  CLI::App* revise_cmd = app.add_subcommand("revise", "enumerate revision terminations");
  revise_cmd->add_option("file", file)->required();
  CLI::App* contract_cmd = app.add_subcommand("contract", "brute-force maximal contractions");
  contract_cmd->add_option("file", file)->required();
  CLI::App* verify_cmd = app.add_subcommand("verify-reachability", "compare terminations with the oracle");
  verify_cmd->add_option("file", file)->required();
  verify_cmd->add_option("--report", report_path, "write the structured report to a file");
  CLI::App* repl_cmd = app.add_subcommand("repl", "interactive session");
  repl_cmd->add_option("file", file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  runtime::set_parallel(!g.serial);

  try {
    if (prove_cmd->parsed()) return cmd_prove(g, file, goal);
    if (premises_cmd->parsed()) return cmd_premises(g, file, goal);
    if (revise_cmd->parsed()) return cmd_revise(g, file);
    if (contract_cmd->parsed()) return cmd_contract(g, file);
    if (verify_cmd->parsed()) return cmd_verify_reachability(g, file, report_path);
    if (repl_cmd->parsed()) return run_repl(std::cin, std::cout, file);
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
