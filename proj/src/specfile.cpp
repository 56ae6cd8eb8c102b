#include "rcalc/specfile.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace rcalc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return true;
}

}  // namespace

std::vector<Formula> SpecFile::law_formulas() const {
  std::vector<Formula> out;
  for (const auto& [n, f] : laws) out.push_back(f);
  return out;
}
std::vector<Formula> SpecFile::rejection_formulas() const {
  std::vector<Formula> out;
  for (const auto& [n, f] : rejections) out.push_back(f);
  return out;
}

Formula SpecFile::parse_goal(const std::string& text) const {
  ParseOptions opts;
  opts.declared = declared;
  opts.variables.insert(declared_vars.begin(), declared_vars.end());
  return close_free_variables(parse_formula(text, opts));
}

SpecFile parse_specfile_text(const std::string& text) {
  SpecFile s;
  enum class Section { None, Decls, Laws, Reject, Budget } section = Section::None;
  std::set<std::string> names;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  ParseOptions opts;  // filled in incrementally as declarations arrive

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto err = [&](const std::string& msg) {
      throw SpecFileError("line " + std::to_string(lineno) + ": " + msg);
    };

    if (line == "decls:") {
      section = Section::Decls;
      continue;
    }
    if (line == "laws:") {
      section = Section::Laws;
      continue;
    }
    if (line == "reject:") {
      section = Section::Reject;
      continue;
    }
    if (line == "budget:") {
      section = Section::Budget;
      continue;
    }

    switch (section) {
      case Section::None:
        err("content before any section header");
        break;
      case Section::Decls: {
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        std::string rest = trim(line.substr(kind.size()));
        if (kind == "var") {
          for (const std::string& v : split(rest, ',')) {
            if (!valid_name(v)) err("bad variable name '" + v + "'");
            s.declared_vars.push_back(v);
          }
        } else if (kind == "const") {
          for (const std::string& c : split(rest, ',')) {
            if (!valid_name(c)) err("bad constant name '" + c + "'");
            s.declared.constants.insert(c);
          }
        } else if (kind == "func" || kind == "pred") {
          for (const std::string& item : split(rest, ',')) {
            auto slash = item.find('/');
            if (slash == std::string::npos) err("expected name/arity in '" + item + "'");
            const std::string name = trim(item.substr(0, slash));
            if (!valid_name(name)) err("bad symbol name '" + name + "'");
            int arity = 0;
            try {
              arity = std::stoi(item.substr(slash + 1));
            } catch (...) {
              err("bad arity in '" + item + "'");
            }
            if (arity < 0) err("negative arity");
            if (kind == "func") {
              if (arity == 0) err("nullary functions are constants; declare '" + name + "' with const");
              s.declared.note_function(name, arity);
            } else {
              s.declared.note_predicate(name, arity);
            }
          }
        } else {
          err("unknown declaration kind '" + kind + "'");
        }
        break;
      }
      case Section::Laws:
      case Section::Reject: {
        auto colon = line.find(':');
        if (colon == std::string::npos) err("expected 'name: formula'");
        const std::string name = trim(line.substr(0, colon));
        const std::string body = trim(line.substr(colon + 1));
        if (!valid_name(name)) err("bad entry name '" + name + "'");
        if (!names.insert(name).second) err("duplicate name '" + name + "'");
        opts.declared = s.declared;
        opts.variables = std::set<std::string>(s.declared_vars.begin(), s.declared_vars.end());
        Formula f;
        try {
          f = close_free_variables(parse_formula(body, opts));
        } catch (const SyntaxError& e) {
          err(std::string(e.what()));
        }
        if (section == Section::Laws) {
          s.laws.emplace_back(name, std::move(f));
        } else {
          if (!is_literal(f)) err("rejected fact must be a literal: " + to_string(f));
          s.rejections.emplace_back(name, std::move(f));
        }
        break;
      }
      case Section::Budget: {
        std::istringstream ls(line);
        std::string key;
        long value = 0;
        if (!(ls >> key >> value)) err("expected 'key value'");
        if (key == "depth")
          s.budget.max_depth = static_cast<int>(value);
        else if (key == "instantiations")
          s.budget.max_instantiations_per_quantifier = static_cast<int>(value);
        else if (key == "term_depth")
          s.budget.term_depth = static_cast<int>(value);
        else if (key == "model_cap")
          s.budget.model_size_cap = static_cast<int>(value);
        else if (key == "limit")
          s.limit = static_cast<int>(value);
        else
          err("unknown budget key '" + key + "'");
        break;
      }
    }
  }
  try {
    s.budget.validate();
  } catch (const SyntaxError& e) {
    throw SpecFileError(e.what());
  }
  if (s.limit <= 0) throw SpecFileError("limit must be positive");
  return s;
}

SpecFile load_specfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecFileError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_specfile_text(ss.str());
}

std::string write_specfile(const SpecFile& s) {
  std::ostringstream os;
  os << "decls:\n";
  if (!s.declared_vars.empty()) {
    os << "  var ";
    for (std::size_t i = 0; i < s.declared_vars.size(); ++i) os << (i ? ", " : "") << s.declared_vars[i];
    os << "\n";
  }
  if (!s.declared.constants.empty()) {
    os << "  const ";
    bool first = true;
    for (const std::string& c : s.declared.constants) {
      os << (first ? "" : ", ") << c;
      first = false;
    }
    os << "\n";
  }
  for (const auto& [n, a] : s.declared.functions) os << "  func " << n << "/" << a << "\n";
  for (const auto& [n, a] : s.declared.predicates) os << "  pred " << n << "/" << a << "\n";
  os << "laws:\n";
  for (const auto& [n, f] : s.laws) os << "  " << n << ": " << to_string(f) << "\n";
  if (!s.rejections.empty()) {
    os << "reject:\n";
    for (const auto& [n, f] : s.rejections) os << "  " << n << ": " << to_string(f) << "\n";
  }
  os << "budget:\n";
  os << "  depth " << s.budget.max_depth << "\n";
  os << "  instantiations " << s.budget.max_instantiations_per_quantifier << "\n";
  os << "  term_depth " << s.budget.term_depth << "\n";
  os << "  model_cap " << s.budget.model_size_cap << "\n";
  os << "  limit " << s.limit << "\n";
  return os.str();
}

void apply_budget_override(const std::string& spec, Budget& b, int& limit) {
  for (const std::string& item : split(spec, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw SpecFileError("bad budget override item '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    int value = 0;
    try {
      value = std::stoi(item.substr(eq + 1));
    } catch (...) {
      throw SpecFileError("bad budget override value in '" + item + "'");
    }
    if (key == "depth")
      b.max_depth = value;
    else if (key == "inst")
      b.max_instantiations_per_quantifier = value;
    else if (key == "term")
      b.term_depth = value;
    else if (key == "model")
      b.model_size_cap = value;
    else if (key == "limit")
      limit = value;
    else
      throw SpecFileError("unknown budget override key '" + key + "'");
  }
}

}  // namespace rcalc
