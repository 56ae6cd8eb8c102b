#include "rcalc/parse.hpp"

#include <cctype>
#include <vector>

namespace rcalc {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Tilde, Amp, Pipe, Arrow, Equal, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  auto push = [&](Tok k, std::string t, std::size_t p) { out.push_back({k, std::move(t), p}); };
  while (i < n) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      push(Tok::Ident, src.substr(i, j - i), i);
      i = j;
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, "(", i); ++i; break;
      case ')': push(Tok::RParen, ")", i); ++i; break;
      case ',': push(Tok::Comma, ",", i); ++i; break;
      case '~': push(Tok::Tilde, "~", i); ++i; break;
      case '&': push(Tok::Amp, "&", i); ++i; break;
      case '|': push(Tok::Pipe, "|", i); ++i; break;
      case '.': push(Tok::Dot, ".", i); ++i; break;
      case '=': push(Tok::Equal, "=", i); ++i; break;
      case '-':
        if (i + 1 < n && src[i + 1] == '>') {
          push(Tok::Arrow, "->", i);
          i += 2;
          break;
        }
        throw ParseError("stray '-'", i);
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  push(Tok::End, "", n);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)), opts_(opts) {}

  Formula run() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  const ParseOptions& opts_;
  std::set<std::string> bound_;
  Signature seen_;  // arity consistency within this parse

  const Token& peek() const { return toks_[at_]; }
  Token take() { return toks_[at_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++at_;
      return true;
    }
    return false;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) throw ParseError(std::string("expected ") + what, peek().pos);
  }

  bool is_variable_name(const std::string& name) const {
    if (bound_.count(name) || opts_.variables.count(name)) return true;
    if (opts_.declared) return false;
    return true;  // permissive: free term identifiers are variables until closure
  }

  Formula formula() { return implication(); }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return implies(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Pipe)) f = disj(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = conj(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Tilde)) return neg(unary());
    if (peek().kind == Tok::Ident && (peek().text == "forall" || peek().text == "exists")) {
      const bool uni = peek().text == "forall";
      const std::size_t qpos = take().pos;
      if (peek().kind != Tok::Ident) throw ParseError("expected bound variable name", peek().pos);
      const std::string v = take().text;
      if (v == "forall" || v == "exists") throw ParseError("reserved word used as variable", qpos);
      expect(Tok::Dot, "'.' after bound variable");
      const bool shadow = bound_.count(v) > 0;
      bound_.insert(v);
      Formula body = formula();  // body extends maximally right
      if (!shadow) bound_.erase(v);
      return uni ? forall(v, std::move(body)) : exists(v, std::move(body));
    }
    return primary();
  }

  Formula primary() {
    if (accept(Tok::LParen)) {
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (peek().kind != Tok::Ident) throw ParseError("expected formula", peek().pos);
    // Head identifier; whether it names a predicate or the head of an
    // equality's left term is decided by what follows.
    const Token id = take();
    if (id.text == "forall" || id.text == "exists")
      throw ParseError("reserved word in formula position", id.pos);
    std::vector<Term> args;
    bool applied = false;
    if (accept(Tok::LParen)) {
      applied = true;
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
      expect(Tok::RParen, "')'");
    }
    if (accept(Tok::Equal)) {
      Term lhs = applied ? make_function(id, std::move(args)) : make_leaf_term(id);
      Term rhs = term();
      return eq(std::move(lhs), std::move(rhs));
    }
    const int arity = static_cast<int>(args.size());
    if (opts_.declared) {
      auto it = opts_.declared->predicates.find(id.text);
      if (it == opts_.declared->predicates.end())
        throw ParseError("undeclared predicate '" + id.text + "'", id.pos);
      if (it->second != arity) throw ArityError(id.text, arity, it->second);
    }
    seen_.note_predicate(id.text, arity);
    return atom(id.text, std::move(args));
  }

  Term make_function(const Token& id, std::vector<Term> args) {
    if (opts_.declared) {
      auto it = opts_.declared->functions.find(id.text);
      if (it == opts_.declared->functions.end())
        throw ParseError("undeclared function '" + id.text + "'", id.pos);
      if (it->second != static_cast<int>(args.size()))
        throw ArityError(id.text, static_cast<int>(args.size()), it->second);
    }
    seen_.note_function(id.text, static_cast<int>(args.size()));
    return app(id.text, std::move(args));
  }

  Term make_leaf_term(const Token& id) {
    if (is_variable_name(id.text)) return var(id.text);
    if (opts_.declared) {
      if (opts_.declared->constants.count(id.text)) return cst(id.text);
      throw ParseError("undeclared symbol '" + id.text + "'", id.pos);
    }
    return cst(id.text);
  }

  Term term() {
    if (peek().kind != Tok::Ident) throw ParseError("expected term", peek().pos);
    const Token id = take();
    if (id.text == "forall" || id.text == "exists")
      throw ParseError("reserved word in term position", id.pos);
    if (accept(Tok::LParen)) {
      std::vector<Term> args;
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
      expect(Tok::RParen, "')'");
      return make_function(id, std::move(args));
    }
    return make_leaf_term(id);
  }
};

}  // namespace

Formula parse_formula(const std::string& text, const ParseOptions& opts) {
  Parser p(lex(text), opts);
  return canonicalize(p.run());
}

Formula parse_formula(const std::string& text) {
  ParseOptions opts;
  return parse_formula(text, opts);
}

}  // namespace rcalc
