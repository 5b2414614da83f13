#include "bsat/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "bsat/error.hpp"

namespace bsat {
namespace {

enum class Tok {
  Ident,
  Forall,
  Exists,
  Not,
  And,
  Or,
  Implies,
  Iff,
  LParen,
  RParen,
  Comma,
  Dot,
  Eq,
  End,
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Eq: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { tokenize(); }

  ParsedFormula run() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    ParsedFormula out{f, infer_symbols(f)};
    return out;
  }

 private:
  [[noreturn]] void fail(std::size_t offset, const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::SyntaxError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what,
                offset);
  }

  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      const char c = text_[i];
      if (c == kPseudoBlank) {
        throw Error(ErrorKind::ReservedByte,
                    "reserved byte '#' at offset " + std::to_string(i), i);
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) {
          ++j;
        }
        std::string word(text_.substr(i, j - i));
        Tok kind = Tok::Ident;
        if (word == "forall") kind = Tok::Forall;
        if (word == "exists") kind = Tok::Exists;
        tokens_.push_back({kind, std::move(word), i});
        i = j;
        continue;
      }
      auto push = [&](Tok kind, std::size_t len) {
        tokens_.push_back({kind, std::string(text_.substr(i, len)), i});
        i += len;
      };
      switch (c) {
        case '~': push(Tok::Not, 1); continue;
        case '&': push(Tok::And, 1); continue;
        case '|': push(Tok::Or, 1); continue;
        case '(': push(Tok::LParen, 1); continue;
        case ')': push(Tok::RParen, 1); continue;
        case ',': push(Tok::Comma, 1); continue;
        case '.': push(Tok::Dot, 1); continue;
        case '=': push(Tok::Eq, 1); continue;
        default: break;
      }
      if (text_.substr(i, 2) == "->") {
        push(Tok::Implies, 2);
        continue;
      }
      if (text_.substr(i, 3) == "<->") {
        push(Tok::Iff, 3);
        continue;
      }
      fail(i, "unexpected character '" + std::string(1, c) + "'");
    }
    tokens_.push_back({Tok::End, "", text_.size()});
  }

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok kind) const { return peek().kind == kind; }
  Token take() { return tokens_[pos_++]; }

  Token expect(Tok kind, std::string_view what) {
    if (!at(kind)) {
      const auto& t = peek();
      fail(t.offset, "expected " + std::string(what) + ", found " +
                         (t.kind == Tok::Ident ? "'" + t.text + "'" : std::string(describe(t.kind))));
    }
    return take();
  }

  static bool is_upper(const std::string& s) { return std::isupper(static_cast<unsigned char>(s[0])); }

  Formula formula() {
    if (at(Tok::Forall) || at(Tok::Exists)) return quantified();
    return iff();
  }

  Formula quantified() {
    const bool universal = take().kind == Tok::Forall;
    std::vector<std::string> vars;
    do {
      auto t = expect(Tok::Ident, "variable name");
      if (is_upper(t.text)) fail(t.offset, "variable names must start lowercase: '" + t.text + "'");
      vars.push_back(t.text);
    } while (at(Tok::Ident));
    expect(Tok::Dot, "'.' after quantified variables");
    for (const auto& v : vars) scope_.push_back(v);
    Formula body = formula();
    scope_.resize(scope_.size() - vars.size());
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      body = universal ? Formula::forall(*it, body) : Formula::exists(*it, body);
    }
    return body;
  }

  Formula iff() {
    Formula lhs = implies();
    if (at(Tok::Iff)) {
      take();
      return Formula::biconditional(lhs, iff());
    }
    return lhs;
  }

  Formula implies() {
    Formula lhs = disjunction();
    if (at(Tok::Implies)) {
      take();
      return Formula::implication(lhs, implies());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (at(Tok::Or)) {
      take();
      f = Formula::disjunction(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (at(Tok::And)) {
      take();
      f = Formula::conjunction(f, unary());
    }
    return f;
  }

  Formula unary() {
    if (at(Tok::Not)) {
      take();
      return Formula::negation(unary());
    }
    if (at(Tok::LParen)) {
      take();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at(Tok::Forall) || at(Tok::Exists)) return quantified();
    if (at(Tok::Ident) && is_upper(peek().text)) return atom();
    if (at(Tok::Ident)) {
      Term lhs = term();
      expect(Tok::Eq, "'=' after term");
      Term rhs = term();
      return Formula::equal(std::move(lhs), std::move(rhs));
    }
    const auto& t = peek();
    fail(t.offset, "expected a formula, found " + std::string(describe(t.kind)));
  }

  std::vector<Term> arguments() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    args.push_back(term());
    while (at(Tok::Comma)) {
      take();
      args.push_back(term());
    }
    expect(Tok::RParen, "')' or ','");
    return args;
  }

  void check_arity(std::map<std::string, std::size_t>& table, const Token& name, std::size_t arity,
                   std::string_view what) {
    auto [it, inserted] = table.emplace(name.text, arity);
    if (!inserted && it->second != arity) {
      throw Error(ErrorKind::ArityMismatch,
                  std::string(what) + " " + name.text + " used with arity " +
                      std::to_string(it->second) + " and " + std::to_string(arity),
                  name.offset);
    }
  }

  Formula atom() {
    Token name = take();
    if (!at(Tok::LParen)) {
      fail(peek().offset, "expected '(' after relation " + name.text + " (nullary relations are not supported)");
    }
    auto args = arguments();
    check_arity(relations_, name, args.size(), "relation");
    return Formula::atom(name.text, std::move(args));
  }

  Term term() {
    Token name = expect(Tok::Ident, "term");
    if (is_upper(name.text)) fail(name.offset, "terms must start lowercase: '" + name.text + "'");
    if (at(Tok::LParen)) {
      auto args = arguments();
      check_arity(functions_, name, args.size(), "function");
      return Term::function(name.text, std::move(args));
    }
    if (std::find(scope_.begin(), scope_.end(), name.text) != scope_.end()) {
      return Term::variable(name.text);
    }
    return Term::constant(name.text);
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
  std::map<std::string, std::size_t> relations_;
  std::map<std::string, std::size_t> functions_;
};

// Binding strength; quantifiers bind loosest.
int precedence(Op op) {
  switch (op) {
    case Op::Forall:
    case Op::Exists: return 0;
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Not: return 5;
    case Op::Atom:
    case Op::Equal: return 6;
  }
  return 6;
}

bool right_assoc(Op op) { return op == Op::Implies || op == Op::Iff; }

std::string_view symbol(Op op) {
  switch (op) {
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Implies: return " -> ";
    case Op::Iff: return " <-> ";
    default: return "";
  }
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print(f, out);
  if (parens) out += ')';
}

void print_terms(const std::vector<Term>& terms, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ',';
    out += pretty_print(terms[i]);
  }
  out += ')';
}

void print(const Formula& f, std::string& out) {
  const Op op = f.op();
  switch (op) {
    case Op::Atom:
      out += f.name();
      print_terms(f.terms(), out);
      return;
    case Op::Equal:
      out += pretty_print(f.terms()[0]);
      out += " = ";
      out += pretty_print(f.terms()[1]);
      return;
    case Op::Not: {
      out += '~';
      const Op inner = f.lhs().op();
      print_operand(f.lhs(), is_binary(inner) || is_quantifier(inner), out);
      return;
    }
    case Op::Forall:
    case Op::Exists: {
      out += op == Op::Forall ? "forall" : "exists";
      const Formula* cur = &f;
      while (cur->op() == op) {
        out += ' ';
        out += cur->name();
        cur = &cur->body();
      }
      out += " . ";
      print(*cur, out);
      return;
    }
    default: break;
  }
  const int p = precedence(op);
  const Op l = f.lhs().op();
  const Op r = f.rhs().op();
  const bool lparen = is_quantifier(l) || precedence(l) < p || (precedence(l) == p && right_assoc(op));
  const bool rparen = is_quantifier(r) || precedence(r) < p || (precedence(r) == p && !right_assoc(op));
  print_operand(f.lhs(), lparen, out);
  out += symbol(op);
  print_operand(f.rhs(), rparen, out);
}

}  // namespace

ParsedFormula parse(std::string_view text) { return Parser(text).run(); }

std::string pretty_print(const Term& t) {
  if (!t.is_function()) return t.name;
  std::string out = t.name;
  out += '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ',';
    out += pretty_print(t.args[i]);
  }
  out += ')';
  return out;
}

std::string pretty_print(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string strip_comments(std::string_view file_text) {
  std::string out;
  out.reserve(file_text.size());
  bool in_comment = false;
  for (char c : file_text) {
    if (c == '\n') in_comment = false;
    else if (c == kPseudoBlank) in_comment = true;
    if (!in_comment) out += c;
  }
  return out;
}

}  // namespace bsat
