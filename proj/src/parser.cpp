#include "certopt/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

namespace certopt {

namespace {

struct Token {
  enum class Kind { Identifier, Number, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(current_.line, current_.column, message);
  }

 private:
  void advance() {
    skip_space_and_comments();
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= src_.size()) {
      current_.kind = Token::Kind::End;
      current_.text = "<end of input>";
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        step();
      }
      current_.kind = Token::Kind::Identifier;
      current_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '.')) {
        step();
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t mark = pos_;
        step();
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) step();
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) step();
        } else {
          pos_ = mark;  // bare 'e' belongs to the next token
        }
      }
      current_.kind = Token::Kind::Number;
      current_.text = std::string(src_.substr(start, pos_ - start));
      current_.number = std::strtod(current_.text.c_str(), nullptr);
      return;
    }
    if (c == '<' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
      step();
      step();
      current_.kind = Token::Kind::Symbol;
      current_.text = "<=";
      return;
    }
    step();
    current_.kind = Token::Kind::Symbol;
    current_.text = std::string(1, c);
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') step();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        break;
      }
    }
  }

  void step() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_;
};

class ProblemParser {
 public:
  explicit ProblemParser(std::string_view text) : lex_(text) {}

  Problem parse(const std::string& name) {
    Problem p;
    p.name = name;
    bool have_objective = false;
    std::vector<Interval> bounds;
    while (lex_.peek().kind != Token::Kind::End) {
      const Token& t = lex_.peek();
      if (t.kind != Token::Kind::Identifier) lex_.fail("expected a statement keyword");
      if (t.text == "var") {
        lex_.take();
        Token nameTok = expect_identifier("variable name");
        if (var_index_.count(nameTok.text)) {
          throw ParseError(nameTok.line, nameTok.column,
                           "variable '" + nameTok.text + "' declared twice");
        }
        expect_identifier_text("in");
        expect_symbol("[");
        double lo = signed_number();
        expect_symbol(",");
        double hi = signed_number();
        expect_symbol("]");
        expect_symbol(";");
        if (!(lo <= hi)) {
          throw ParseError(nameTok.line, nameTok.column,
                           "variable '" + nameTok.text + "' has inverted bounds");
        }
        var_index_[nameTok.text] = static_cast<int>(bounds.size());
        p.variable_names.push_back(nameTok.text);
        bounds.emplace_back(lo, hi);
      } else if (t.text == "min") {
        Token kw = lex_.take();
        if (have_objective) {
          throw ParseError(kw.line, kw.column, "multiple objectives");
        }
        p.objective = parse_expression();
        expect_symbol(";");
        have_objective = true;
      } else if (t.text == "subject") {
        lex_.take();
        Expr e = parse_expression();
        Token rel = lex_.take();
        if (rel.kind != Token::Kind::Symbol || (rel.text != "=" && rel.text != "<=")) {
          throw ParseError(rel.line, rel.column, "expected '= 0' or '<= 0' after constraint");
        }
        Token zero = lex_.take();
        if (zero.kind != Token::Kind::Number || zero.number != 0.0) {
          throw ParseError(zero.line, zero.column, "constraint right-hand side must be 0");
        }
        expect_symbol(";");
        if (rel.text == "=") {
          p.equalities.push_back(e);
        } else {
          p.inequalities.push_back(e);
        }
      } else {
        lex_.fail("unknown statement '" + t.text + "'");
      }
    }
    if (!have_objective) {
      throw ParseError(1, 1, "missing 'min' objective");
    }
    p.n = static_cast<int>(bounds.size());
    p.domain = Box(std::move(bounds));
    return p;
  }

 private:
  Expr parse_expression() { return parse_sum(); }

  Expr parse_sum() {
    Expr e = parse_term();
    while (lex_.peek().kind == Token::Kind::Symbol &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      std::string op = lex_.take().text;
      Expr rhs = parse_term();
      e = op == "+" ? e + rhs : e - rhs;
    }
    return e;
  }

  Expr parse_term() {
    Expr e = parse_factor();
    while (lex_.peek().kind == Token::Kind::Symbol &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      std::string op = lex_.take().text;
      Expr rhs = parse_factor();
      e = op == "*" ? e * rhs : e / rhs;
    }
    return e;
  }

  Expr parse_factor() {
    if (lex_.peek().kind == Token::Kind::Symbol && lex_.peek().text == "-") {
      lex_.take();
      return -parse_factor();
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (lex_.peek().kind == Token::Kind::Symbol && lex_.peek().text == "^") {
      lex_.take();
      bool negative = false;
      if (lex_.peek().kind == Token::Kind::Symbol && lex_.peek().text == "-") {
        lex_.take();
        negative = true;
      }
      Token expTok = lex_.take();
      if (expTok.kind != Token::Kind::Number) {
        throw ParseError(expTok.line, expTok.column, "exponent must be an integer literal");
      }
      double ip;
      if (std::modf(expTok.number, &ip) != 0.0 || std::abs(ip) > 1e9) {
        throw ParseError(expTok.line, expTok.column, "exponent must be an integer literal");
      }
      int e = static_cast<int>(ip);
      return Expr::pow(base, negative ? -e : e);
    }
    return base;
  }

  Expr parse_atom() {
    Token t = lex_.take();
    if (t.kind == Token::Kind::Number) {
      return Expr::constant(t.number);
    }
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      Expr e = parse_expression();
      expect_symbol(")");
      return e;
    }
    if (t.kind == Token::Kind::Identifier) {
      static const std::map<std::string, UnaryOp> functions = {
          {"sqrt", UnaryOp::Sqrt}, {"exp", UnaryOp::Exp}, {"log", UnaryOp::Log},
          {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos}, {"sqr", UnaryOp::Sqr}};
      auto fn = functions.find(t.text);
      if (fn != functions.end()) {
        expect_symbol("(");
        Expr arg = parse_expression();
        expect_symbol(")");
        return Expr::unary(fn->second, arg);
      }
      auto v = var_index_.find(t.text);
      if (v == var_index_.end()) {
        throw ParseError(t.line, t.column, "undeclared variable '" + t.text + "'");
      }
      return Expr::variable(v->second);
    }
    throw ParseError(t.line, t.column, "expected an expression, found '" + t.text + "'");
  }

  double signed_number() {
    bool negative = false;
    if (lex_.peek().kind == Token::Kind::Symbol && lex_.peek().text == "-") {
      lex_.take();
      negative = true;
    }
    Token t = lex_.take();
    if (t.kind != Token::Kind::Number) {
      throw ParseError(t.line, t.column, "expected a number, found '" + t.text + "'");
    }
    return negative ? -t.number : t.number;
  }

  Token expect_identifier(const std::string& what) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Identifier) {
      throw ParseError(t.line, t.column, "expected " + what + ", found '" + t.text + "'");
    }
    return t;
  }

  void expect_identifier_text(const std::string& text) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Identifier || t.text != text) {
      throw ParseError(t.line, t.column, "expected '" + text + "', found '" + t.text + "'");
    }
  }

  void expect_symbol(const std::string& s) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Symbol || t.text != s) {
      throw ParseError(t.line, t.column, "expected '" + s + "', found '" + t.text + "'");
    }
  }

  Lexer lex_;
  std::map<std::string, int> var_index_;
};

}  // namespace

Problem parse_problem(std::string_view text, const std::string& name) {
  ProblemParser parser(text);
  return parser.parse(name);
}

std::string to_text(const Problem& p) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < p.n; ++i) {
    os << "var " << p.variable_names[static_cast<std::size_t>(i)] << " in ["
       << p.domain[static_cast<std::size_t>(i)].lo() << ", "
       << p.domain[static_cast<std::size_t>(i)].hi() << "];\n";
  }
  os << "min " << p.objective.to_text(p.variable_names) << ";\n";
  for (const auto& g : p.equalities) {
    os << "subject " << g.to_text(p.variable_names) << " = 0;\n";
  }
  for (const auto& h : p.inequalities) {
    os << "subject " << h.to_text(p.variable_names) << " <= 0;\n";
  }
  return os.str();
}

}  // namespace certopt
