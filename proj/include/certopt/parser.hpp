#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "certopt/problem.hpp"

namespace certopt {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the problem-file grammar:
///   var <name> in [<lo>, <hi>];
///   min <expr>;
///   subject <expr> = 0;    |    subject <expr> <= 0;
/// Expressions use infix + - * / ^ (integer exponent), parentheses and
/// the functions sqrt exp log sin cos sqr. '#' comments run to end of line.
Problem parse_problem(std::string_view text, const std::string& name = "");

}  // namespace certopt
