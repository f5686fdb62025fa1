#pragma once

#include <string>
#include <vector>

#include "certopt/box.hpp"
#include "certopt/expr.hpp"

namespace certopt {

/// minimize objective(x) subject to equalities = 0, inequalities <= 0,
/// x in domain.
struct Problem {
  int n = 0;
  Expr objective;
  std::vector<Expr> equalities;
  std::vector<Expr> inequalities;
  Box domain;
  std::vector<std::string> variable_names;
  std::string name;
};

/// Renders a Problem back into the problem-file grammar.
std::string to_text(const Problem& p);

}  // namespace certopt
