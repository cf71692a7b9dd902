#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evo/errors.hpp"

namespace evo {

enum class Func { Exp, Log, Sin, Cos, Tan, Sqrt, Cbrt };

/// Immutable expression tree. Copies share nodes.
class Expr {
 public:
  enum class Kind { Number, Pi, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

  struct Node {
    Kind kind = Kind::Number;
    double value = 0.0;  // Number
    std::string name;    // Variable
    Func func = Func::Exp;
    std::shared_ptr<const Node> lhs, rhs;  // rhs unused for Neg and Call
  };

  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  static Expr number(double v);
  static Expr pi();
  static Expr variable(std::string name);
  static Expr unary(Kind kind, Expr operand);  // Neg
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr call(Func func, Expr arg);

  const Node& node() const { return *root_; }
  bool empty() const { return !root_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> root_;
};

std::string_view func_name(Func f);

/// Variable assignment for evaluation.
struct Vars {
  double t = 0.0;
  double s = 0.0;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::set<std::string> expected);
  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::set<std::string> expected_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::string name, std::size_t offset);
  const std::string& name() const { return name_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

/// A subexpression produced a non-finite value or divided by zero.
class EvalDomainError : public Error {
 public:
  EvalDomainError(std::string node, double t);
  const std::string& node() const { return node_; }
  double t() const { return t_; }

 private:
  std::string node_;
  double t_;
};

/// Grammar (whitespace ignored):
///   sum     := product (('+' | '-') product)*
///   product := power (('*' | '/') power)*
///   power   := unary ('^' power)?
///   unary   := '-' unary | primary
///   primary := number | 'pi' | variable | func '(' sum ')' | '(' sum ')'
/// so `-2^2` is (-2)^2 and `2^3^2` is 2^(3^2). `variables` lists the accepted
/// variable names.
Expr parse(std::string_view source, const std::vector<std::string>& variables = {"t"});

double eval(const Expr& e, const Vars& vars);
inline double eval(const Expr& e, double t) { return eval(e, Vars{t, 0.0}); }

/// Text that parses back to an identical tree, with the fewest parentheses.
/// Numbers use the shortest round-trip representation.
std::string print(const Expr& e);

}  // namespace evo
