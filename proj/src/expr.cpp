#include "evo/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace evo {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 7> kFuncs{{{"exp", Func::Exp},
                                                                   {"log", Func::Log},
                                                                   {"sin", Func::Sin},
                                                                   {"cos", Func::Cos},
                                                                   {"tan", Func::Tan},
                                                                   {"sqrt", Func::Sqrt},
                                                                   {"cbrt", Func::Cbrt}}};

std::shared_ptr<Expr::Node> make(Expr::Kind kind) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  return n;
}

std::string join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

std::string shortest(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  Expr run() {
    Expr e = sum();
    skip();
    if (pos_ != src_.size()) throw SyntaxError(pos_, {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    return e;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    Expr lhs = product();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Expr::Kind::Add, lhs, product());
      } else if (accept('-')) {
        lhs = Expr::binary(Expr::Kind::Sub, lhs, product());
      } else {
        return lhs;
      }
    }
  }

  Expr product() {
    Expr lhs = power();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Expr::Kind::Mul, lhs, power());
      } else if (accept('/')) {
        lhs = Expr::binary(Expr::Kind::Div, lhs, power());
      } else {
        return lhs;
      }
    }
  }

  Expr power() {
    Expr base = unary();
    if (accept('^')) return Expr::binary(Expr::Kind::Pow, base, power());
    return base;
  }

  Expr unary() {
    if (accept('-')) return Expr::unary(Expr::Kind::Neg, unary());
    return primary();
  }

  Expr primary() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) throw SyntaxError(pos_, operand_start());
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = sum();
      if (!accept(')')) {
        skip();
        throw SyntaxError(pos_, {"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      const std::string name(src_.substr(start, pos_ - start));
      for (const auto& [fname, f] : kFuncs) {
        if (fname != name) continue;
        if (!accept('(')) {
          skip();
          throw SyntaxError(pos_, {"'('"});
        }
        Expr arg = sum();
        if (!accept(')')) {
          skip();
          throw SyntaxError(pos_, {"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
        }
        return Expr::call(f, arg);
      }
      if (name == "pi") return Expr::pi();
      for (const auto& v : vars_) {
        if (v == name) return Expr::variable(name);
      }
      throw UnknownIdentifier(name, start);
    }
    throw SyntaxError(pos_, operand_start());
  }

  Expr number() {
    // digits [. digits] [e [+-] digits]
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t d = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return pos_ - d;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw SyntaxError(start, {"digit"});
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw SyntaxError(pos_, {"digit"});
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || !std::isfinite(v)) throw SyntaxError(start, {"finite number"});
    return Expr::number(v);
  }

  std::set<std::string> operand_start() const {
    std::set<std::string> s{"number", "'('", "'-'", "function"};
    for (const auto& v : vars_) s.insert("'" + v + "'");
    s.insert("'pi'");
    return s;
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

// Binding strength for printing; atoms bind tightest.
int precedence(const Expr::Node& n) {
  switch (n.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Pow: return 3;
    case Expr::Kind::Neg: return 4;
    default: return 5;
  }
}

void print_node(const Expr::Node& n, std::ostream& os);

void print_child(const Expr::Node& child, int min_prec, std::ostream& os) {
  if (precedence(child) < min_prec) {
    os << '(';
    print_node(child, os);
    os << ')';
  } else {
    print_node(child, os);
  }
}

void print_node(const Expr::Node& n, std::ostream& os) {
  switch (n.kind) {
    case Expr::Kind::Number: os << shortest(n.value); return;
    case Expr::Kind::Pi: os << "pi"; return;
    case Expr::Kind::Variable: os << n.name; return;
    case Expr::Kind::Neg:
      os << '-';
      print_child(*n.lhs, 4, os);
      return;
    case Expr::Kind::Call:
      os << func_name(n.func) << '(';
      print_node(*n.lhs, os);
      os << ')';
      return;
    case Expr::Kind::Pow:
      print_child(*n.lhs, 4, os);
      os << '^';
      print_child(*n.rhs, 3, os);
      return;
    default: {
      const int p = precedence(n);
      const char op = n.kind == Expr::Kind::Add ? '+' : n.kind == Expr::Kind::Sub ? '-' : n.kind == Expr::Kind::Mul ? '*' : '/';
      print_child(*n.lhs, p, os);
      if (p == 1) {
        os << ' ' << op << ' ';
      } else {
        os << op;
      }
      print_child(*n.rhs, p + 1, os);
      return;
    }
  }
}

bool equal_nodes(const Expr::Node* a, const Expr::Node* b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Number: return a->value == b->value;
    case Expr::Kind::Pi: return true;
    case Expr::Kind::Variable: return a->name == b->name;
    case Expr::Kind::Call: return a->func == b->func && equal_nodes(a->lhs.get(), b->lhs.get());
    case Expr::Kind::Neg: return equal_nodes(a->lhs.get(), b->lhs.get());
    default: return equal_nodes(a->lhs.get(), b->lhs.get()) && equal_nodes(a->rhs.get(), b->rhs.get());
  }
}

double eval_node(const Expr::Node& n, const Vars& vars) {
  auto fail = [&]() -> double {
    std::ostringstream os;
    print_node(n, os);
    throw EvalDomainError(os.str(), vars.t);
  };
  double r = 0.0;
  switch (n.kind) {
    case Expr::Kind::Number: return n.value;
    case Expr::Kind::Pi: return std::numbers::pi;
    case Expr::Kind::Variable: return n.name == "s" ? vars.s : vars.t;
    case Expr::Kind::Neg: return -eval_node(*n.lhs, vars);
    case Expr::Kind::Add: r = eval_node(*n.lhs, vars) + eval_node(*n.rhs, vars); break;
    case Expr::Kind::Sub: r = eval_node(*n.lhs, vars) - eval_node(*n.rhs, vars); break;
    case Expr::Kind::Mul: r = eval_node(*n.lhs, vars) * eval_node(*n.rhs, vars); break;
    case Expr::Kind::Div: {
      const double num = eval_node(*n.lhs, vars);
      const double den = eval_node(*n.rhs, vars);
      if (den == 0.0) fail();
      r = num / den;
      break;
    }
    case Expr::Kind::Pow: r = std::pow(eval_node(*n.lhs, vars), eval_node(*n.rhs, vars)); break;
    case Expr::Kind::Call: {
      const double x = eval_node(*n.lhs, vars);
      switch (n.func) {
        case Func::Exp: r = std::exp(x); break;
        case Func::Log:
          if (x <= 0.0) fail();
          r = std::log(x);
          break;
        case Func::Sin: r = std::sin(x); break;
        case Func::Cos: r = std::cos(x); break;
        case Func::Tan: r = std::tan(x); break;
        case Func::Sqrt:
          if (x < 0.0) fail();
          r = std::sqrt(x);
          break;
        case Func::Cbrt: r = std::cbrt(x); break;
      }
      break;
    }
  }
  if (!std::isfinite(r)) fail();
  return r;
}

}  // namespace

std::string_view func_name(Func f) {
  for (const auto& [name, g] : kFuncs) {
    if (g == f) return name;
  }
  return "?";
}

Expr Expr::number(double v) {
  auto n = make(Kind::Number);
  n->value = v;
  return Expr(n);
}

Expr Expr::pi() { return Expr(make(Kind::Pi)); }

Expr Expr::variable(std::string name) {
  auto n = make(Kind::Variable);
  n->name = std::move(name);
  return Expr(n);
}

Expr Expr::unary(Kind kind, Expr operand) {
  auto n = make(kind);
  n->lhs = operand.root_;
  return Expr(n);
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  auto n = make(kind);
  n->lhs = lhs.root_;
  n->rhs = rhs.root_;
  return Expr(n);
}

Expr Expr::call(Func func, Expr arg) {
  auto n = make(Kind::Call);
  n->func = func;
  n->lhs = arg.root_;
  return Expr(n);
}

bool operator==(const Expr& a, const Expr& b) { return equal_nodes(a.root_.get(), b.root_.get()); }

SyntaxError::SyntaxError(std::size_t offset, std::set<std::string> expected)
    : Error("syntax error at offset " + std::to_string(offset) + ": expected " + join(expected)),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::string name, std::size_t offset)
    : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
      name_(std::move(name)),
      offset_(offset) {}

EvalDomainError::EvalDomainError(std::string node, double t)
    : Error("domain error in '" + node + "' at t = " + shortest(t)), node_(std::move(node)), t_(t) {}

Expr parse(std::string_view source, const std::vector<std::string>& variables) {
  return Parser(source, variables).run();
}

double eval(const Expr& e, const Vars& vars) { return eval_node(e.node(), vars); }

std::string print(const Expr& e) {
  std::ostringstream os;
  print_node(e.node(), os);
  return os.str();
}

}  // namespace evo
