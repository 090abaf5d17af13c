#include "tempvar/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace tempvar {
namespace expr_detail {

enum class Op { number, variable, neg, add, sub, mul, div, pow, exp, sin, cos };

struct Node {
  Op op;
  double value = 0.0;     // number
  std::size_t index = 0;  // variable
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr number(double v) { return std::make_shared<const Node>(Node{Op::number, v, 0, nullptr, nullptr}); }
NodePtr variable(std::size_t i) { return std::make_shared<const Node>(Node{Op::variable, 0.0, i, nullptr, nullptr}); }
NodePtr make(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  return std::make_shared<const Node>(Node{op, 0.0, 0, std::move(lhs), std::move(rhs)});
}

bool is_number(const NodePtr& n, double v) { return n->op == Op::number && n->value == v; }

// Constructors with the obvious zero/one simplifications, so derivatives stay small.
NodePtr add(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0)) return b;
  if (is_number(b, 0.0)) return a;
  return make(Op::add, std::move(a), std::move(b));
}
NodePtr sub(NodePtr a, NodePtr b) {
  if (is_number(b, 0.0)) return a;
  if (is_number(a, 0.0)) return make(Op::neg, std::move(b));
  return make(Op::sub, std::move(a), std::move(b));
}
NodePtr mul(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0) || is_number(b, 0.0)) return number(0.0);
  if (is_number(a, 1.0)) return b;
  if (is_number(b, 1.0)) return a;
  return make(Op::mul, std::move(a), std::move(b));
}
NodePtr div(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0)) return number(0.0);
  if (is_number(b, 1.0)) return a;
  return make(Op::div, std::move(a), std::move(b));
}

double eval(const Node& n, std::span<const double> vars) {
  switch (n.op) {
    case Op::number: return n.value;
    case Op::variable: return vars[n.index];
    case Op::neg: return -eval(*n.lhs, vars);
    case Op::add: return eval(*n.lhs, vars) + eval(*n.rhs, vars);
    case Op::sub: return eval(*n.lhs, vars) - eval(*n.rhs, vars);
    case Op::mul: return eval(*n.lhs, vars) * eval(*n.rhs, vars);
    case Op::div: return eval(*n.lhs, vars) / eval(*n.rhs, vars);
    case Op::pow: return std::pow(eval(*n.lhs, vars), eval(*n.rhs, vars));
    case Op::exp: return std::exp(eval(*n.lhs, vars));
    case Op::sin: return std::sin(eval(*n.lhs, vars));
    case Op::cos: return std::cos(eval(*n.lhs, vars));
  }
  return 0.0;
}

bool depends_on(const NodePtr& n, std::size_t var) {
  if (!n) return false;
  if (n->op == Op::variable) return n->index == var;
  return depends_on(n->lhs, var) || depends_on(n->rhs, var);
}

NodePtr derive(const NodePtr& n, std::size_t var) {
  switch (n->op) {
    case Op::number: return number(0.0);
    case Op::variable: return number(n->index == var ? 1.0 : 0.0);
    case Op::neg: {
      auto d = derive(n->lhs, var);
      return is_number(d, 0.0) ? d : make(Op::neg, d);
    }
    case Op::add: return add(derive(n->lhs, var), derive(n->rhs, var));
    case Op::sub: return sub(derive(n->lhs, var), derive(n->rhs, var));
    case Op::mul:
      return add(mul(derive(n->lhs, var), n->rhs), mul(n->lhs, derive(n->rhs, var)));
    case Op::div:
      return div(sub(mul(derive(n->lhs, var), n->rhs), mul(n->lhs, derive(n->rhs, var))),
                 make(Op::mul, n->rhs, n->rhs));
    case Op::pow: {
      const auto& base = n->lhs;
      const auto& expo = n->rhs;
      if (!depends_on(expo, var)) {
        // d(f^c) = c f^(c-1) f'
        return mul(mul(expo, make(Op::pow, base, sub(expo, number(1.0)))), derive(base, var));
      }
      // Variable exponents are only differentiable over a constant base: d(c^g) = c^g ln(c) g'.
      if (base->op == Op::number) {
        return mul(mul(n, number(std::log(base->value))), derive(expo, var));
      }
      throw ParseError("cannot differentiate a power with variable base and exponent");
    }
    case Op::exp: return mul(n, derive(n->lhs, var));
    case Op::sin: return mul(make(Op::cos, n->lhs), derive(n->lhs, var));
    case Op::cos: return mul(make(Op::neg, make(Op::sin, n->lhs)), derive(n->lhs, var));
  }
  return number(0.0);
}

void print(const Node& n, const std::vector<std::string>& names, std::ostringstream& os) {
  auto binary = [&](const char* sym) {
    os << '(';
    print(*n.lhs, names, os);
    os << sym;
    print(*n.rhs, names, os);
    os << ')';
  };
  auto call = [&](const char* fn) {
    os << fn << '(';
    print(*n.lhs, names, os);
    os << ')';
  };
  switch (n.op) {
    case Op::number: os << n.value; break;
    case Op::variable: os << names[n.index]; break;
    case Op::neg: os << "(-"; print(*n.lhs, names, os); os << ')'; break;
    case Op::add: binary("+"); break;
    case Op::sub: binary("-"); break;
    case Op::mul: binary("*"); break;
    case Op::div: binary("/"); break;
    case Op::pow: binary("^"); break;
    case Op::exp: call("exp"); break;
    case Op::sin: call("sin"); break;
    case Op::cos: call("cos"); break;
  }
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& names) : text_(text), names_(names) {}

  NodePtr parse() {
    auto root = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + text_ + "': " + what + " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expression() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Op::add, lhs, term());
      else if (accept('-')) lhs = make(Op::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Op::mul, lhs, unary());
      else if (accept('/')) lhs = make(Op::div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make(Op::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return number(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string ident = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == ident) return variable(i);
      }
      if (ident == "pi") return number(std::numbers::pi);
      if (ident == "e") return number(std::numbers::e);
      Op fn;
      if (ident == "exp") fn = Op::exp;
      else if (ident == "sin") fn = Op::sin;
      else if (ident == "cos") fn = Op::cos;
      else {
        pos_ = start;
        fail("unknown identifier '" + ident + "'");
      }
      if (!accept('(')) fail("expected '(' after " + ident);
      auto arg = expression();
      if (!accept(')')) fail("expected ')'");
      return make(fn, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace expr_detail

Expression Expression::parse(const std::string& text, std::vector<std::string> variables) {
  expr_detail::Parser parser(text, variables);
  auto root = parser.parse();
  return Expression(std::move(root), std::move(variables));
}

double Expression::operator()(std::span<const double> values) const {
  if (values.size() != variables_.size()) {
    throw std::invalid_argument("expression: expected " + std::to_string(variables_.size()) + " values");
  }
  return expr_detail::eval(*root_, values);
}

double Expression::operator()(std::initializer_list<double> values) const {
  return (*this)(std::span<const double>(values.begin(), values.size()));
}

Expression Expression::derivative(const std::string& variable) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == variable) return Expression(expr_detail::derive(root_, i), variables_);
  }
  throw ParseError("expression has no variable '" + variable + "'");
}

std::string Expression::to_string() const {
  std::ostringstream os;
  expr_detail::print(*root_, variables_, os);
  return os.str();
}

}  // namespace tempvar
