#pragma once

// Minimal arithmetic expressions shared by the CLI, forcing terms, custom
// Lagrangians and custom symmetries.
//
// Grammar: + - * / ^ (right associative), unary minus, parentheses, numeric
// literals, the constants pi and e, the functions exp, sin, cos, and the
// variables named at compile time. Expressions can be differentiated
// symbolically with respect to any of their variables.

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tempvar {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace expr_detail {
struct Node;
}

class Expression {
 public:
  /// Throws ParseError with the offending position on malformed input or an
  /// unknown identifier.
  static Expression parse(const std::string& text, std::vector<std::string> variables);

  /// Evaluates with values given in the order of the variable list.
  [[nodiscard]] double operator()(std::span<const double> values) const;
  [[nodiscard]] double operator()(std::initializer_list<double> values) const;

  [[nodiscard]] Expression derivative(const std::string& variable) const;

  [[nodiscard]] const std::vector<std::string>& variables() const { return variables_; }
  [[nodiscard]] std::string to_string() const;

 private:
  Expression(std::shared_ptr<const expr_detail::Node> root, std::vector<std::string> variables)
      : root_(std::move(root)), variables_(std::move(variables)) {}

  std::shared_ptr<const expr_detail::Node> root_;
  std::vector<std::string> variables_;
};

}  // namespace tempvar
