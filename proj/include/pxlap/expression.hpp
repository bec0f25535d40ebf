#pragma once

#include <memory>
#include <string>

namespace pxlap {

// Arithmetic expression in the spatial variables x, y.  Supported grammar:
// numeric literals, x, y, + - * / ^ (right associative), unary minus and
// parentheses.  Parsing happens once; evaluation is allocation free.
class Expression {
public:
  struct Node;

  static Expression parse(const std::string& text);

  double eval(double x, double y = 0.0) const;

  const std::string& text() const { return text_; }

private:
  Expression() = default;

  std::string text_;
  std::shared_ptr<const Node> root_;
};

// Thrown on malformed input; message carries the offending position.
class ExpressionError : public std::exception {
public:
  explicit ExpressionError(std::string msg) : msg_(std::move(msg)) {}
  const char* what() const noexcept override { return msg_.c_str(); }

private:
  std::string msg_;
};

}  // namespace pxlap
