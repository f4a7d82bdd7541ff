#pragma once

#include <memory>
#include <string>

namespace kss {

/// Arithmetic expression in x and y, used for custom potentials.
/// Grammar: + - * / ^ (right-associative), unary minus, parentheses, numbers, the variables
/// x and y, the constant pi, and sin cos tan exp log sqrt abs tanh.
class Expression {
public:
    /// Throws ConfigError naming the offending column on a parse error.
    static Expression parse(const std::string& text);

    double operator()(double x, double y) const;
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

} // namespace kss
