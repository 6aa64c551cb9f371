#pragma once

#include "bbm/symbolic.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bbm::sym {

/// Parse failure at a 0-based character offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Parse tree for the input grammar:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := ('-' | '+') unary | power
///   power := atom ('^' integer)?
///   atom  := number | jet | func '(' 'u' ')' | '(' expr ')'
/// with jets u, u_t, u_x, u_tx, u_txx, ... and funcs f, f', f'', ..., F, h.
struct Expr {
    enum class Kind { Number, Jet, Func, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind;
    std::size_t position = 0;
    Rational number;
    JetVar jet;
    FuncSym func;
    int exponent = 0;
    std::vector<std::unique_ptr<Expr>> children;
};

std::unique_ptr<Expr> parse_ast(std::string_view text);

/// Division is only allowed by nonzero constants.
DiffPoly lower(const Expr& expr);

DiffPoly parse(std::string_view text);

}  // namespace bbm::sym
