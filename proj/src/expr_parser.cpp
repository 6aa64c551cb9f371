#include "bbm/expr_parser.hpp"

#include <algorithm>
#include <cctype>

namespace bbm::sym {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::unique_ptr<Expr> run() {
        auto e = expr();
        skip_ws();
        if (pos_ < text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return e;
    }

private:
    static std::unique_ptr<Expr> node(Expr::Kind kind, std::size_t pos) {
        auto e = std::make_unique<Expr>();
        e->kind = kind;
        e->position = pos;
        return e;
    }

    static std::unique_ptr<Expr> binary(Expr::Kind kind, std::size_t pos, std::unique_ptr<Expr> a,
                                        std::unique_ptr<Expr> b) {
        auto e = node(kind, pos);
        e->children.push_back(std::move(a));
        e->children.push_back(std::move(b));
        return e;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    std::unique_ptr<Expr> expr() {
        auto lhs = term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            const std::size_t at = pos_++;
            lhs = binary(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, at, std::move(lhs), term());
        }
    }

    std::unique_ptr<Expr> term() {
        auto lhs = unary();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            const std::size_t at = pos_++;
            lhs = binary(c == '*' ? Expr::Kind::Mul : Expr::Kind::Div, at, std::move(lhs), unary());
        }
    }

    std::unique_ptr<Expr> unary() {
        const char c = peek();
        if (c == '-' || c == '+') {
            const std::size_t at = pos_++;
            auto operand = unary();
            if (c == '+') return operand;
            auto e = node(Expr::Kind::Neg, at);
            e->children.push_back(std::move(operand));
            return e;
        }
        return power();
    }

    std::unique_ptr<Expr> power() {
        auto base = atom();
        if (!accept('^')) return base;
        skip_ws();
        const std::size_t at = pos_;
        std::size_t end = pos_;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        if (end == pos_) throw ParseError("expected a nonnegative integer exponent", pos_);
        if (end - pos_ > 4) throw ParseError("exponent too large", pos_);
        auto e = node(Expr::Kind::Pow, at);
        e->exponent = std::stoi(std::string(text_.substr(pos_, end - pos_)));
        pos_ = end;
        e->children.push_back(std::move(base));
        return e;
    }

    std::unique_ptr<Expr> atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            const std::size_t open = pos_++;
            auto e = expr();
            skip_ws();
            if (pos_ >= text_.size()) throw ParseError("unexpected end of input, unclosed '(' from " + std::to_string(open), pos_);
            if (text_[pos_] != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::unique_ptr<Expr> number() {
        const std::size_t start = pos_;
        std::string digits;
        int decimals = 0;
        bool dot = false;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            if (text_[pos_] == '.') {
                if (dot) throw ParseError("malformed number", pos_);
                dot = true;
            } else {
                digits += text_[pos_];
                if (dot) ++decimals;
            }
            ++pos_;
        }
        if (digits.empty()) throw ParseError("malformed number", start);
        auto e = node(Expr::Kind::Number, start);
        // cpp_int reads a leading 0 as octal.
        digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
        boost::multiprecision::cpp_int den = 1;
        for (int i = 0; i < decimals; ++i) den *= 10;
        e->number = Rational(boost::multiprecision::cpp_int(digits), den);
        return e;
    }

    std::unique_ptr<Expr> identifier() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
        const std::string_view name = text_.substr(start, end - start);
        pos_ = end;

        if (name == "u") return jet_node(start, {0, 0});
        if (name.size() > 2 && name.substr(0, 2) == "u_") {
            JetVar v;
            for (char c : name.substr(2)) {
                if (c == 't') ++v.t_order;
                else if (c == 'x') ++v.x_order;
                else throw ParseError("unknown jet variable '" + std::string(name) + "'", start);
            }
            return jet_node(start, v);
        }
        if (name == "f" || name == "F" || name == "h") {
            FuncSym s;
            s.base = name == "f" ? FuncSym::Base::f : name == "F" ? FuncSym::Base::F : FuncSym::Base::h;
            while (pos_ < text_.size() && text_[pos_] == '\'') {
                ++s.deriv_order;
                ++pos_;
            }
            if (!accept('(')) throw ParseError("expected '(' after function symbol", pos_);
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != 'u' ||
                (pos_ + 1 < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == '_')))
                throw ParseError("function symbols take the single argument u", pos_);
            ++pos_;
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            auto e = node(Expr::Kind::Func, start);
            e->func = s;
            return e;
        }
        throw ParseError("unknown token '" + std::string(name) + "'", start);
    }

    static std::unique_ptr<Expr> jet_node(std::size_t pos, JetVar v) {
        auto e = node(Expr::Kind::Jet, pos);
        e->jet = v;
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<Expr> parse_ast(std::string_view text) { return Parser(text).run(); }

DiffPoly lower(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Number: return DiffPoly(e.number);
    case Expr::Kind::Jet: return DiffPoly::var(e.jet);
    case Expr::Kind::Func: return DiffPoly::func(e.func);
    case Expr::Kind::Add: return lower(*e.children[0]) + lower(*e.children[1]);
    case Expr::Kind::Sub: return lower(*e.children[0]) - lower(*e.children[1]);
    case Expr::Kind::Mul: return lower(*e.children[0]) * lower(*e.children[1]);
    case Expr::Kind::Neg: return -lower(*e.children[0]);
    case Expr::Kind::Pow: return lower(*e.children[0]).pow(e.exponent);
    case Expr::Kind::Div: {
        const DiffPoly den = lower(*e.children[1]);
        if (!den.is_constant() || den.is_zero()) throw ParseError("division only by a nonzero constant", e.position);
        DiffPoly out = lower(*e.children[0]);
        out *= Rational(1) / den.terms().begin()->second;
        return out;
    }
    }
    throw std::logic_error("unreachable expression kind");
}

DiffPoly parse(std::string_view text) { return lower(*parse_ast(text)); }

}  // namespace bbm::sym
