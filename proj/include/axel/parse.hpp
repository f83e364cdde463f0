#ifndef AXEL_PARSE_HPP
#define AXEL_PARSE_HPP

#include <axel/ratfunc.hpp>

#include <cctype>

namespace axel {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(col) + ": " + msg),
          line(line), column(col) {}
    int line, column;
};

struct UndeclaredSymbol : ParseError {
    UndeclaredSymbol(const std::string& name, int line, int col)
        : ParseError("undeclared symbol '" + name + "'", line, col), name(name) {}
    std::string name;
};

namespace detail {

// Recursive-descent parser for field expressions:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := rational | symbol | '(' expr ')'
class ExprParser {
public:
    ExprParser(std::string_view src, VarsPtr vars) : src_(src), vars_(std::move(vars)) {}

    RatFunc parse() {
        RatFunc r = expr();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    RatFunc expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            advance();
        }
        RatFunc acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                int l = line_, co = col_;
                advance();
                skip_ws();
                if (peek() == '\0') fail_at("missing operand after '" +
                                            std::string(1, c) + "'", l, co);
                if (c == '+')
                    acc += term();
                else
                    acc -= term();
            } else {
                return acc;
            }
        }
    }

    RatFunc term() {
        RatFunc acc = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*' || c == '/') {
                int l = line_, co = col_;
                advance();
                skip_ws();
                if (peek() == '\0') fail_at("missing operand after '" +
                                            std::string(1, c) + "'", l, co);
                if (c == '*') {
                    acc *= factor();
                } else {
                    RatFunc d = factor();
                    if (d.is_zero()) fail_at("division by zero", l, co);
                    acc /= d;
                }
            } else {
                return acc;
            }
        }
    }

    RatFunc factor() {
        RatFunc b = base();
        skip_ws();
        if (peek() == '^') {
            advance();
            skip_ws();
            int l = line_, co = col_;
            bool neg = false;
            if (peek() == '-') {
                neg = true;
                advance();
            }
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected integer exponent");
            long e = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                e = e * 10 + (peek() - '0');
                if (e > 1000) fail_at("exponent too large", l, co);
                advance();
            }
            if (neg && b.is_zero()) fail_at("zero to a negative power", l, co);
            return b.pow(static_cast<int>(neg ? -e : e));
        }
        return b;
    }

    RatFunc base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            advance();
            RatFunc r = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            advance();
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return symbol();
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
        return RatFunc(); // unreachable
    }

    RatFunc number() {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            digits += peek();
            advance();
        }
        // rational literals like 1/2 come out of term-level division
        return RatFunc::constant(vars_, Rational(Integer(digits)));
    }

    RatFunc symbol() {
        int l = line_, co = col_;
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
            name += peek();
            advance();
        }
        int idx = vars_->index_of(name);
        if (idx < 0) throw UndeclaredSymbol(name, l, co);
        return RatFunc::variable(vars_, static_cast<std::size_t>(idx));
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    void advance() {
        if (pos_ < src_.size()) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }
    void skip_ws() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_])))
            advance();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }
    [[noreturn]] void fail_at(const std::string& msg, int l, int c) const {
        throw ParseError(msg, l, c);
    }

    std::string_view src_;
    VarsPtr vars_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

} // namespace detail

inline RatFunc parse_expression(std::string_view src, const VarsPtr& vars) {
    return detail::ExprParser(src, vars).parse();
}

} // namespace axel

#endif
