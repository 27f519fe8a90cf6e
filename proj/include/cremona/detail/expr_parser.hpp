#ifndef CREMONA_DETAIL_EXPR_PARSER_HPP
#define CREMONA_DETAIL_EXPR_PARSER_HPP

#include <cctype>
#include <string>
#include <string_view>

#include <cremona/error.hpp>
#include <cremona/field.hpp>

namespace cremona::detail {

// Recursive-descent parser for arithmetic expressions
//
//   expr  := [+|-] term ((+|-) term)*
//   term  := power (('*' | '/')? power)*     juxtaposition multiplies
//   power := atom ('^' integer)?
//   atom  := integer | variable | '(' expr ')'
//
// parameterised over a builder that supplies the value type and operations.
// Variables are single letters accepted by Builder::variable.
template <typename Builder>
class ExprParser {
public:
    using Value = typename Builder::Value;

    ExprParser(std::string_view text, Builder &builder) : text_(text), b_(builder) {}

    Value parse()
    {
        Value v = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw Error(ErrorKind::ParseError, msg + " at position " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }

    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool starts_atom()
    {
        const char c = peek();
        return c == '(' || std::isdigit(static_cast<unsigned char>(c)) != 0 || std::isalpha(static_cast<unsigned char>(c)) != 0;
    }

    Value expr()
    {
        bool negate = false;
        if (peek() == '-' || peek() == '+') {
            negate = text_[pos_] == '-';
            ++pos_;
        }
        Value acc = term();
        if (negate) {
            acc = b_.neg(acc);
        }
        while (true) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                acc = b_.add(acc, term());
            } else if (c == '-') {
                ++pos_;
                acc = b_.sub(acc, term());
            } else {
                return acc;
            }
        }
    }

    Value term()
    {
        Value acc = power();
        while (true) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                acc = b_.mul(acc, power());
            } else if (c == '/') {
                ++pos_;
                acc = b_.div(acc, power());
            } else if (starts_atom()) {
                acc = b_.mul(acc, power());
            } else {
                return acc;
            }
        }
    }

    Value power()
    {
        Value base = atom();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected a non-negative integer exponent");
            }
            const std::string digits(text_.substr(start, pos_ - start));
            if (digits.size() > 6) {
                fail("exponent too large");
            }
            return b_.pow(base, static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    Value atom()
    {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
                ++pos_;
            }
            return b_.number(BigInt(std::string(text_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
            ++pos_;
            auto v = b_.variable(c);
            if (!v) {
                --pos_;
                fail("unknown variable '" + std::string(1, c) + "'");
            }
            return *v;
        }
        if (c == '\0') {
            fail("unexpected end of input");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    Builder &b_;
    std::size_t pos_ = 0;
};

} // namespace cremona::detail

#endif
