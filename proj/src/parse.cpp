#include "fj/parse.hpp"

#include <cctype>

namespace fj {

ParseError::ParseError(Kind kind, const std::string& message, int line, int column)
    : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      kind_(kind),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarTable* vars) : text_(text), vars_(vars) {}

    Expr run() {
        skip_space();
        if (at_end()) fail("empty expression");
        Expr e = expr();
        skip_space();
        if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
        return e;
    }

private:
    std::string_view text_;
    const VarTable* vars_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void position(std::size_t at, int& line, int& column) const {
        line = 1;
        column = 1;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg, ParseError::Kind kind = ParseError::Kind::Syntax) const {
        fail_at(pos_, msg, kind);
    }

    [[noreturn]] void fail_at(std::size_t at, const std::string& msg, ParseError::Kind kind) const {
        int line = 0;
        int column = 0;
        position(at, line, column);
        throw ParseError(kind, msg, line, column);
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (at_end()) fail(std::string("expected '") + c + "' before end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (accept('+')) e += term();
            else if (accept('-')) e -= term();
            else return e;
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            skip_space();
            if (peek() == '*' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') fail("'**' is not an operator; use '^'");
            if (accept('*')) {
                e *= unary();
            } else if (peek() == '/') {
                std::size_t at = pos_;
                ++pos_;
                Expr d = unary();
                if (d.is_zero()) fail_at(at, "division by zero", ParseError::Kind::Syntax);
                e = e / d;
            } else {
                return e;
            }
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    long exponent() {
        bool paren = accept('(');
        bool negative = accept('-');
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be an integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 1000000) fail("exponent too large");
            ++pos_;
        }
        if (paren) expect(')');
        return negative ? -v : v;
    }

    Expr power() {
        Expr base = primary();
        skip_space();
        if (accept('^')) {
            std::size_t at = pos_;
            long e = exponent();
            if (e < 0 && base.is_zero()) fail_at(at, "division by zero", ParseError::Kind::Syntax);
            return base.pow(e);
        }
        return base;
    }

    Expr primary() {
        skip_space();
        if (at_end()) fail("unexpected end of input");
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            return Expr(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            skip_space();
            if (peek() == '(') {
                if (name != "sin" && name != "cos")
                    fail_at(start, "unknown function '" + name + "'", ParseError::Kind::UnknownFunction);
                ++pos_;
                Expr arg = expr();
                expect(')');
                return name == "sin" ? sin(arg) : cos(arg);
            }
            if (name == "sin" || name == "cos") fail_at(start, "'" + name + "' requires an argument", ParseError::Kind::Syntax);
            if (vars_ != nullptr && !vars_->contains(name))
                fail_at(start, "undeclared identifier '" + name + "'", ParseError::Kind::UndeclaredIdentifier);
            return Expr::symbol(name);
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace

Expr parse(std::string_view text) {
    return Parser(text, nullptr).run();
}

Expr parse(std::string_view text, const VarTable& vars) {
    return Parser(text, &vars).run();
}

}  // namespace fj
