#pragma once

// Expression grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['-'] integer | '(' ['-'] integer ')'
//   primary := integer | identifier | ('sin' | 'cos') '(' expr ')' | '(' expr ')'
//   identifier := [a-zA-Z][a-zA-Z0-9_]*

#include <string>
#include <string_view>

#include "fj/errors.hpp"
#include "fj/expr.hpp"
#include "fj/var_table.hpp"

namespace fj {

class ParseError : public InputError {
public:
    enum class Kind { Syntax, UnknownFunction, UndeclaredIdentifier };

    ParseError(Kind kind, const std::string& message, int line, int column);

    Kind kind() const noexcept { return kind_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    Kind kind_;
    std::string message_;
    int line_;
    int column_;
};

/// Parses with every identifier accepted as a symbol.
Expr parse(std::string_view text);
/// Parses and rejects identifiers absent from `vars`.
Expr parse(std::string_view text, const VarTable& vars);

}  // namespace fj
