#pragma once

// Real-number literals with a little arithmetic, so that special values such
// as sqrt(pi)/2 can be given exactly on the command line.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//   func    := sqrt | exp | ln | log | gamma

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>

#include "invgamma/errors.hpp"
#include "invgamma/specfun.hpp"

namespace invgamma {

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    double parse() {
        const double v = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw DomainError("cannot parse number '" + std::string(text_) + "': " + why);
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

    double expr() {
        double v = term();
        for (;;) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }

    double term() {
        double v = unary();
        for (;;) {
            if (accept('*'))
                v *= unary();
            else if (accept('/'))
                v /= unary();
            else
                return v;
        }
    }

    double unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    double power() {
        const double base = primary();
        if (accept('^')) return std::pow(base, unary());
        return base;
    }

    double primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (accept('(')) {
            const double v = expr();
            if (!accept(')')) fail("missing ')'");
            return v;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return named();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    double number() {
        const std::string rest(text_.substr(pos_));
        char* end = nullptr;
        const double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) fail("bad number");
        pos_ += static_cast<std::size_t>(end - rest.c_str());
        return v;
    }

    double named() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (name == "pi") return std::numbers::pi;
        if (name == "e") return std::numbers::e;
        if (!accept('(')) fail("unknown name '" + name + "'");
        const double arg = expr();
        if (!accept(')')) fail("missing ')'");
        if (name == "sqrt") return std::sqrt(arg);
        if (name == "exp") return std::exp(arg);
        if (name == "ln" || name == "log") return std::log(arg);
        if (name == "gamma") return gamma(arg);
        fail("unknown function '" + name + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Evaluates a real literal such as "24", "-1e-3", "sqrt(pi)/2" or "sqrt(2*pi)".
/// Throws DomainError on malformed or non-finite input.
inline double parse_real(std::string_view text) {
    const double v = detail::ExprParser(text).parse();
    if (!std::isfinite(v)) throw DomainError("number '" + std::string(text) + "' is not finite");
    return v;
}

}  // namespace invgamma
