#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "minmodes/holomorphic.hpp"

namespace minmodes {

// Prefix expression grammar:
//   expr    := "id" | literal | name "(" args ")"
//   name    := const | pow | recip | exp | log | scale | sum | prod | quot
//            | compose | mobius | mobius_special
//   literal := complex number, e.g. 2, -3.5, i, 2i, 1+2i, 1.5e-3-0.7i
// sum/prod accept two or more arguments; pow takes (expr, integer);
// scale takes (literal, expr); mobius takes four literals (a,b,c,d),
// mobius_special two (a,c).

namespace detail {

class ExprParser {
  public:
    explicit ExprParser(const std::string& text) : s_(text) {}

    HolomorphicFn parse() {
        HolomorphicFn f = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return f;
    }

    Complex parse_literal_only() {
        Complex z = literal();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input after number");
        return z;
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("expression parse error at offset " + std::to_string(pos_) + ": " + why +
                         " in '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    std::string ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    bool starts_number() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
               c == '.' || c == 'i';
    }

    double real_number() {
        skip_ws();
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected number");
        pos_ += static_cast<size_t>(end - begin);
        return v;
    }

    // Forms: X | Xi | i | -i | X+Yi | X-Yi  (X, Y real decimals)
    Complex literal() {
        skip_ws();
        double sign = 1.0;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            if (s_[pos_] == '-') sign = -1.0;
            // lone sign before 'i'
            if (pos_ + 1 < s_.size() && s_[pos_ + 1] == 'i') {
                pos_ += 2;
                return Complex(0.0, sign);
            }
        }
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return Complex(0.0, 1.0);
        }
        double first = real_number();
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return Complex(0.0, first);
        }
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            size_t save = pos_;
            double second;
            if (pos_ + 1 < s_.size() && s_[pos_ + 1] == 'i') {
                second = (s_[pos_] == '-') ? -1.0 : 1.0;
                pos_ += 2;
                return Complex(first, second);
            }
            second = real_number();
            if (pos_ < s_.size() && s_[pos_] == 'i') {
                ++pos_;
                return Complex(first, second);
            }
            pos_ = save;  // not an imaginary tail; leave for caller
        }
        return Complex(first, 0.0);
    }

    int integer() {
        skip_ws();
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        long v = std::strtol(begin, &end, 10);
        if (end == begin) fail("expected integer");
        pos_ += static_cast<size_t>(end - begin);
        return static_cast<int>(v);
    }

    HolomorphicFn expr() {
        skip_ws();
        if (starts_number() && !(pos_ < s_.size() && s_[pos_] == 'i' && pos_ + 1 < s_.size() &&
                                 std::isalpha(static_cast<unsigned char>(s_[pos_ + 1])))) {
            // bare literal constant (but not the identifier "id")
            size_t save = pos_;
            if (s_.compare(pos_, 2, "id") == 0) {
                pos_ = save;
            } else {
                return HolomorphicFn::constant(literal());
            }
        }
        std::string name = ident();
        if (name.empty()) fail("expected expression");
        if (name == "id") return HolomorphicFn::identity();
        expect('(');
        HolomorphicFn result = HolomorphicFn::identity();
        if (name == "const") {
            result = HolomorphicFn::constant(literal());
        } else if (name == "pow") {
            HolomorphicFn f = expr();
            expect(',');
            result = HolomorphicFn::power(f, integer());
        } else if (name == "recip") {
            result = HolomorphicFn::reciprocal(expr());
        } else if (name == "exp") {
            result = HolomorphicFn::exp_of(expr());
        } else if (name == "log") {
            result = HolomorphicFn::log_of(expr());
        } else if (name == "scale") {
            Complex s = literal();
            expect(',');
            result = HolomorphicFn::scaled(s, expr());
        } else if (name == "sum" || name == "prod") {
            result = expr();
            expect(',');
            result = (name == "sum") ? HolomorphicFn::sum(result, expr())
                                     : HolomorphicFn::product(result, expr());
            while (eat(',')) {
                result = (name == "sum") ? HolomorphicFn::sum(result, expr())
                                         : HolomorphicFn::product(result, expr());
            }
        } else if (name == "quot") {
            HolomorphicFn f = expr();
            expect(',');
            result = HolomorphicFn::quotient(f, expr());
        } else if (name == "compose") {
            HolomorphicFn f = expr();
            expect(',');
            result = HolomorphicFn::compose(f, expr());
        } else if (name == "mobius") {
            Complex a = literal();
            expect(',');
            Complex b = literal();
            expect(',');
            Complex c = literal();
            expect(',');
            Complex d = literal();
            result = HolomorphicFn::mobius(Mobius(a, b, c, d));
        } else if (name == "mobius_special") {
            Complex a = literal();
            expect(',');
            Complex c = literal();
            result = HolomorphicFn::mobius(Mobius::special(a, c));
        } else {
            fail("unknown function '" + name + "'");
        }
        expect(')');
        return result;
    }
};

}  // namespace detail

inline HolomorphicFn parse_expression(const std::string& text) {
    return detail::ExprParser(text).parse();
}

inline Complex parse_complex(const std::string& text) {
    return detail::ExprParser(text).parse_literal_only();
}

}  // namespace minmodes
