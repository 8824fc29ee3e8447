#ifndef HSD_PARSER_HPP
#define HSD_PARSER_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "hsd/biseries.hpp"
#include "hsd/errors.hpp"
#include "hsd/rational.hpp"
#include "hsd/series.hpp"

namespace hsd {

namespace detail {

/// Recursive-descent evaluator for the shared expression syntax: integers,
/// the generator `s`, the series variables `T` and `U`, and + - * / ^ ( ).
/// Everything is evaluated in the bivariate truncated ring over F_p(s);
/// univariate and plain rational-function parsing restrict which variables
/// may appear. Integers are reduced mod p except in exponent position.
class ExpressionParser {
   public:
    ExpressionParser(std::string_view text, std::uint64_t p, std::uint32_t order, bool allow_t, bool allow_u)
        : text_(text), p_(p), order_(order), allow_t_(allow_t), allow_u_(allow_u) {
        if (!is_prime(p)) throw Error(errc::bad_input, "p = " + std::to_string(p) + " is not prime");
    }

    TruncBiSeries<Ratfun> parse() {
        skip_ws();
        if (eof()) throw Error(errc::parse_error, "empty expression", pos_);
        TruncBiSeries<Ratfun> v = expression();
        skip_ws();
        if (!eof()) throw Error(errc::parse_error, unexpected_message(), pos_);
        return v;
    }

   private:
    using Value = TruncBiSeries<Ratfun>;

    Value expression() {
        Value v = term();
        for (;;) {
            skip_ws();
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    Value term() {
        Value v = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                v *= factor();
            } else if (peek() == '/') {
                std::size_t at = pos_;
                ++pos_;
                v = divide(v, factor(), at);
            } else {
                return v;
            }
        }
    }

    Value factor() {
        skip_ws();
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        Value v = atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            v = v.pow(raw_integer());
            skip_ws();
            if (peek() == '^') throw Error(errc::parse_error, "chained ^ needs parentheses", pos_);
        }
        return v;
    }

    Value atom() {
        skip_ws();
        if (eof()) throw Error(errc::parse_error, "unexpected end of expression", pos_);
        char c = peek();
        if (c == '(') {
            ++pos_;
            Value v = expression();
            skip_ws();
            if (!accept(')')) throw Error(errc::parse_error, "expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Value::constant(Ratfun(modular_integer()), order_);
        if (c == 's') {
            consume_name();
            return Value::constant(Ratfun::generator(p_), order_);
        }
        if (c == 'T') {
            if (!allow_t_) throw Error(errc::parse_error, "the variable T is not allowed here", pos_);
            consume_name();
            Value v(order_, p_);
            if (order_ > 1) v.set(0, 1, Ratfun::one(p_));
            return v;
        }
        if (c == 'U') {
            if (!allow_u_) throw Error(errc::parse_error, "the variable U is not allowed here", pos_);
            consume_name();
            Value v(order_, p_);
            if (order_ > 1) v.set(1, 0, Ratfun::one(p_));
            return v;
        }
        throw Error(errc::parse_error, unexpected_message(), pos_);
    }

    Value divide(const Value& a, const Value& b, std::size_t at) {
        if (b.is_zero()) throw Error(errc::division_by_zero, "division by zero at position " + std::to_string(at));
        // A positive-order divisor (zero constant slot) has no series inverse.
        return a * inverse(b);
    }

    Fp modular_integer() {
        Fp v = Fp::zero(p_);
        const Fp ten(10 % p_, p_);
        bool any = false;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * ten + Fp(static_cast<std::uint64_t>(peek() - '0'), p_);
            ++pos_;
            any = true;
        }
        if (!any) throw Error(errc::parse_error, "expected a number", pos_);
        guard_name_end();
        return v;
    }

    std::uint64_t raw_integer() {
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw Error(errc::parse_error, "expected a nonnegative integer exponent", pos_);
        std::uint64_t v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            if (v > (std::uint64_t(1) << 60) / 10) throw Error(errc::parse_error, "exponent too large", pos_);
            v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
            ++pos_;
        }
        guard_name_end();
        return v;
    }

    void consume_name() {
        ++pos_;
        guard_name_end();
    }

    void guard_name_end() {
        if (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            throw Error(errc::parse_error, unexpected_message(), pos_);
    }

    std::string unexpected_message() const {
        if (eof()) return "unexpected end of expression";
        return std::string("unexpected character '") + peek() + "'";
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    bool accept(char c) {
        if (!eof() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    std::string_view text_;
    std::uint64_t p_;
    std::uint32_t order_;
    bool allow_t_;
    bool allow_u_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Bivariate expression in s, T, U truncated to total degree `order`.
inline TruncBiSeries<Ratfun> parse_biseries(std::string_view text, std::uint64_t p, std::uint32_t order) {
    return detail::ExpressionParser(text, p, order, true, true).parse();
}

/// Univariate expression in s and T; terms of degree >= order are dropped.
inline TruncSeries<Ratfun> parse_series(std::string_view text, std::uint64_t p, std::uint32_t order) {
    return detail::ExpressionParser(text, p, order, true, false).parse().at_u_zero();
}

/// Plain element of F_p(s); the series variables are rejected.
inline Ratfun parse_ratfun(std::string_view text, std::uint64_t p) {
    return detail::ExpressionParser(text, p, 1, false, false).parse().at(0, 0);
}

}  // namespace hsd

#endif
