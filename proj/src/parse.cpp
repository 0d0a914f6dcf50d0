#include "polypell/parse.hpp"

#include <cctype>

namespace polypell {

std::optional<QPoly> ParsedPoly::over_q() const {
    std::vector<BigRational> v;
    for (const auto& c : poly.coeffs()) {
        if (!c.is_constant()) return std::nullopt;
        v.push_back(c.constant_value());
    }
    return QPoly(std::move(v));
}

namespace {

using RP = UniPoly<RatFunc>;

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    ParsedPoly run() {
        ParsedPoly out;
        skip();
        out.poly = expr();
        skip();
        if (pos_ != s_.size()) fail("'+', '-', '*', '^' or end of input");
        out.uses_t = uses_t_;
        return out;
    }

private:
    RP expr() {
        RP acc = term();
        while (true) {
            skip();
            if (peek() == '+') {
                ++pos_;
                acc = acc + term();
            } else if (peek() == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    RP term() {
        RP acc = factor();
        while (true) {
            skip();
            if (peek() != '*') return acc;
            ++pos_;
            acc = acc * factor();
        }
    }

    RP factor() {
        skip();
        if (peek() == '-') {
            ++pos_;
            return -factor();
        }
        RP b = base();
        skip();
        if (peek() != '^') return b;
        ++pos_;
        skip();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("a nonnegative integer exponent");
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        std::string digits(s_.substr(start, pos_ - start));
        if (digits.size() > 5 || std::stoul(digits) > kMaxExponent) {
            pos_ = start;
            fail("an exponent at most " + std::to_string(kMaxExponent));
        }
        return b.pow(static_cast<unsigned>(std::stoul(digits)));
    }

    RP base() {
        skip();
        const char c = peek();
        if (c == 'X') {
            ++pos_;
            return RP::x();
        }
        if (c == 't') {
            ++pos_;
            uses_t_ = true;
            return RP::constant(RatFunc::t());
        }
        if (c == '(') {
            ++pos_;
            RP e = expr();
            skip();
            if (peek() != ')') fail("')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return RP::constant(RatFunc(number()));
        fail("a number, 'X', 't' or '('");
    }

    BigRational number() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        mpz_class num(std::string(s_.substr(start, pos_ - start)));
        if (peek() != '/') return BigRational(num);
        ++pos_;
        std::size_t dstart = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (dstart == pos_) fail("digits of a denominator");
        mpz_class den(std::string(s_.substr(dstart, pos_ - dstart)));
        if (den == 0) {
            pos_ = dstart;
            fail("a nonzero denominator");
        }
        return BigRational(num, den);
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
        throw Error(ErrorCode::ParseError,
                    "at position " + std::to_string(pos_) + ": expected " + expected + ", found " + found);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    bool uses_t_ = false;
};

}  // namespace

ParsedPoly parse_poly(std::string_view text) { return Parser(text).run(); }

}  // namespace polypell
