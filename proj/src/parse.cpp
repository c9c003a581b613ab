#include "curvetop/parse.hpp"

#include <cctype>

namespace curvetop {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    MultiPoly run() {
        MultiPoly p = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return p;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) { ++pos_; return true; }
        return false;
    }

    MultiPoly parse_sum() {
        bool neg = false;
        skip_ws();
        if (accept('-')) neg = true;
        else accept('+');
        MultiPoly p = parse_product();
        if (neg) p = -p;
        while (true) {
            skip_ws();
            if (accept('+')) p += parse_product();
            else if (accept('-')) p -= parse_product();
            else return p;
        }
    }

    MultiPoly parse_product() {
        MultiPoly p = parse_power();
        while (accept('*')) p = p * parse_power();
        return p;
    }

    MultiPoly parse_power() {
        MultiPoly base = parse_atom();
        if (accept('^')) {
            skip_ws();
            std::size_t at = pos_;
            unsigned long e = parse_uint("exponent");
            if (e > 64) throw ParseError("exponent too large", at);
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    MultiPoly parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly p = parse_sum();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return p;
        }
        if (c == '-') { // unary minus inside a product, e.g. "2*-3" is rejected; "-x" at term start handled by parse_sum
            ++pos_;
            return -parse_atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (lower == 'x' || lower == 'y' || lower == 'z') {
            ++pos_;
            Var v = lower == 'x' ? Var::X : (lower == 'y' ? Var::Y : Var::Z);
            return MultiPoly::variable(v);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    unsigned long parse_uint(const char* what) {
        skip_ws();
        std::size_t at = pos_;
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
        if (digits.empty()) throw ParseError(std::string("expected ") + what, at);
        return std::stoul(digits);
    }

    MultiPoly parse_number() {
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
        Rational value{Integer(digits)};
        if (peek('/')) {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            std::string den;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) den += s_[pos_++];
            if (den.empty()) throw ParseError("expected denominator digits", at);
            Integer d(den);
            if (sgn(d) == 0) throw ParseError("zero denominator", at);
            value /= Rational(d);
        }
        return MultiPoly(value);
    }
};

} // namespace

MultiPoly parse_poly(const std::string& text) {
    Parser p(text);
    return p.run();
}

} // namespace curvetop
