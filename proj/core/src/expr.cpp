#include "dgla/expr.hpp"

#include <cctype>

namespace dgla {

namespace {

class Parser {
public:
    Parser(FreeLieContext& ctx, const std::string& src) : ctx_(ctx), src_(src) {}

    LieElement run() {
        LieElement e = parse_expr();
        skip_ws();
        if (pos_ != (int)src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    FreeLieContext& ctx_;
    const std::string& src_;
    int pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ExprError(msg, pos_); }

    void skip_ws() {
        while (pos_ < (int)src_.size() && std::isspace((unsigned char)src_[pos_])) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < (int)src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < (int)src_.size() ? src_[pos_] : '\0';
    }

    LieElement parse_expr() {
        LieElement e = parse_term();
        for (;;) {
            if (eat('+')) {
                e += parse_term();
            } else if (eat('-')) {
                e += parse_term().scaled(Rational(-1));
            } else {
                return e;
            }
        }
    }

    LieElement parse_term() {
        Rational coeff = 1;
        if (eat('-')) coeff = -1;
        if (std::isdigit((unsigned char)peek())) {
            coeff *= parse_rational();
            if (!eat('*')) fail("expected '*' after coefficient");
        }
        return parse_atom().scaled(coeff);
    }

    Rational parse_rational() {
        skip_ws();
        int start = pos_;
        while (pos_ < (int)src_.size() && std::isdigit((unsigned char)src_[pos_])) ++pos_;
        if (start == pos_) fail("expected number");
        Rational num(src_.substr(start, pos_ - start));
        num.canonicalize();
        if (pos_ < (int)src_.size() && src_[pos_] == '/') {
            ++pos_;
            int dstart = pos_;
            while (pos_ < (int)src_.size() && std::isdigit((unsigned char)src_[pos_])) ++pos_;
            if (dstart == pos_) fail("expected denominator");
            Rational den(src_.substr(dstart, pos_ - dstart));
            den.canonicalize();
            if (den == 0) fail("zero denominator");
            num /= den;
        }
        return num;
    }

    LieElement parse_atom() {
        if (eat('[')) {
            LieElement l = parse_expr();
            if (!eat(',')) fail("expected ',' in bracket");
            LieElement r = parse_expr();
            if (!eat(']')) fail("expected ']'");
            return ctx_.bracket(l, r);
        }
        skip_ws();
        int start = pos_;
        while (pos_ < (int)src_.size() &&
               (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_' ||
                src_[pos_] == '\'')) {
            ++pos_;
        }
        if (start == pos_) fail("expected generator name or '['");
        std::string name = src_.substr(start, pos_ - start);
        int idx = ctx_.generators().index_of(name);
        if (idx < 0) {
            pos_ = start;
            fail("unknown generator '" + name + "'");
        }
        return ctx_.element_of_generator(idx);
    }
};

}  // namespace

LieElement parse_lie_expr(FreeLieContext& ctx, const std::string& src) {
    return Parser(ctx, src).run();
}

}  // namespace dgla
