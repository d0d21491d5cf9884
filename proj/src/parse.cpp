#include <cctype>

#include "tensorcalc/error.hpp"
#include "tensorcalc/text.hpp"

namespace tc {

std::vector<std::string> utf8_chars(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        std::size_t len = 1;
        if (c >= 0xF0)
            len = 4;
        else if (c >= 0xE0)
            len = 3;
        else if (c >= 0xC0)
            len = 2;
        len = std::min(len, text.size() - i);
        out.emplace_back(text.substr(i, len));
        i += len;
    }
    return out;
}

namespace {

bool is_ident_start(const std::string& ch) {
    if (ch.size() == 1) {
        unsigned char c = static_cast<unsigned char>(ch[0]);
        return std::isalpha(c) || c == '_';
    }
    return ch != "−" && ch != "·" && ch != "∂" && ch != "×";
}

bool is_operator_char(const std::string& ch) {
    static const std::string ascii = "+-*/^(),'_.";
    if (ch.size() == 1) return ascii.find(ch[0]) != std::string::npos;
    return ch == "−" || ch == "·" || ch == "×" || ch == "∂" || ch == "′";
}

bool is_ident_continue(const std::string& ch) {
    if (ch.size() == 1 && std::isdigit(static_cast<unsigned char>(ch[0]))) return true;
    return is_ident_start(ch);
}

class Parser {
public:
    explicit Parser(std::string_view text) : chars_(utf8_chars(text)) {}

    Expr parse() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ < chars_.size()) {
            check_known(chars_[pos_]);
            fail("unexpected '" + chars_[pos_] + "'");
        }
        return e;
    }

private:
    std::vector<std::string> chars_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::Syntax, "syntax error at position " + std::to_string(pos_) + ": " + msg);
    }

    void check_known(const std::string& ch) const {
        if (!is_operator_char(ch) && !is_ident_start(ch) &&
            !(ch.size() == 1 && std::isdigit(static_cast<unsigned char>(ch[0]))))
            throw Error(Errc::UnknownCharacter,
                        "unknown character '" + ch + "' at position " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < chars_.size() && chars_[pos_].size() == 1 &&
               std::isspace(static_cast<unsigned char>(chars_[pos_][0])))
            ++pos_;
    }

    const std::string& peek() {
        static const std::string kEnd;
        skip_ws();
        return pos_ < chars_.size() ? chars_[pos_] : kEnd;
    }

    bool accept(std::string_view s) {
        if (peek() == s) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(std::string_view s) {
        if (!accept(s)) fail("expected '" + std::string(s) + "'");
    }

    bool at_minus() { return peek() == "-" || peek() == "−"; }

    Expr parse_sum() {
        std::vector<Expr> terms{parse_product()};
        while (true) {
            if (accept("+")) {
                terms.push_back(parse_product());
            } else if (at_minus()) {
                ++pos_;
                terms.push_back(-parse_product());
            } else {
                break;
            }
        }
        return Expr::sum(std::move(terms));
    }

    Expr parse_product() {
        std::vector<Expr> factors{parse_unary()};
        while (true) {
            if (accept("*") || accept("·") || accept("×")) {
                factors.push_back(parse_unary());
            } else if (accept("/")) {
                factors.push_back(Expr::power(parse_unary(), Expr(-1L)));
            } else {
                break;
            }
        }
        return Expr::product(std::move(factors));
    }

    Expr parse_unary() {
        if (at_minus()) {
            ++pos_;
            return -parse_unary();
        }
        if (accept("+")) return parse_unary();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept("^")) {
            Expr exponent = parse_unary();
            return Expr::power(base, exponent);
        }
        return base;
    }

    std::vector<Expr> parse_args() {
        std::vector<Expr> args;
        expect("(");
        if (accept(")")) return args;
        args.push_back(parse_sum());
        while (accept(",")) args.push_back(parse_sum());
        expect(")");
        return args;
    }

    std::string parse_identifier() {
        skip_ws();
        if (pos_ >= chars_.size() || !is_ident_start(chars_[pos_])) fail("expected identifier");
        std::string name;
        while (pos_ < chars_.size() && is_ident_continue(chars_[pos_])) name += chars_[pos_++];
        return name;
    }

    long parse_int_literal() {
        skip_ws();
        bool neg = false;
        if (pos_ < chars_.size() && (chars_[pos_] == "-" || chars_[pos_] == "−")) {
            neg = true;
            ++pos_;
        }
        std::string digits;
        while (pos_ < chars_.size() && chars_[pos_].size() == 1 &&
               std::isdigit(static_cast<unsigned char>(chars_[pos_][0])))
            digits += chars_[pos_++];
        if (digits.empty()) fail("expected integer");
        long v = std::stol(digits);
        return neg ? -v : v;
    }

    // f^(1,0,2)(x,y,z): derivative orders in parentheses directly followed
    // by an argument list.
    bool try_derivative_orders(std::vector<int>& orders) {
        std::size_t save = pos_;
        if (!accept("^") || !accept("(")) {
            pos_ = save;
            return false;
        }
        try {
            orders.push_back(static_cast<int>(parse_int_literal()));
            while (accept(",")) orders.push_back(static_cast<int>(parse_int_literal()));
            if (!accept(")") || peek() != "(") throw Error(Errc::Syntax, "");
        } catch (const Error&) {
            pos_ = save;
            orders.clear();
            return false;
        }
        return true;
    }

    Expr parse_primary() {
        const std::string& ch = peek();
        if (ch.empty()) fail("unexpected end of input");
        if (ch == "(") {
            ++pos_;
            Expr e = parse_sum();
            expect(")");
            return e;
        }
        if (ch.size() == 1 && std::isdigit(static_cast<unsigned char>(ch[0]))) {
            std::string digits;
            while (pos_ < chars_.size() && chars_[pos_].size() == 1 &&
                   std::isdigit(static_cast<unsigned char>(chars_[pos_][0])))
                digits += chars_[pos_++];
            if (pos_ < chars_.size() && chars_[pos_] == ".")
                if (pos_ + 1 < chars_.size() && chars_[pos_ + 1].size() == 1 &&
                    std::isdigit(static_cast<unsigned char>(chars_[pos_ + 1][0])))
                    fail("decimal literals are not supported; use exact rationals");
            return Expr(Rational(mpz_class(digits)));
        }
        if (ch == "∂") {
            ++pos_;
            expect("_");
            std::string param = parse_identifier();
            int order = 1;
            if (accept("^")) order = static_cast<int>(parse_int_literal());
            expect("(");
            Expr inner = parse_sum();
            expect(")");
            return Expr::deferred(inner, param, order);
        }
        check_known(ch);
        if (!is_ident_start(ch)) fail("unexpected '" + ch + "'");
        std::string name = parse_identifier();
        int primes = 0;
        while (pos_ < chars_.size() && (chars_[pos_] == "'" || chars_[pos_] == "′")) {
            ++primes;
            ++pos_;
        }
        if (primes > 0) {
            auto args = parse_args();
            if (args.size() != 1) fail("prime notation requires exactly one argument");
            return Expr::deriv(name, {primes}, args);
        }
        std::vector<int> orders;
        if (try_derivative_orders(orders)) {
            auto args = parse_args();
            if (args.size() != orders.size()) fail("derivative orders do not match arguments");
            return Expr::deriv(name, orders, args);
        }
        if (pos_ < chars_.size() && chars_[pos_] == "(") {
            auto args = parse_args();
            if (name == "sqrt") {
                if (args.size() != 1) fail("sqrt takes one argument");
                return sqrt(args[0]);
            }
            if (name == "abs") {
                if (args.size() != 1) fail("abs takes one argument");
                return Expr::abs(args[0]);
            }
            return Expr::func(name, args);
        }
        return Expr::symbol(name);
    }
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace tc
