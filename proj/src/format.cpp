#include <map>
#include <sstream>

#include "tensorcalc/text.hpp"

namespace tc {

namespace {

const std::map<std::string, std::string, std::less<>>& greek_table() {
    static const std::map<std::string, std::string, std::less<>> table = {
        {"α", "\\alpha"},   {"β", "\\beta"},    {"γ", "\\gamma"},  {"δ", "\\delta"},
        {"ε", "\\epsilon"}, {"ζ", "\\zeta"},    {"η", "\\eta"},    {"θ", "\\theta"},
        {"ι", "\\iota"},    {"κ", "\\kappa"},   {"λ", "\\lambda"}, {"μ", "\\mu"},
        {"ν", "\\nu"},      {"ξ", "\\xi"},      {"π", "\\pi"},     {"ρ", "\\rho"},
        {"σ", "\\sigma"},   {"τ", "\\tau"},     {"υ", "\\upsilon"}, {"φ", "\\phi"},
        {"χ", "\\chi"},     {"ψ", "\\psi"},     {"ω", "\\omega"},  {"Γ", "\\Gamma"},
        {"Δ", "\\Delta"},   {"Θ", "\\Theta"},   {"Λ", "\\Lambda"}, {"Ξ", "\\Xi"},
        {"Π", "\\Pi"},      {"Σ", "\\Sigma"},   {"Φ", "\\Phi"},    {"Ψ", "\\Psi"},
        {"Ω", "\\Omega"},   {"□", "\\square"},  {"∂", "\\partial"},
    };
    return table;
}

enum Prec { kSum = 1, kProduct = 2, kPower = 3, kAtom = 4 };

bool is_negative_term(const Expr& e) {
    if (e.is_number()) return sgn(e.value()) < 0;
    if (e.kind() == Kind::Product && e[0].is_number()) return sgn(e[0].value()) < 0;
    return false;
}

Expr negate_term(const Expr& e) {
    if (e.is_number()) return Expr(Rational(-e.value()));
    std::vector<Expr> f = e.args();
    f[0] = Expr(Rational(-f[0].value()));
    return Expr::product(std::move(f));
}

bool negative_exponent(const Expr& e) {
    return e.kind() == Kind::Power && e[1].is_number() && sgn(e[1].value()) < 0;
}

class Printer {
public:
    Printer(Style style, const DisplayOpts& opts) : latex_(style == Style::Latex), opts_(opts) {}

    std::string print(const Expr& e) { return print_prec(e, 0); }

private:
    bool latex_;
    const DisplayOpts& opts_;

    std::string name(std::string_view n) { return latex_ ? latex_name(n) : std::string(n); }

    static int prec_of(const Expr& e) {
        switch (e.kind()) {
        case Kind::Sum: return kSum;
        case Kind::Product: return kProduct;
        case Kind::Integer: return sgn(e.value()) < 0 ? kProduct : kAtom;
        case Kind::Rational: return kProduct;
        case Kind::Power: return negative_exponent(e) ? kProduct : kPower;
        default: return kAtom;
        }
    }

    std::string wrap(const std::string& s) { return latex_ ? "\\left(" + s + "\\right)" : "(" + s + ")"; }

    std::string print_prec(const Expr& e, int min_prec) {
        std::string s = print_raw(e);
        if (prec_of(e) < min_prec) return wrap(s);
        return s;
    }

    std::string print_raw(const Expr& e) {
        switch (e.kind()) {
        case Kind::Integer: return e.value().get_str();
        case Kind::Rational: return print_product({e});
        case Kind::Symbol: return name(e.name());
        case Kind::Sum: return print_sum(e);
        case Kind::Product: return print_product(e.args());
        case Kind::Power:
            if (negative_exponent(e)) return print_product({e});
            return print_power(e);
        case Kind::FuncApp: return print_func(e);
        case Kind::Deriv: return print_deriv(e);
        case Kind::DeferredD: return print_deferred(e);
        case Kind::Abs:
            if (latex_) return "\\left|" + print(e[0]) + "\\right|";
            return "abs(" + print(e[0]) + ")";
        }
        return "?";
    }

    std::string print_sum(const Expr& e) {
        std::string out;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const Expr& t = e[i];
            if (i == 0) {
                out += print_prec(t, kSum);
            } else if (is_negative_term(t)) {
                out += " - " + print_prec(negate_term(t), kProduct);
            } else {
                out += " + " + print_prec(t, kProduct);
            }
        }
        return out;
    }

    std::string print_power(const Expr& e) {
        const Expr& base = e[0];
        const Expr& ex = e[1];
        if (ex.is_number() && ex.value() == Rational(1, 2)) {
            if (latex_) return "\\sqrt{" + print(base) + "}";
            return "sqrt(" + print(base) + ")";
        }
        std::string b = print_prec(base, kAtom);
        if (base.is_number() && sgn(base.value()) > 0 && base.kind() == Kind::Integer) b = print(base);
        if (latex_) return b + "^{" + print(ex) + "}";
        if (ex.kind() == Kind::Integer && sgn(ex.value()) > 0) return b + "^" + print(ex);
        return b + "^(" + print(ex) + ")";
    }

    std::string print_product(const std::vector<Expr>& factors) {
        Rational coef = 1;
        std::vector<Expr> num, den;
        for (const auto& f : factors) {
            if (f.is_number()) {
                coef *= f.value();
            } else if (negative_exponent(f)) {
                den.push_back(Expr::power(f[0], Expr(Rational(-f[1].value()))));
            } else {
                num.push_back(f);
            }
        }
        bool neg = sgn(coef) < 0;
        mpz_class cn = ::abs(coef.get_num());
        mpz_class cd = coef.get_den();
        std::vector<std::string> ns, ds;
        if (cn != 1 || num.empty()) ns.push_back(cn.get_str());
        for (const auto& f : num) ns.push_back(print_prec(f, kPower));
        if (cd != 1) ds.push_back(cd.get_str());
        for (const auto& f : den) ds.push_back(print_prec(f, kPower));
        std::string sep = latex_ ? " " : "*";
        auto join = [&](const std::vector<std::string>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
            return s;
        };
        std::string out = neg ? "-" : "";
        if (ds.empty()) return out + join(ns);
        if (latex_) return out + "\\frac{" + join(ns) + "}{" + join(ds) + "}";
        std::string d = join(ds);
        if (ds.size() > 1) d = "(" + d + ")";
        return out + join(ns) + "/" + d;
    }

    std::string join_args(const std::vector<Expr>& args) {
        std::string s;
        for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + print(args[i]);
        return s;
    }

    bool is_curve_function(const Expr& e) const {
        return !opts_.curveParameter.empty() && e.size() == 1 && e[0].is_symbol(opts_.curveParameter);
    }

    std::string dotted(const std::string& n, int order) {
        if (latex_) {
            if (order == 0) return latex_name(n);
            if (order == 1) return "\\dot{" + latex_name(n) + "}";
            if (order == 2) return "\\ddot{" + latex_name(n) + "}";
            return latex_name(n) + "^{(" + std::to_string(order) + ")}";
        }
        if (order == 0) return n;
        if (order == 1) return n + "̇";
        if (order == 2) return n + "̈";
        return n + "^(" + std::to_string(order) + ")";
    }

    std::string func_name(const std::string& n) {
        if (latex_ && is_builtin_function(n)) {
            if (n == "arcsin" || n == "arccos" || n == "arctan" || n == "sin" || n == "cos" ||
                n == "tan" || n == "cot" || n == "sec" || n == "csc" || n == "exp" || n == "log" ||
                n == "sinh" || n == "cosh" || n == "tanh")
                return "\\" + n;
            return "\\operatorname{" + n + "}";
        }
        return name(n);
    }

    std::string print_func(const Expr& e) {
        if (is_curve_function(e)) return dotted(e.name(), 0);
        if (opts_.suppressArgs.count(e.name())) return name(e.name());
        if (latex_) return func_name(e.name()) + "\\left(" + join_args(e.args()) + "\\right)";
        return e.name() + "(" + join_args(e.args()) + ")";
    }

    std::string slot_label(const Expr& arg, std::size_t slot) {
        if (arg.is_symbol()) return name(arg.name());
        if (arg.kind() == Kind::FuncApp && is_curve_function(arg)) return name(arg.name());
        return std::to_string(slot + 1);
    }

    std::string print_deriv(const Expr& e) {
        const auto& ord = e.orders();
        if (is_curve_function(e)) return dotted(e.name(), ord[0]);
        if (opts_.suppressArgs.count(e.name())) {
            std::string out;
            for (std::size_t i = 0; i < ord.size(); ++i) {
                if (ord[i] == 0) continue;
                std::string lbl = slot_label(e[i], i);
                if (latex_) {
                    out += "\\partial_{" + lbl + "}";
                    if (ord[i] > 1) out += "^{" + std::to_string(ord[i]) + "}";
                    out += " ";
                } else {
                    out += "∂" + lbl;
                    if (ord[i] > 1) out += superscript_digits(ord[i]);
                }
            }
            return out + name(e.name());
        }
        std::string tag;
        if (ord.size() == 1 && ord[0] <= 3 && !latex_) {
            tag = std::string(static_cast<std::size_t>(ord[0]), '\'');
        } else {
            tag = "^(";
            for (std::size_t i = 0; i < ord.size(); ++i) tag += (i ? "," : "") + std::to_string(ord[i]);
            tag += ")";
            if (latex_) tag = "^{" + tag.substr(1) + "}";
        }
        if (latex_) return name(e.name()) + tag + "\\left(" + join_args(e.args()) + "\\right)";
        return e.name() + tag + "(" + join_args(e.args()) + ")";
    }

    std::string print_deferred(const Expr& e) {
        int order = e.orders()[0];
        if (latex_) {
            std::string s = "\\partial_{" + latex_name(e.name()) + "}";
            if (order > 1) s += "^{" + std::to_string(order) + "}";
            return s + "\\left(" + print(e[0]) + "\\right)";
        }
        std::string s = "∂_" + e.name();
        if (order > 1) s += "^" + std::to_string(order);
        return s + "(" + print(e[0]) + ")";
    }
};

}  // namespace

std::string superscript_digits(long n) {
    static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string s = std::to_string(n), out;
    for (char c : s) out += c == '-' ? "⁻" : digits[c - '0'];
    return out;
}

std::string latex_name(std::string_view n) {
    const auto& table = greek_table();
    auto chars = utf8_chars(n);
    if (chars.size() > 1) {
        bool ascii = true;
        for (const auto& c : chars) ascii = ascii && c.size() == 1;
        if (ascii) return "\\mathrm{" + std::string(n) + "}";
    }
    std::string out;
    for (const auto& c : chars) {
        auto it = table.find(c);
        out += it != table.end() ? it->second + (chars.size() > 1 ? " " : "") : c;
    }
    if (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::string format_expr(const Expr& e, Style style, const DisplayOpts& opts) {
    return Printer(style, opts).print(e);
}

}  // namespace tc
