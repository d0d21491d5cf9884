#include "tensorcalc/calculus.hpp"

#include <map>

#include "tensorcalc/error.hpp"

namespace tc {

namespace {

bool depends_on(const Expr& e, const std::string& s) {
    bool found = false;
    walk(e, [&](const Expr& x) {
        if (x.is_symbol(s)) found = true;
        return !found;
    });
    return found;
}

Expr one() { return Expr(1L); }

Expr builtin_derivative(const std::string& name, const Expr& u) {
    Expr uu = u * u;
    if (name == "sin") return Expr::func("cos", {u});
    if (name == "cos") return -Expr::func("sin", {u});
    if (name == "tan") return Expr::power(Expr::func("cos", {u}), Expr(-2L));
    if (name == "cot") return -Expr::power(Expr::func("sin", {u}), Expr(-2L));
    if (name == "sec") return Expr::func("sin", {u}) * Expr::power(Expr::func("cos", {u}), Expr(-2L));
    if (name == "csc") return -Expr::func("cos", {u}) * Expr::power(Expr::func("sin", {u}), Expr(-2L));
    if (name == "exp") return Expr::func("exp", {u});
    if (name == "log") return Expr::power(u, Expr(-1L));
    if (name == "arcsin") return Expr::power(one() - uu, rational(-1, 2));
    if (name == "arccos") return -Expr::power(one() - uu, rational(-1, 2));
    if (name == "arctan") return Expr::power(one() + uu, Expr(-1L));
    if (name == "sinh") return Expr::func("cosh", {u});
    if (name == "cosh") return Expr::func("sinh", {u});
    if (name == "tanh") return one() - Expr::power(Expr::func("tanh", {u}), Expr(2L));
    if (name == "sqrt") return rational(1, 2) * Expr::power(u, rational(-1, 2));
    throw Error(Errc::InvalidArgument, "no derivative rule for " + name);
}

Expr diff_application(const Expr& e, const std::string& s) {
    const std::string& name = e.name();
    bool builtin = e.kind() == Kind::FuncApp && (is_builtin_function(name) || name == "sqrt");
    if (builtin && name == "arctan2") {
        // arctan2(x, y) is the angle of the point (x, y)
        const Expr& x = e[0];
        const Expr& y = e[1];
        Expr num = x * diff(y, s) - y * diff(x, s);
        return num * Expr::power(x * x + y * y, Expr(-1L));
    }
    if (builtin) {
        Expr du = diff(e[0], s);
        if (du.is_zero_literal()) return Expr(0L);
        return builtin_derivative(name, e[0]) * du;
    }
    std::vector<int> base_orders = e.kind() == Kind::Deriv ? e.orders() : std::vector<int>(e.size(), 0);
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < e.size(); ++i) {
        Expr da = diff(e[i], s);
        if (da.is_zero_literal()) continue;
        auto orders = base_orders;
        ++orders[i];
        terms.push_back(Expr::deriv(name, orders, e.args()) * da);
    }
    return Expr::sum(std::move(terms));
}

}  // namespace

Expr diff(const Expr& e, const std::string& s) {
    if (!depends_on(e, s)) return Expr(0L);
    switch (e.kind()) {
    case Kind::Symbol: return Expr(1L);
    case Kind::Integer:
    case Kind::Rational: return Expr(0L);
    case Kind::Sum: {
        std::vector<Expr> terms;
        for (const auto& t : e.args()) terms.push_back(diff(t, s));
        return Expr::sum(std::move(terms));
    }
    case Kind::Product: {
        std::vector<Expr> terms;
        for (std::size_t i = 0; i < e.size(); ++i) {
            Expr d = diff(e[i], s);
            if (d.is_zero_literal()) continue;
            std::vector<Expr> f = e.args();
            f[i] = d;
            terms.push_back(Expr::product(std::move(f)));
        }
        return Expr::sum(std::move(terms));
    }
    case Kind::Power: {
        const Expr& b = e[0];
        const Expr& x = e[1];
        Expr db = diff(b, s);
        if (!depends_on(x, s)) return x * Expr::power(b, x - one()) * db;
        Expr dx = diff(x, s);
        return e * (dx * Expr::func("log", {b}) + x * db * Expr::power(b, Expr(-1L)));
    }
    case Kind::FuncApp:
    case Kind::Deriv: return diff_application(e, s);
    case Kind::DeferredD: {
        if (e.name() == s) return diff(activate_deferred(e), s);
        return Expr::deferred(diff(e[0], s), e.name(), e.orders()[0]);
    }
    case Kind::Abs: {
        const Expr& u = e[0];
        return diff(u, s) * u * Expr::power(e, Expr(-1L));
    }
    }
    return Expr(0L);
}

Expr collect_terms(const std::vector<Expr>& terms) {
    std::vector<Expr> order;
    std::map<Expr, Rational, ExprLess> coef;
    Rational constant = 0;
    auto add = [&](const Expr& t) {
        if (t.is_number()) {
            constant += t.value();
            return;
        }
        Rational c = 1;
        Expr rest = t;
        if (t.kind() == Kind::Product && t[0].is_number()) {
            c = t[0].value();
            rest = Expr::product(std::vector<Expr>(t.args().begin() + 1, t.args().end()));
        }
        auto it = coef.find(rest);
        if (it == coef.end()) {
            coef.emplace(rest, c);
            order.push_back(rest);
        } else {
            it->second += c;
        }
    };
    for (const auto& t : terms) {
        if (t.kind() == Kind::Sum)
            for (const auto& u : t.args()) add(u);
        else
            add(t);
    }
    std::vector<Expr> out;
    out.push_back(Expr(constant));
    for (const auto& r : order) {
        const Rational& c = coef.at(r);
        if (sgn(c) != 0) out.push_back(Expr::product({Expr(c), r}));
    }
    return Expr::sum(std::move(out));
}

namespace {

class Substituter {
public:
    explicit Substituter(const std::vector<SubstitutionRule>& rules) : rules_(rules) {}

    Expr run(const Expr& e) {
        for (const auto& r : rules_)
            if (!r.is_function_rule() && r.target == e) return r.replacement;
        switch (e.kind()) {
        case Kind::Integer:
        case Kind::Rational:
        case Kind::Symbol: return e;
        case Kind::Sum: {
            std::vector<Expr> terms;
            for (const auto& t : e.args()) terms.push_back(run(t));
            return collect_terms(terms);
        }
        case Kind::Product: {
            std::vector<Expr> f;
            for (const auto& t : e.args()) f.push_back(run(t));
            return Expr::product(std::move(f));
        }
        case Kind::Power: return Expr::power(run(e[0]), run(e[1]));
        case Kind::Abs: return Expr::abs(run(e[0]));
        case Kind::DeferredD: return Expr::deferred(run(e[0]), e.name(), e.orders()[0]);
        case Kind::FuncApp:
        case Kind::Deriv: {
            std::vector<Expr> args;
            for (const auto& a : e.args()) args.push_back(run(a));
            for (const auto& r : rules_)
                if (r.is_function_rule() && r.head == e.name()) return apply_closure(r, e, args);
            if (e.kind() == Kind::FuncApp) return Expr::func(e.name(), std::move(args));
            return Expr::deriv(e.name(), e.orders(), std::move(args));
        }
        }
        return e;
    }

private:
    const std::vector<SubstitutionRule>& rules_;

    static Expr apply_closure(const SubstitutionRule& r, const Expr& e, const std::vector<Expr>& args) {
        Expr body = r.replacement;
        if (!r.params.empty() && r.params.size() != args.size())
            throw Error(Errc::InvalidArgument, "function rule for " + r.head + " has wrong arity");
        if (e.kind() == Kind::Deriv) {
            for (std::size_t i = 0; i < e.orders().size(); ++i) {
                for (int k = 0; k < e.orders()[i]; ++k) {
                    if (r.params.empty()) return Expr(0L);
                    body = diff(body, r.params[i]);
                }
            }
        }
        if (r.params.empty()) return body;
        std::vector<SubstitutionRule> bind;
        for (std::size_t i = 0; i < r.params.size(); ++i)
            bind.push_back(SubstitutionRule::replace(Expr::symbol(r.params[i]), args[i]));
        return Substituter(bind).run(body);
    }
};

}  // namespace

Expr substitute(const Expr& e, const std::vector<SubstitutionRule>& rules) {
    if (rules.empty()) return e;
    return Substituter(rules).run(e);
}

Expr activate_deferred(const Expr& e) {
    if (!has_deferred(e)) return e;
    switch (e.kind()) {
    case Kind::DeferredD: {
        Expr inner = activate_deferred(e[0]);
        for (int k = 0; k < e.orders()[0]; ++k) inner = diff(inner, e.name());
        return inner;
    }
    case Kind::Sum: {
        std::vector<Expr> t;
        for (const auto& a : e.args()) t.push_back(activate_deferred(a));
        return Expr::sum(std::move(t));
    }
    case Kind::Product: {
        std::vector<Expr> t;
        for (const auto& a : e.args()) t.push_back(activate_deferred(a));
        return Expr::product(std::move(t));
    }
    case Kind::Power: return Expr::power(activate_deferred(e[0]), activate_deferred(e[1]));
    case Kind::Abs: return Expr::abs(activate_deferred(e[0]));
    case Kind::FuncApp:
    case Kind::Deriv: {
        std::vector<Expr> t;
        for (const auto& a : e.args()) t.push_back(activate_deferred(a));
        if (e.kind() == Kind::FuncApp) return Expr::func(e.name(), std::move(t));
        return Expr::deriv(e.name(), e.orders(), std::move(t));
    }
    default: return e;
    }
}

Expr activate(const Expr& e, const Assumptions& a) { return simplify(activate_deferred(e), a); }

}  // namespace tc
