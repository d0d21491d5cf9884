#include "tensorcalc/expr.hpp"

#include <algorithm>

#include "tensorcalc/error.hpp"

namespace tc {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_node(const Node& n) {
    std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
    switch (n.kind) {
    case Kind::Integer:
    case Kind::Rational:
        h = mix(h, std::hash<std::string>{}(n.value.get_str()));
        break;
    default:
        h = mix(h, std::hash<std::string>{}(n.name));
    }
    for (const auto& a : n.args) h = mix(h, a.hash());
    for (int o : n.orders) h = mix(h, std::hash<int>{}(o));
    return h;
}

const std::set<std::string, std::less<>> kBuiltins = {
    "sin", "cos", "tan", "cot", "sec", "csc", "exp", "log",
    "arcsin", "arccos", "arctan", "arctan2", "sinh", "cosh", "tanh",
};

}  // namespace

bool is_builtin_function(std::string_view name) { return kBuiltins.count(name) > 0; }

Expr Expr::make(Node n) {
    n.hash = hash_node(n);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr::Expr() : Expr(0L) {}

Expr::Expr(long v) {
    Node n;
    n.kind = Kind::Integer;
    n.value = v;
    n.hash = hash_node(n);
    node_ = std::make_shared<const Node>(std::move(n));
}

Expr::Expr(const Rational& q) {
    Node n;
    n.value.get_num() = q.get_num();
    n.value.get_den() = q.get_den();
    n.value.canonicalize();
    n.kind = n.value.get_den() == 1 ? Kind::Integer : Kind::Rational;
    n.hash = hash_node(n);
    node_ = std::make_shared<const Node>(std::move(n));
}

Expr Expr::symbol(std::string name) {
    Node n;
    n.kind = Kind::Symbol;
    n.name = std::move(name);
    return make(std::move(n));
}

Expr Expr::func(std::string name, std::vector<Expr> args) {
    Node n;
    n.kind = Kind::FuncApp;
    n.name = std::move(name);
    n.args = std::move(args);
    return make(std::move(n));
}

Expr Expr::deriv(std::string name, std::vector<int> orders, std::vector<Expr> args) {
    if (orders.size() != args.size())
        throw Error(Errc::InvalidArgument, "derivative orders do not match argument count");
    bool any = std::any_of(orders.begin(), orders.end(), [](int o) { return o != 0; });
    if (!any) return func(std::move(name), std::move(args));
    Node n;
    n.kind = Kind::Deriv;
    n.name = std::move(name);
    n.args = std::move(args);
    n.orders = std::move(orders);
    return make(std::move(n));
}

Expr Expr::deferred(Expr inner, std::string param, int order) {
    if (order <= 0) return inner;
    if (inner.kind() == Kind::DeferredD && inner.name() == param)
        return deferred(inner[0], std::move(param), order + inner.orders()[0]);
    Node n;
    n.kind = Kind::DeferredD;
    n.name = std::move(param);
    n.args = {std::move(inner)};
    n.orders = {order};
    return make(std::move(n));
}

Expr Expr::abs(Expr inner) {
    if (inner.is_number()) return Expr(Rational(::abs(inner.value())));
    Node n;
    n.kind = Kind::Abs;
    n.args = {std::move(inner)};
    return make(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    Rational constant = 0;
    for (auto& t : terms) {
        if (t.kind() == Kind::Sum) {
            for (const auto& s : t.args()) {
                if (s.is_number())
                    constant += s.value();
                else
                    flat.push_back(s);
            }
        } else if (t.is_number()) {
            constant += t.value();
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (sgn(constant) != 0) flat.insert(flat.begin(), Expr(constant));
    if (flat.empty()) return Expr(0L);
    if (flat.size() == 1) return flat[0];
    Node n;
    n.kind = Kind::Sum;
    n.args = std::move(flat);
    return make(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    Rational coef = 1;
    for (auto& f : factors) {
        if (f.kind() == Kind::Product) {
            for (const auto& s : f.args()) {
                if (s.is_number())
                    coef *= s.value();
                else
                    flat.push_back(s);
            }
        } else if (f.is_number()) {
            coef *= f.value();
        } else {
            flat.push_back(std::move(f));
        }
    }
    if (sgn(coef) == 0) return Expr(0L);
    if (coef != 1) flat.insert(flat.begin(), Expr(coef));
    if (flat.empty()) return Expr(1L);
    if (flat.size() == 1) return flat[0];
    Node n;
    n.kind = Kind::Product;
    n.args = std::move(flat);
    return make(std::move(n));
}

Expr Expr::power(Expr base, Expr exponent) {
    if (exponent.is_zero_literal()) return Expr(1L);
    if (exponent.is_one_literal()) return base;
    if (base.is_number() && exponent.kind() == Kind::Integer && exponent.value().get_num().fits_slong_p()) {
        long e = exponent.value().get_num().get_si();
        const Rational& b = base.value();
        if (sgn(b) == 0) {
            if (e < 0) throw Error(Errc::DomainError, "division by zero");
            return Expr(0L);
        }
        unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
        double bits = static_cast<double>(mpz_sizeinbase(b.get_num_mpz_t(), 2) + mpz_sizeinbase(b.get_den_mpz_t(), 2));
        if (bits * static_cast<double>(ue) > 1e6) throw Error(Errc::DomainError, "numeric power too large");
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), b.get_num().get_mpz_t(), ue);
        mpz_pow_ui(den.get_mpz_t(), b.get_den().get_mpz_t(), ue);
        Rational r = e < 0 ? Rational(den, num) : Rational(num, den);
        r.canonicalize();
        return Expr(r);
    }
    if (base.is_one_literal()) return base;
    if (base.kind() == Kind::Power && exponent.kind() == Kind::Integer && base[1].is_number()) {
        // (b^p)^n = b^(p n) for integer n
        return power(base[0], Expr(Rational(base[1].value() * exponent.value())));
    }
    Node n;
    n.kind = Kind::Power;
    n.args = {std::move(base), std::move(exponent)};
    return make(std::move(n));
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash()) return false;
    return compare(a, b) == 0;
}

namespace {

int kind_rank(Kind k) {
    switch (k) {
    case Kind::Symbol: return 0;
    case Kind::Integer:
    case Kind::Rational: return 1;
    default: return 2 + static_cast<int>(k);
    }
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
    if (&a.node() == &b.node()) return 0;
    int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
    if (ra != rb) return ra < rb ? -1 : 1;
    if (a.kind() == Kind::Symbol) {
        int c = a.name().compare(b.name());
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    if (a.is_number()) {
        int c = cmp(a.value(), b.value());
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = compare(a[i], b[i]);
        if (c != 0) return c;
    }
    if (a.orders() != b.orders()) return a.orders() < b.orders() ? -1 : 1;
    return 0;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator-(const Expr& a) { return Expr::product({Expr(-1L), a}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
    return Expr::product({a, Expr::power(b, Expr(-1L))});
}
Expr pow(const Expr& base, const Expr& exponent) { return Expr::power(base, exponent); }
Expr sqrt(const Expr& e) { return Expr::power(e, rational(1, 2)); }
Expr rational(long num, long den) { return Expr(Rational(num, den)); }

void walk(const Expr& e, const std::function<bool(const Expr&)>& fn) {
    if (!fn(e)) return;
    for (const auto& a : e.args()) walk(a, fn);
}

std::set<std::string> free_symbols(const Expr& e) {
    std::set<std::string> out;
    walk(e, [&](const Expr& x) {
        if (x.is_symbol()) out.insert(x.name());
        return true;
    });
    return out;
}

std::set<std::string> function_heads(const Expr& e) {
    std::set<std::string> out;
    walk(e, [&](const Expr& x) {
        if (x.kind() == Kind::FuncApp || x.kind() == Kind::Deriv) out.insert(x.name());
        return true;
    });
    return out;
}

bool contains(const Expr& e, const Expr& sub) {
    bool found = false;
    walk(e, [&](const Expr& x) {
        if (found) return false;
        if (x == sub) found = true;
        return !found;
    });
    return found;
}

bool has_deferred(const Expr& e) {
    bool found = false;
    walk(e, [&](const Expr& x) {
        if (x.kind() == Kind::DeferredD) found = true;
        return !found;
    });
    return found;
}

}  // namespace tc
