#include "tensorcalc/simplify.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "poly.hpp"
#include "tensorcalc/error.hpp"
#include "tensorcalc/text.hpp"

namespace tc {

// ---------------------------------------------------------------- assumptions

void Assumptions::add(const Predicate& p) {
    if (std::find(predicates.begin(), predicates.end(), p) == predicates.end()) predicates.push_back(p);
}

std::string relation_text(Relation r) {
    switch (r) {
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
    case Relation::Le: return "<=";
    case Relation::Lt: return "<";
    case Relation::Eq: return "==";
    }
    return "?";
}

std::string Assumptions::to_string() const {
    std::string s = std::string("{AssumeReal: ") + (assumeReal ? "True" : "False") + ", User: {";
    for (std::size_t i = 0; i < predicates.size(); ++i) {
        const auto& p = predicates[i];
        s += (i ? ", " : "") + p.symbol + " " + relation_text(p.rel) + " " + format_expr(p.bound);
    }
    return s + "}}";
}

Predicate parse_predicate(std::string_view text) {
    static const std::pair<std::string_view, Relation> ops[] = {
        {">=", Relation::Ge}, {"≥", Relation::Ge}, {"<=", Relation::Le}, {"≤", Relation::Le},
        {"==", Relation::Eq}, {">", Relation::Gt}, {"<", Relation::Lt},   {"=", Relation::Eq},
    };
    for (const auto& [op, rel] : ops) {
        auto pos = text.find(op);
        if (pos == std::string_view::npos) continue;
        Expr lhs = parse_expr(text.substr(0, pos));
        Expr rhs = parse_expr(text.substr(pos + op.size()));
        if (!lhs.is_symbol())
            throw Error(Errc::InvalidArgument, "assumption must constrain a single symbol: " + std::string(text));
        return Predicate{lhs.name(), rel, rhs};
    }
    throw Error(Errc::Syntax, "no relation operator in assumption: " + std::string(text));
}

// ---------------------------------------------------------------- sign oracle

namespace {

bool is_even_integer(const Expr& e) {
    return e.kind() == Kind::Integer && mpz_even_p(e.value().get_num_mpz_t());
}

bool number_ge(const Expr& e, int bound) { return e.is_number() && cmp(e.value(), bound) >= 0; }
bool number_le(const Expr& e, int bound) { return e.is_number() && cmp(e.value(), bound) <= 0; }

}  // namespace

bool provably_nonnegative(const Expr& e, const Assumptions& a) {
    switch (e.kind()) {
    case Kind::Integer:
    case Kind::Rational: return sgn(e.value()) >= 0;
    case Kind::Symbol:
        for (const auto& p : a.predicates) {
            if (p.symbol != e.name()) continue;
            if ((p.rel == Relation::Ge || p.rel == Relation::Gt || p.rel == Relation::Eq) && number_ge(p.bound, 0))
                return true;
        }
        return false;
    case Kind::Sum:
        return std::all_of(e.args().begin(), e.args().end(),
                           [&](const Expr& t) { return provably_nonnegative(t, a); });
    case Kind::Product: {
        int nonpos = 0;
        for (const auto& f : e.args()) {
            if (provably_nonnegative(f, a)) continue;
            if (provably_nonpositive(f, a)) {
                ++nonpos;
                continue;
            }
            return false;
        }
        return nonpos % 2 == 0;
    }
    case Kind::Power: {
        const Expr& ex = e[1];
        if (a.assumeReal && is_even_integer(ex)) return true;
        if (ex.kind() == Kind::Rational && mpz_even_p(ex.value().get_den_mpz_t())) return true;
        if (ex.is_number()) return provably_nonnegative(e[0], a);
        return false;
    }
    case Kind::Abs: return true;
    case Kind::FuncApp:
        if (!a.assumeReal) return false;
        return e.name() == "exp" || e.name() == "cosh" || e.name() == "arccos";
    default: return false;
    }
}

bool provably_nonpositive(const Expr& e, const Assumptions& a) {
    switch (e.kind()) {
    case Kind::Integer:
    case Kind::Rational: return sgn(e.value()) <= 0;
    case Kind::Symbol:
        for (const auto& p : a.predicates) {
            if (p.symbol != e.name()) continue;
            if ((p.rel == Relation::Le || p.rel == Relation::Lt || p.rel == Relation::Eq) && number_le(p.bound, 0))
                return true;
        }
        return false;
    case Kind::Sum:
        return std::all_of(e.args().begin(), e.args().end(),
                           [&](const Expr& t) { return provably_nonpositive(t, a); });
    case Kind::Product: {
        int nonpos = 0;
        for (const auto& f : e.args()) {
            if (provably_nonpositive(f, a) && !provably_nonnegative(f, a)) {
                ++nonpos;
                continue;
            }
            if (provably_nonnegative(f, a)) continue;
            return false;
        }
        return nonpos % 2 == 1;
    }
    case Kind::Power:
        if (e[1].kind() == Kind::Integer && !is_even_integer(e[1])) return provably_nonpositive(e[0], a);
        return false;
    default: return false;
    }
}

// ---------------------------------------------------------------- simplifier

namespace {

using detail::Coef;
using detail::Mono;
using detail::Poly;
using detail::Term;

struct RatFunc {
    Poly num;
    std::vector<std::pair<Poly, int>> den;  // normalized factors, positive exponents

    static RatFunc constant(const Coef& c) { return RatFunc{Poly::constant(c), {}}; }
    static RatFunc of_poly(Poly p) { return RatFunc{std::move(p), {}}; }
};

enum class KType { Plain, Radical, Abs, Sin, Cos };

struct Kernel {
    Expr expr;
    KType type = KType::Plain;
    int q = 0;                       // kernel^q == *base
    std::shared_ptr<RatFunc> base;
    std::uint32_t partner = 0;       // Cos: the matching Sin kernel
};

Coef rational_pow(const Coef& c, long n) {
    mpz_class num, den;
    unsigned long un = static_cast<unsigned long>(n < 0 ? -n : n);
    mpz_pow_ui(num.get_mpz_t(), c.get_num_mpz_t(), un);
    mpz_pow_ui(den.get_mpz_t(), c.get_den_mpz_t(), un);
    Coef r = n < 0 ? Coef(den, num) : Coef(num, den);
    r.canonicalize();
    return r;
}

// Exact q-th root of a positive rational, if any.
std::optional<Coef> rational_root(const Coef& c, unsigned long q) {
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), c.get_num_mpz_t(), q)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), c.get_den_mpz_t(), q)) return std::nullopt;
    Coef r(rn, rd);
    r.canonicalize();
    return r;
}

class Simplifier {
public:
    explicit Simplifier(const Assumptions& a) : A_(a) {}

    Expr run(const Expr& e) { return to_expr(conv(e)); }

private:
    const Assumptions& A_;
    std::vector<Kernel> ks_;
    std::unordered_map<Expr, std::uint32_t, ExprHash> index_;
    std::vector<Poly> known_;
    std::vector<int> rank_;

    // ------------------------------------------------------------ kernels

    std::uint32_t intern(const Expr& e, KType type = KType::Plain, int q = 0,
                         std::shared_ptr<RatFunc> base = nullptr) {
        auto it = index_.find(e);
        if (it != index_.end()) return it->second;
        Kernel k;
        k.expr = e;
        k.type = type;
        k.q = q;
        k.base = std::move(base);
        auto id = static_cast<std::uint32_t>(ks_.size());
        ks_.push_back(std::move(k));
        index_.emplace(e, id);
        return id;
    }

    RatFunc kvar(std::uint32_t v) { return RatFunc::of_poly(Poly::var(v)); }

    void ensure_ranks() {
        if (rank_.size() == ks_.size()) return;
        std::vector<std::uint32_t> order(ks_.size());
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
            return compare(ks_[x].expr, ks_[y].expr) < 0;
        });
        rank_.assign(ks_.size(), 0);
        for (std::size_t i = 0; i < order.size(); ++i) rank_[order[i]] = static_cast<int>(i);
    }

    // Context-independent monomial order (via canonical kernel order).
    int canon_cmp(const Mono& a, const Mono& b) {
        auto ranked = [&](const Mono& m) {
            std::vector<std::pair<int, int>> r;
            r.reserve(m.f.size());
            for (const auto& [v, e] : m.f) r.emplace_back(rank_[v], e);
            std::sort(r.begin(), r.end());
            return r;
        };
        auto ra = ranked(a), rb = ranked(b);
        std::size_t n = std::min(ra.size(), rb.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (ra[i].first != rb[i].first) return ra[i].first < rb[i].first ? 1 : -1;
            if (ra[i].second != rb[i].second) return ra[i].second > rb[i].second ? 1 : -1;
        }
        if (ra.size() == rb.size()) return 0;
        return ra.size() > rb.size() ? 1 : -1;
    }

    const Term& canon_lead(const Poly& p) {
        ensure_ranks();
        const Term* best = &p.terms()[0];
        for (const auto& t : p.terms())
            if (canon_cmp(t.m, best->m) > 0) best = &t;
        return *best;
    }

    // p = c * F with F primitive, integral, canonical leading coefficient > 0.
    std::pair<Coef, Poly> normalize_factor(const Poly& p) {
        Coef c = p.content();
        if (sgn(canon_lead(p).c) < 0) c = -c;
        return {c, p.scaled(Coef(1) / c)};
    }

    static void push_factor(std::vector<std::pair<Poly, int>>& fs, const Poly& f, int e) {
        if (e == 0) return;
        for (auto& [g, k] : fs)
            if (g == f) {
                k += e;
                return;
            }
        fs.emplace_back(f, e);
    }

    std::pair<Coef, std::vector<std::pair<Poly, int>>> factorize(const Poly& p) {
        std::vector<std::pair<Poly, int>> fs;
        if (p.is_constant()) return {p.constant_value(), fs};
        Mono m = p.mono_content();
        Poly rest = p;
        if (!m.empty()) {
            rest = *p.divide(Poly::var(0, 0).times_mono(m, Coef(1)));
            for (const auto& [v, e] : m.f) push_factor(fs, Poly::var(v), e);
        }
        auto [c, P] = normalize_factor(rest);
        if (P.is_constant()) return {c, fs};
        for (const auto& F : known_) {
            if (P.is_constant()) break;
            if (P == F) {
                push_factor(fs, F, 1);
                P = Poly::constant(Coef(1));
                break;
            }
            while (!P.is_constant()) {
                auto q = P.divide(F);
                if (!q) break;
                push_factor(fs, F, 1);
                auto [c2, P2] = normalize_factor(*q);
                c *= c2;
                P = P2;
            }
        }
        if (!P.is_constant()) {
            push_factor(fs, P, 1);
            if (std::find(known_.begin(), known_.end(), P) == known_.end()) known_.push_back(P);
        }
        return {c, fs};
    }

    // ------------------------------------------------------------ arithmetic

    static Poly den_product(const std::vector<std::pair<Poly, int>>& fs, const std::vector<std::pair<Poly, int>>& minus) {
        Poly out = Poly::constant(Coef(1));
        for (const auto& [f, e] : fs) {
            int sub = 0;
            for (const auto& [g, k] : minus)
                if (g == f) sub = k;
            if (e - sub > 0) out = out * f.pow(static_cast<unsigned>(e - sub));
        }
        return out;
    }

    static RatFunc mul_raw(const RatFunc& a, const RatFunc& b) {
        RatFunc r;
        r.num = a.num * b.num;
        if (r.num.is_zero()) return r;
        r.den = a.den;
        for (const auto& [f, e] : b.den) push_factor(r.den, f, e);
        return r;
    }

    static RatFunc add_raw(const RatFunc& a, const RatFunc& b) {
        if (a.num.is_zero()) return b;
        if (b.num.is_zero()) return a;
        std::vector<std::pair<Poly, int>> L = a.den;
        for (const auto& [f, e] : b.den) {
            bool found = false;
            for (auto& [g, k] : L)
                if (g == f) {
                    k = std::max(k, e);
                    found = true;
                }
            if (!found) L.emplace_back(f, e);
        }
        RatFunc r;
        r.num = a.num * den_product(L, a.den) + b.num * den_product(L, b.den);
        if (!r.num.is_zero()) r.den = std::move(L);
        return r;
    }

    RatFunc inv_raw(const RatFunc& a) {
        if (a.num.is_zero()) throw Error(Errc::DomainError, "division by zero");
        Poly n = den_product(a.den, {});
        auto [c, fs] = factorize(a.num);
        RatFunc r;
        r.num = n.scaled(Coef(1) / c);
        r.den = std::move(fs);
        return r;
    }

    RatFunc negate(const RatFunc& a) { return RatFunc{a.num.scaled(Coef(-1)), a.den}; }

    RatFunc add(const RatFunc& a, const RatFunc& b) { return normalize(add_raw(a, b)); }
    RatFunc mul(const RatFunc& a, const RatFunc& b) { return normalize(mul_raw(a, b)); }
    RatFunc inv(const RatFunc& a) { return normalize(inv_raw(a)); }

    RatFunc pow_int(const RatFunc& a, long n) {
        if (n == 0) return RatFunc::constant(Coef(1));
        if (n < 0) return pow_int(inv(a), -n);
        if (n == 1) return a;
        RatFunc r;
        r.num = a.num.pow(static_cast<unsigned>(n));
        for (const auto& [f, e] : a.den) r.den.emplace_back(f, e * static_cast<int>(n));
        return normalize(r);
    }

    // cos(u)^2 -> 1 - sin(u)^2
    Poly reduce_trig(const Poly& p) {
        bool any = false;
        for (const auto& t : p.terms()) {
            for (const auto& [v, e] : t.m.f)
                if (e >= 2 && ks_[v].type == KType::Cos) any = true;
        }
        if (!any) return p;
        std::vector<Term> out;
        for (const auto& t : p.terms()) {
            Poly tp = Poly::from_terms({t});
            Mono keep;
            Poly factor = Poly::constant(Coef(1));
            for (const auto& [v, e] : t.m.f) {
                if (e >= 2 && ks_[v].type == KType::Cos) {
                    if (e % 2) keep.f.emplace_back(v, 1);
                    Poly s2 = Poly::constant(Coef(1)) - Poly::var(ks_[v].partner, 2);
                    factor = factor * s2.pow(static_cast<unsigned>(e / 2));
                } else {
                    keep.f.emplace_back(v, e);
                }
            }
            if (keep.f.size() != t.m.f.size() || !(keep == t.m)) {
                Poly expanded = factor.times_mono(keep, t.c);
                for (const auto& u : expanded.terms()) out.push_back(u);
            } else {
                out.push_back(t);
            }
        }
        return Poly::from_terms(std::move(out));
    }

    bool reducible(std::uint32_t v, int e) const {
        const Kernel& k = ks_[v];
        return (k.type == KType::Radical || k.type == KType::Abs) && k.base && e >= k.q;
    }

    RatFunc normalize(RatFunc r) {
        for (int pass = 0; pass < 8; ++pass) {
            reduce(r);
            cancel(r);
            if (!cancel_radicals(r)) break;
        }
        return r;
    }

    void reduce(RatFunc& r) {
        for (int round = 0; round < 32; ++round) {
            bool changed = false;
            r.num = reduce_trig(r.num);
            // Powers of radicals and absolute values in the numerator.
            std::vector<Term> plain;
            std::vector<RatFunc> extra;
            for (const auto& t : r.num.terms()) {
                bool red = false;
                for (const auto& [v, e] : t.m.f) red = red || reducible(v, e);
                if (!red) {
                    plain.push_back(t);
                    continue;
                }
                Mono keep;
                RatFunc acc = RatFunc::constant(t.c);
                for (const auto& [v, e] : t.m.f) {
                    if (reducible(v, e)) {
                        const Kernel& k = ks_[v];
                        int times = e / k.q, rem = e % k.q;
                        if (rem) keep.f.emplace_back(v, rem);
                        for (int i = 0; i < times; ++i) acc = mul_raw(acc, *k.base);
                    } else {
                        keep.f.emplace_back(v, e);
                    }
                }
                acc.num = acc.num.times_mono(keep, Coef(1));
                extra.push_back(std::move(acc));
            }
            if (!extra.empty()) {
                changed = true;
                RatFunc base{Poly::from_terms(std::move(plain)), {}};
                for (auto& x : extra) base = add_raw(base, x);
                RatFunc withden{base.num, r.den};
                for (const auto& [f, e] : base.den) push_factor(withden.den, f, e);
                r = std::move(withden);
            }
            // Powers of radicals and absolute values in the denominator.
            for (std::size_t i = 0; i < r.den.size(); ++i) {
                auto& [f, e] = r.den[i];
                if (!f.is_monomial() || f.terms()[0].m.f.size() != 1) continue;
                auto v = f.terms()[0].m.f[0].first;
                if (f.terms()[0].m.f[0].second != 1 || !reducible(v, e)) continue;
                const Kernel& k = ks_[v];
                int times = e / k.q;
                e = e % k.q;
                RatFunc ib = inv_raw(*k.base);
                RatFunc rest{r.num, {}};
                for (std::size_t j = 0; j < r.den.size(); ++j)
                    if (r.den[j].second > 0) rest.den.push_back(r.den[j]);
                for (int t = 0; t < times; ++t) rest = mul_raw(rest, ib);
                r = std::move(rest);
                changed = true;
                break;
            }
            if (!changed) break;
        }
    }

    static std::optional<std::uint32_t> single_kernel(const Poly& f) {
        if (!f.is_monomial()) return std::nullopt;
        const Mono& m = f.terms()[0].m;
        if (m.f.size() != 1 || m.f[0].second != 1) return std::nullopt;
        return m.f[0].first;
    }

    bool radical_with_poly_base(std::uint32_t v) const {
        const Kernel& k = ks_[v];
        return (k.type == KType::Radical || k.type == KType::Abs) && k.base && k.base->den.empty() &&
               !k.base->num.is_constant();
    }

    // B/K^e -> K^(q-e) and K^j/B -> 1/K^(q-j) where K^q == B.
    bool cancel_radicals(RatFunc& r) {
        if (r.num.is_zero()) return false;
        bool changed = false;
        std::vector<std::pair<Poly, int>> extra;
        for (auto& [f, e] : r.den) {
            auto v = single_kernel(f);
            if (v && radical_with_poly_base(*v)) {
                const Kernel& k = ks_[*v];
                while (e > 0) {
                    auto q = r.num.divide(k.base->num);
                    if (!q) break;
                    changed = true;
                    if (e >= k.q) {
                        r.num = std::move(*q);
                        e -= k.q;
                    } else {
                        r.num = q->times_mono(detail::mono_var(*v, k.q - e), Coef(1));
                        e = 0;
                    }
                }
                continue;
            }
            if (f.is_monomial()) continue;
            for (std::uint32_t w = 0; w < ks_.size() && e > 0; ++w) {
                if (!radical_with_poly_base(w)) continue;
                int j = r.num.min_degree_of(w);
                if (j <= 0) continue;
                const Kernel& k = ks_[w];
                auto [c, F] = normalize_factor(k.base->num);
                if (F != f) continue;
                r.num = r.num.divide(Poly::var(w, j))->scaled(c);
                --e;
                extra.emplace_back(Poly::var(w), k.q - j);
                changed = true;
            }
        }
        for (const auto& [f, e] : extra) push_factor(r.den, f, e);
        r.den.erase(std::remove_if(r.den.begin(), r.den.end(), [](const auto& fe) { return fe.second <= 0; }),
                    r.den.end());
        return changed;
    }

    void cancel(RatFunc& r) {
        if (r.num.is_zero()) {
            r.den.clear();
            return;
        }
        for (auto& [f, e] : r.den) {
            if (f.is_monomial()) {
                const Mono& fm = f.terms()[0].m;
                if (fm.f.size() == 1 && fm.f[0].second == 1) {
                    auto v = fm.f[0].first;
                    int k = std::min(e, r.num.min_degree_of(v));
                    if (k > 0) {
                        r.num = *r.num.divide(Poly::var(v, k));
                        e -= k;
                    }
                    continue;
                }
            }
            while (e > 0) {
                auto q = r.num.divide(f);
                if (!q) break;
                r.num = std::move(*q);
                --e;
            }
        }
        r.den.erase(std::remove_if(r.den.begin(), r.den.end(), [](const auto& fe) { return fe.second <= 0; }),
                    r.den.end());
    }

    bool canon_negative(const RatFunc& r) {
        if (r.num.is_zero()) return false;
        return sgn(canon_lead(r.num).c) < 0;
    }

    // ------------------------------------------------------------ conversion

    RatFunc conv(const Expr& e) {
        switch (e.kind()) {
        case Kind::Integer:
        case Kind::Rational: return RatFunc::constant(e.value());
        case Kind::Symbol: return kvar(intern(e));
        case Kind::Sum: {
            RatFunc acc = RatFunc::constant(Coef(0));
            for (const auto& t : e.args()) acc = add_raw(acc, conv(t));
            return normalize(acc);
        }
        case Kind::Product: {
            RatFunc acc = RatFunc::constant(Coef(1));
            for (const auto& f : e.args()) {
                acc = mul_raw(acc, conv(f));
                if (acc.num.is_zero()) return acc;
            }
            return normalize(acc);
        }
        case Kind::Power: return conv_power(e);
        case Kind::FuncApp: return conv_func(e);
        case Kind::Deriv: {
            std::vector<Expr> args;
            for (const auto& a : e.args()) args.push_back(to_expr(conv(a)));
            return kvar(intern(Expr::deriv(e.name(), e.orders(), args)));
        }
        case Kind::DeferredD:
            return kvar(intern(Expr::deferred(to_expr(conv(e[0])), e.name(), e.orders()[0])));
        case Kind::Abs: return abs_of(conv(e[0]));
        }
        return RatFunc::constant(Coef(0));
    }

    RatFunc conv_power(const Expr& e) {
        Expr ex = to_expr(conv(e[1]));
        if (ex.kind() == Kind::Integer && ex.value().get_num().fits_sint_p()) {
            long n = ex.value().get_num().get_si();
            if (std::labs(n) <= 512) return int_power(e[0], n);
        }
        if (ex.kind() == Kind::Rational) return rational_power(e[0], ex.value());
        RatFunc b = conv(e[0]);
        if (b.num.is_zero() && ex.is_number() && sgn(ex.value()) > 0) return b;
        Expr be = to_expr(b);
        if (be.is_one_literal()) return b;
        return kvar(intern(Expr::power(be, ex)));
    }

    // Integer powers distribute over products and combine with inner powers,
    // so that factored denominators stay factored.
    RatFunc int_power(const Expr& base, long n) {
        if (base.kind() == Kind::Product) {
            RatFunc acc = RatFunc::constant(Coef(1));
            for (const auto& f : base.args()) acc = mul(acc, int_power(f, n));
            return acc;
        }
        if (base.kind() == Kind::Power && base[1].is_number()) return rational_power(base[0], base[1].value() * n);
        return pow_int(conv(base), n);
    }

    RatFunc rational_power(const Expr& base, const Coef& t) {
        if (t.get_den() == 1 && t.get_num().fits_sint_p() && std::labs(t.get_num().get_si()) <= 512)
            return int_power(base, t.get_num().get_si());
        if (t.get_den() == 1) return kvar(intern(Expr::power(to_expr(conv(base)), Expr(t))));
        return radical_pow(conv(base), t);
    }

    // X^t for X >= 0 (or odd roots), t rational.
    RatFunc real_power(const RatFunc& X, const Expr& Xexpr, const Coef& t) {
        mpz_class a = t.get_num(), b = t.get_den();
        if (b == 1) return pow_int(X, a.get_si());
        mpz_class k;
        mpz_tdiv_q(k.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        long rem = mpz_class(a - k * b).get_si();
        int q = static_cast<int>(b.get_si());
        Expr kexpr = Expr::power(Xexpr, Expr(Coef(1, q)));
        auto v = intern(kexpr, KType::Radical, q, std::make_shared<RatFunc>(X));
        RatFunc r = pow_int(X, k.get_si());
        RatFunc kr = rem > 0 ? RatFunc::of_poly(Poly::var(v, static_cast<int>(rem)))
                             : inv(RatFunc::of_poly(Poly::var(v, static_cast<int>(-rem))));
        return mul(r, kr);
    }

    RatFunc radical_pow(const RatFunc& B, const Coef& alpha) {
        if (B.num.is_zero()) {
            if (sgn(alpha) > 0) return B;
            throw Error(Errc::DomainError, "division by zero");
        }
        unsigned long q = alpha.get_den().get_ui();
        bool odd_root = q % 2 == 1;
        auto [c, fs] = factorize(B.num);
        for (const auto& [f, e] : B.den) fs.emplace_back(f, -e);
        RatFunc result = RatFunc::constant(Coef(1));
        bool rest_negative = false;
        std::vector<std::pair<Poly, int>> rest;
        if (sgn(c) < 0) {
            c = -c;
            if (odd_root) {
                if (mpz_odd_p(alpha.get_num_mpz_t())) result = RatFunc::constant(Coef(-1));
            } else {
                rest_negative = true;
            }
        }
        if (c != 1) {
            auto root = rational_root(c, q);
            if (root)
                result = mul(result, RatFunc::constant(rational_pow(*root, alpha.get_num().get_si())));
            else
                result = mul(result, real_power(RatFunc::constant(c), Expr(c), alpha));
        }
        for (const auto& [X, e] : fs) {
            Coef t = alpha * e;
            RatFunc xr = RatFunc::of_poly(X);
            Expr xe = poly_to_expr(X);
            if (provably_nonnegative(xe, A_) || odd_root) {
                result = mul(result, real_power(xr, xe, t));
            } else if (e % 2 == 0 && A_.assumeReal) {
                RatFunc ar = abs_of(xr);
                result = mul(result, real_power(ar, to_expr(ar), t));
            } else {
                rest.emplace_back(X, e);
            }
        }
        if (!rest.empty() || rest_negative) {
            RatFunc R = RatFunc::constant(Coef(rest_negative ? -1 : 1));
            for (const auto& [X, e] : rest) R = mul(R, pow_int(RatFunc::of_poly(X), e));
            if (!rest.empty()) result = mul(result, real_power(R, to_expr(R), alpha));
            else result = mul(result, real_power(R, Expr(-1L), alpha));
        }
        return result;
    }

    RatFunc abs_of(const RatFunc& U) {
        if (U.num.is_zero()) return U;
        if (U.num.is_constant() && U.den.empty()) return RatFunc::constant(::abs(U.num.constant_value()));
        Expr ue = to_expr(U);
        if (!A_.assumeReal) return kvar(intern(Expr::abs(ue)));
        if (provably_nonnegative(ue, A_)) return U;
        if (provably_nonpositive(ue, A_)) return negate(U);
        auto [c, fs] = factorize(U.num);
        for (const auto& [f, e] : U.den) fs.emplace_back(f, -e);
        RatFunc result = RatFunc::constant(::abs(c));
        for (const auto& [X, e] : fs) {
            RatFunc xr = RatFunc::of_poly(X);
            if (e % 2 == 0) {
                result = mul(result, pow_int(xr, e));
                continue;
            }
            Expr xe = poly_to_expr(X);
            if (provably_nonnegative(xe, A_)) {
                result = mul(result, pow_int(xr, e));
            } else if (provably_nonpositive(xe, A_)) {
                result = mul(result, pow_int(negate(xr), e));
            } else {
                auto base = std::make_shared<RatFunc>(pow_int(xr, 2));
                auto v = intern(Expr::abs(xe), KType::Abs, 2, base);
                result = mul(result, pow_int(kvar(v), e));
            }
        }
        return result;
    }

    RatFunc trig(const std::string& name, const Expr& arg) {
        RatFunc u = conv(arg);
        bool neg = canon_negative(u);
        if (neg) u = negate(u);
        Expr ue = to_expr(u);
        RatFunc out;
        if (u.num.is_zero()) {
            out = RatFunc::constant(Coef(name == "cos" ? 1 : 0));
        } else if (ue.kind() == Kind::FuncApp && (ue.name() == "arccos" || ue.name() == "arcsin" ||
                                                   ue.name() == "arctan" || ue.name() == "arctan2")) {
            const Expr& w = ue[0];
            Expr one(1L);
            Expr r;
            bool is_sin = name == "sin";
            if (ue.name() == "arccos") r = is_sin ? sqrt(one - w * w) : w;
            else if (ue.name() == "arcsin") r = is_sin ? w : sqrt(one - w * w);
            else if (ue.name() == "arctan") r = (is_sin ? w : one) / sqrt(one + w * w);
            else r = (is_sin ? ue[1] : ue[0]) / sqrt(ue[0] * ue[0] + ue[1] * ue[1]);
            out = conv(r);
        } else if (name == "sin") {
            out = kvar(intern(Expr::func("sin", {ue}), KType::Sin));
        } else {
            auto s = intern(Expr::func("sin", {ue}), KType::Sin);
            auto c = intern(Expr::func("cos", {ue}), KType::Cos);
            ks_[c].partner = s;
            out = kvar(c);
        }
        if (neg && name == "sin") out = negate(out);
        return out;
    }

    RatFunc conv_func(const Expr& e) {
        const std::string& n = e.name();
        if (e.size() == 1) {
            const Expr& a = e[0];
            if (n == "sin" || n == "cos") return trig(n, a);
            if (n == "tan") return mul(trig("sin", a), inv(trig("cos", a)));
            if (n == "cot") return mul(trig("cos", a), inv(trig("sin", a)));
            if (n == "sec") return inv(trig("cos", a));
            if (n == "csc") return inv(trig("sin", a));
            if (n == "sqrt") return radical_pow(conv(a), Coef(1, 2));
            if (n == "exp" || n == "log") {
                Expr ae = to_expr(conv(a));
                if (n == "exp") {
                    if (ae.is_zero_literal()) return RatFunc::constant(Coef(1));
                    if (ae.kind() == Kind::FuncApp && ae.name() == "log" && ae.size() == 1) return conv(ae[0]);
                } else {
                    if (ae.is_one_literal()) return RatFunc::constant(Coef(0));
                    if (A_.assumeReal && ae.kind() == Kind::FuncApp && ae.name() == "exp" && ae.size() == 1)
                        return conv(ae[0]);
                }
                return kvar(intern(Expr::func(n, {ae})));
            }
        }
        std::vector<Expr> args;
        args.reserve(e.size());
        for (const auto& a : e.args()) args.push_back(to_expr(conv(a)));
        return kvar(intern(Expr::func(n, std::move(args))));
    }

    // ------------------------------------------------------------ back to Expr

    Expr kernel_pow(std::uint32_t v, int e) {
        const Kernel& k = ks_[v];
        if (k.type == KType::Radical) return Expr::power(k.expr[0], Expr(Coef(e, k.q)));
        return Expr::power(k.expr, Expr(static_cast<long>(e)));
    }

    Expr mono_expr(const Mono& m, const Coef& c) {
        std::vector<Expr> fs;
        fs.reserve(m.f.size());
        for (const auto& [v, e] : m.f) fs.push_back(kernel_pow(v, e));
        std::sort(fs.begin(), fs.end(), ExprLess{});
        fs.insert(fs.begin(), Expr(c));
        return Expr::product(std::move(fs));
    }

    Expr poly_to_expr(const Poly& p) {
        std::vector<Expr> ts;
        ts.reserve(p.size());
        for (const auto& t : p.terms()) ts.push_back(mono_expr(t.m, t.c));
        std::sort(ts.begin(), ts.end(), ExprLess{});
        return Expr::sum(std::move(ts));
    }

    Expr to_expr(const RatFunc& r) {
        if (r.num.is_zero()) return Expr(0L);
        if (r.num.is_constant() && r.den.empty()) return Expr(r.num.constant_value());
        std::vector<Expr> fs;
        Mono m = r.num.mono_content();
        Poly rest = m.empty() ? r.num : *r.num.divide(Poly::var(0, 0).times_mono(m, Coef(1)));
        for (const auto& [v, e] : m.f) fs.push_back(kernel_pow(v, e));
        auto [c, P] = normalize_factor(rest);
        // A negative coefficient is absorbed into one sum factor of odd
        // exponent: the numerator sum if any, else the least denominator sum.
        bool absorbed = false;
        if (!P.is_constant()) {
            if (sgn(c) < 0) {
                P = P.scaled(Coef(-1));
                c = -c;
                absorbed = true;
            }
            fs.push_back(poly_to_expr(P));
        }
        std::vector<std::pair<Expr, int>> sums;
        for (const auto& [f, e] : r.den) {
            if (auto v = single_kernel(f))
                fs.push_back(kernel_pow(*v, -e));
            else
                sums.emplace_back(poly_to_expr(f), e);
        }
        std::sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
        for (auto& [se, e] : sums) {
            Expr base = se;
            if (!absorbed && sgn(c) < 0 && e % 2 == 1 && se.kind() == Kind::Sum) {
                std::vector<Expr> neg;
                for (const auto& t : se.args()) neg.push_back(-t);
                std::sort(neg.begin(), neg.end(), ExprLess{});
                base = Expr::sum(std::move(neg));
                c = -c;
                absorbed = true;
            }
            fs.push_back(Expr::power(base, Expr(static_cast<long>(-e))));
        }
        std::sort(fs.begin(), fs.end(), ExprLess{});
        fs.insert(fs.begin(), Expr(c));
        return Expr::product(std::move(fs));
    }
};

}  // namespace

Expr simplify(const Expr& e, const Assumptions& a) {
    Simplifier s(a);
    return s.run(e);
}

}  // namespace tc
