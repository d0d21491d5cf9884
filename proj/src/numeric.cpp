#include "tensorcalc/numeric.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "tensorcalc/calculus.hpp"
#include "tensorcalc/error.hpp"
#include "tensorcalc/simplify.hpp"

namespace tc {

namespace {

struct SingularPoint {};

constexpr double kSingular = 1e-6;

using Provider = std::function<double(const std::string&, const std::vector<int>&, const std::vector<double>&)>;

class Evaluator {
public:
    struct Val {
        double v = 0;
        double mag = 0;  // scale of the terms that produced v
    };

    Evaluator(const std::map<std::string, double>& bindings, Provider funcs, bool guard)
        : bindings_(bindings), funcs_(std::move(funcs)), guard_(guard) {}

    Val eval(const Expr& e) {
        switch (e.kind()) {
        case Kind::Integer:
        case Kind::Rational: {
            double v = e.value().get_d();
            return {v, std::abs(v)};
        }
        case Kind::Symbol: {
            auto it = bindings_.find(e.name());
            if (it == bindings_.end()) throw Error(Errc::UnboundSymbol, "unbound symbol " + e.name());
            return {it->second, std::abs(it->second)};
        }
        case Kind::Sum: {
            Val r;
            for (const auto& t : e.args()) {
                Val x = eval(t);
                r.v += x.v;
                r.mag += x.mag;
            }
            return r;
        }
        case Kind::Product: {
            Val r{1, 1};
            for (const auto& t : e.args()) {
                Val x = eval(t);
                r.v *= x.v;
                r.mag *= x.mag;
            }
            return r;
        }
        case Kind::Power: return power(e);
        case Kind::FuncApp:
        case Kind::Deriv: return apply(e);
        case Kind::DeferredD: return eval(activate_deferred(e));
        case Kind::Abs: {
            Val x = eval(e[0]);
            return {std::abs(x.v), x.mag};
        }
        }
        return {};
    }

private:
    const std::map<std::string, double>& bindings_;
    Provider funcs_;
    bool guard_;

    void check_denominator(double d) {
        if (d == 0) throw Error(Errc::DomainError, "division by zero");
        if (guard_ && std::abs(d) < kSingular) throw SingularPoint{};
    }

    Val power(const Expr& e) {
        Val b = eval(e[0]);
        const Expr& x = e[1];
        if (x.is_number()) {
            const Rational& q = x.value();
            double qd = q.get_d();
            if (sgn(q) < 0) check_denominator(b.v);
            double v;
            if (q.get_den() == 1) {
                v = std::pow(b.v, qd);
            } else if (b.v >= 0) {
                v = std::pow(b.v, qd);
            } else if (mpz_odd_p(q.get_den_mpz_t())) {
                v = std::pow(-b.v, qd);
                if (mpz_odd_p(q.get_num_mpz_t())) v = -v;
            } else {
                throw Error(Errc::DomainError, "even root of a negative number");
            }
            double mag = sgn(q) > 0 ? std::pow(b.mag, qd) : std::abs(v);
            return {v, std::max(mag, std::abs(v))};
        }
        Val ex = eval(x);
        if (b.v <= 0) throw Error(Errc::DomainError, "non-positive base with symbolic exponent");
        double v = std::pow(b.v, ex.v);
        return {v, std::abs(v)};
    }

    Val apply(const Expr& e) {
        std::vector<double> args;
        args.reserve(e.size());
        for (const auto& a : e.args()) args.push_back(eval(a).v);
        const std::string& n = e.name();
        if (e.kind() == Kind::FuncApp && (is_builtin_function(n) || n == "sqrt")) {
            double v = builtin(n, args);
            return {v, std::abs(v)};
        }
        std::vector<int> orders = e.kind() == Kind::Deriv ? e.orders() : std::vector<int>(e.size(), 0);
        double v = funcs_(n, orders, args);
        return {v, std::abs(v)};
    }

    double builtin(const std::string& n, const std::vector<double>& a) {
        if (n == "arctan2") {
            if (a.size() != 2) throw Error(Errc::InvalidArgument, "arctan2 takes two arguments");
            if (a[0] == 0 && a[1] == 0) throw Error(Errc::DomainError, "arctan2 at the origin");
            return std::atan2(a[1], a[0]);
        }
        if (a.size() != 1) throw Error(Errc::InvalidArgument, n + " takes one argument");
        double u = a[0];
        if (n == "sin") return std::sin(u);
        if (n == "cos") return std::cos(u);
        if (n == "tan") {
            check_denominator(std::cos(u));
            return std::tan(u);
        }
        if (n == "cot") {
            check_denominator(std::sin(u));
            return std::cos(u) / std::sin(u);
        }
        if (n == "sec") {
            check_denominator(std::cos(u));
            return 1 / std::cos(u);
        }
        if (n == "csc") {
            check_denominator(std::sin(u));
            return 1 / std::sin(u);
        }
        if (n == "exp") return std::exp(u);
        if (n == "log") {
            if (u <= 0) throw Error(Errc::DomainError, "log of a non-positive number");
            return std::log(u);
        }
        if (n == "sqrt") {
            if (u < 0) throw Error(Errc::DomainError, "sqrt of a negative number");
            return std::sqrt(u);
        }
        if (n == "arcsin" || n == "arccos") {
            if (std::abs(u) > 1) throw Error(Errc::DomainError, n + " outside [-1, 1]");
            return n == "arcsin" ? std::asin(u) : std::acos(u);
        }
        if (n == "arctan") return std::atan(u);
        if (n == "sinh") return std::sinh(u);
        if (n == "cosh") return std::cosh(u);
        if (n == "tanh") return std::tanh(u);
        throw Error(Errc::InvalidArgument, "unknown function " + n);
    }
};

double central_difference(const FuncImpl& f, std::vector<int> orders, std::vector<double> x) {
    std::size_t slot = orders.size();
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i] > 0) {
            slot = i;
            break;
        }
    if (slot == orders.size()) return f(x);
    --orders[slot];
    double h = 1e-4 * std::max(1.0, std::abs(x[slot]));
    double x0 = x[slot];
    x[slot] = x0 + h;
    double up = central_difference(f, orders, x);
    x[slot] = x0 - h;
    double down = central_difference(f, orders, x);
    return (up - down) / (2 * h);
}

// Smooth test function c0 + sum_k c_k sin(w_k . x + b_k) with exact derivatives.
struct RandomFunction {
    double c0 = 0;
    std::vector<double> c, b;
    std::vector<std::vector<double>> w;

    double operator()(const std::vector<int>& orders, const std::vector<double>& x) const {
        int total = 0;
        for (int o : orders) total += o;
        double v = total == 0 ? c0 : 0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            double phase = b[k] + total * std::numbers::pi / 2;
            double factor = c[k];
            for (std::size_t i = 0; i < x.size(); ++i) {
                phase += w[k][i] * x[i];
                factor *= std::pow(w[k][i], orders[i]);
            }
            v += factor * std::sin(phase);
        }
        return v;
    }
};

double sample_symbol(const std::string& name, const Assumptions& a, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.25, 2.0);
    for (const auto& p : a.predicates) {
        if (p.symbol != name || !p.bound.is_number()) continue;
        double bound = p.bound.value().get_d();
        switch (p.rel) {
        case Relation::Eq: return bound;
        case Relation::Ge:
        case Relation::Gt: return bound + mag(rng);
        case Relation::Le:
        case Relation::Lt: return bound - mag(rng);
        }
    }
    double v = mag(rng);
    return std::bernoulli_distribution(0.5)(rng) ? v : -v;
}

}  // namespace

double eval_numeric(const Expr& e, const std::map<std::string, double>& bindings,
                    const std::map<std::string, FuncImpl>& funcs) {
    Provider provider = [&](const std::string& name, const std::vector<int>& orders, const std::vector<double>& x) {
        auto it = funcs.find(name);
        if (it == funcs.end()) throw Error(Errc::UnboundSymbol, "no implementation for function " + name);
        return central_difference(it->second, orders, x);
    };
    return Evaluator(bindings, provider, false).eval(e).v;
}

bool is_zero(const Expr& e, const Assumptions& a, int samples) {
    if (e.is_number()) return e.is_zero_literal();
    std::mt19937_64 rng(0x5eed ^ e.hash());
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::map<std::pair<std::string, std::size_t>, RandomFunction> functions;
    walk(e, [&](const Expr& x) {
        if ((x.kind() == Kind::FuncApp && !is_builtin_function(x.name()) && x.name() != "sqrt") ||
            x.kind() == Kind::Deriv) {
            auto key = std::make_pair(x.name(), x.size());
            if (functions.count(key)) return true;
            RandomFunction f;
            f.c0 = 2 + unit(rng);
            for (int k = 0; k < 3; ++k) {
                f.c.push_back((0.2 + 0.3 * unit(rng)) * (unit(rng) < 0.5 ? -1 : 1));
                f.b.push_back(2 * std::numbers::pi * unit(rng));
                std::vector<double> w;
                for (std::size_t i = 0; i < x.size(); ++i) w.push_back(3 * unit(rng) - 1.5);
                f.w.push_back(std::move(w));
            }
            functions.emplace(key, std::move(f));
        }
        return true;
    });
    Provider provider = [&](const std::string& name, const std::vector<int>& orders, const std::vector<double>& x) {
        return functions.at({name, x.size()})(orders, x);
    };

    auto symbols = free_symbols(e);
    int ok = 0;
    for (int attempt = 0; attempt < samples * 50 && ok < samples; ++attempt) {
        std::map<std::string, double> bindings;
        for (const auto& s : symbols) bindings[s] = sample_symbol(s, a, rng);
        Evaluator::Val r;
        try {
            r = Evaluator(bindings, provider, true).eval(e);
        } catch (const SingularPoint&) {
            continue;
        } catch (const Error& err) {
            if (err.code() != Errc::DomainError) throw;
            continue;
        }
        if (!std::isfinite(r.v) || !std::isfinite(r.mag)) continue;
        if (std::abs(r.v) > 1e-9 * r.mag) return false;
        ++ok;
    }
    if (ok > 0) return true;
    if (simplify(e, a).is_zero_literal()) return true;
    throw Error(Errc::UnresolvableSample, "no admissible sample point found");
}

}  // namespace tc
