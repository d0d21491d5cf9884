#include "tensorcalc/geodesic.hpp"

#include "tensorcalc/calculus.hpp"
#include "tensorcalc/curvature.hpp"
#include "tensorcalc/error.hpp"
#include "tensorcalc/transform.hpp"

namespace tc {

namespace {

const Role kCurveRoles[] = {Role::Lagrangian, Role::GeodesicFromLagrangian, Role::GeodesicFromChristoffel};

std::string velocity_name(std::size_t i) { return "$v" + std::to_string(i); }

struct Curve {
    std::string coords;
    std::vector<std::string> xs;
    std::string param;
    std::vector<SubstitutionRule> promote;  // x -> x(λ), $v -> x'(λ)
};

Curve curve_for(const Registry& reg, const std::string& metricId, const std::optional<std::string>& coordsId) {
    Curve c;
    c.coords = coordsId.value_or(reg.metric(metricId).defaultCoords);
    c.xs = reg.coords(c.coords).coordSymbols;
    c.param = reg.curve_parameter();
    Expr lam = Expr::symbol(c.param);
    for (std::size_t i = 0; i < c.xs.size(); ++i) {
        c.promote.push_back(SubstitutionRule::replace(Expr::symbol(c.xs[i]), Expr::func(c.xs[i], {lam})));
        c.promote.push_back(
            SubstitutionRule::replace(Expr::symbol(velocity_name(i)), Expr::deriv(c.xs[i], {1}, {lam})));
    }
    return c;
}

// g_μν v^μ v^ν with bare coordinates and velocity placeholders.
Expr quadratic_form(Registry& reg, const std::string& metricId, const Curve& c) {
    const Components& g = represent(reg, metricId, {-1, -1}, c.coords);
    const std::size_t n = c.xs.size();
    std::vector<Expr> terms;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!g[a * n + b].is_zero_literal())
                terms.push_back(g[a * n + b] * Expr::symbol(velocity_name(a)) * Expr::symbol(velocity_name(b)));
    return Expr::sum(std::move(terms));
}

std::string store(Registry& reg, const std::string& metricId, Role role, const std::string& symbol,
                  const IndexConfig& indices, const std::string& coords, Components comps) {
    std::string id = derived_id(metricId, role);
    reg.claim_id(id, true);
    TensorObject obj;
    obj.id = id;
    obj.role = role;
    obj.symbol = symbol;
    obj.metric = metricId;
    obj.defaultIndices = indices;
    obj.defaultCoords = coords;
    obj.store(indices, coords, std::move(comps));
    return reg.put(std::move(obj));
}

}  // namespace

Expr promote_coordinates(const Expr& e, const std::vector<std::string>& coords, const std::string& parameter) {
    std::vector<SubstitutionRule> rules;
    for (const auto& x : coords)
        rules.push_back(SubstitutionRule::replace(Expr::symbol(x), Expr::func(x, {Expr::symbol(parameter)})));
    return substitute(e, rules);
}

Expr rename_parameter(const Expr& e, const std::string& from, const std::string& to) {
    auto all = [&](const std::vector<Expr>& v) {
        std::vector<Expr> out;
        for (const auto& a : v) out.push_back(rename_parameter(a, from, to));
        return out;
    };
    switch (e.kind()) {
    case Kind::Symbol: return e.name() == from ? Expr::symbol(to) : e;
    case Kind::Integer:
    case Kind::Rational: return e;
    case Kind::Sum: return Expr::sum(all(e.args()));
    case Kind::Product: return Expr::product(all(e.args()));
    case Kind::Power: return Expr::power(rename_parameter(e[0], from, to), rename_parameter(e[1], from, to));
    case Kind::Abs: return Expr::abs(rename_parameter(e[0], from, to));
    case Kind::FuncApp: return Expr::func(e.name(), all(e.args()));
    case Kind::Deriv: return Expr::deriv(e.name(), e.orders(), all(e.args()));
    case Kind::DeferredD:
        return Expr::deferred(rename_parameter(e[0], from, to), e.name() == from ? to : e.name(), e.orders()[0]);
    }
    return e;
}

std::string calc_lagrangian(Registry& reg, const std::string& metricId, const std::optional<std::string>& coordsId) {
    Curve c = curve_for(reg, metricId, coordsId);
    Components out{substitute(quadratic_form(reg, metricId, c), c.promote)};
    reg.simplify_all(out, false);
    return store(reg, metricId, Role::Lagrangian, "L", {}, c.coords, std::move(out));
}

std::string geodesic_from_lagrangian(Registry& reg, const std::string& metricId,
                                     const std::optional<std::string>& coordsId) {
    Curve c = curve_for(reg, metricId, coordsId);
    Expr l = quadratic_form(reg, metricId, c);
    const Assumptions& a = reg.options().assumptions;
    const Expr half = rational(1, 2);
    Components out(c.xs.size());
    reg.parallel_for(out.size(), [&](std::size_t i) {
        Expr dx = simplify(substitute(half * diff(l, c.xs[i]), c.promote), a);
        Expr dv = simplify(substitute(half * diff(l, velocity_name(i)), c.promote), a);
        out[i] = dx - Expr::deferred(dv, c.param);
    });
    return store(reg, metricId, Role::GeodesicFromLagrangian, "0", {1}, c.coords, std::move(out));
}

std::string geodesic_from_christoffel(Registry& reg, const std::string& metricId,
                                      const std::optional<std::string>& coordsId) {
    Curve c = curve_for(reg, metricId, coordsId);
    Components gamma = represent(reg, calc_christoffel(reg, metricId), {1, -1, -1}, c.coords);
    const std::size_t n = c.xs.size();
    Expr lam = Expr::symbol(c.param);
    Components out(n);
    reg.parallel_for(n, [&](std::size_t s) {
        std::vector<Expr> terms{Expr::deriv(c.xs[s], {2}, {lam})};
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t v = 0; v < n; ++v) {
                const Expr& g = gamma[(s * n + m) * n + v];
                if (g.is_zero_literal()) continue;
                terms.push_back(g * Expr::symbol(velocity_name(m)) * Expr::symbol(velocity_name(v)));
            }
        out[s] = substitute(Expr::sum(std::move(terms)), c.promote);
    });
    reg.simplify_all(out, false);
    return store(reg, metricId, Role::GeodesicFromChristoffel, "0", {1}, c.coords, std::move(out));
}

std::string activate_tensor(Registry& reg, const std::string& id) {
    TensorObject& obj = reg.get_mut(id);
    for (auto& [key, comps] : obj.reps) {
        for (auto& e : comps) e = activate_deferred(e);
        reg.simplify_all(comps);
    }
    return id;
}

std::string set_curve_parameter(Registry& reg, const std::string& symbol) {
    std::string next = symbol.empty() ? kDefaultCurveParameter : symbol;
    for (const auto& id : reg.ids()) {
        const TensorObject& o = reg.get(id);
        if (o.role != Role::Coordinates) continue;
        for (const auto& x : o.coordSymbols)
            if (x == next)
                throw Error(Errc::CollidesWithCoordinate,
                            "the curve parameter " + next + " is a coordinate of \"" + id + "\"");
    }
    std::string prev = reg.curve_parameter();
    if (prev == next) return next;
    for (const auto& id : reg.ids()) {
        TensorObject& o = reg.get_mut(id);
        if (std::find(std::begin(kCurveRoles), std::end(kCurveRoles), o.role) == std::end(kCurveRoles)) continue;
        for (auto& [key, comps] : o.reps)
            for (auto& e : comps) e = rename_parameter(e, prev, next);
    }
    reg.options_mut().curveParameter = next;
    return next;
}

}  // namespace tc
