#include "tensorcalc/curvature.hpp"

#include "tensorcalc/calculus.hpp"
#include "tensorcalc/transform.hpp"

namespace tc {

namespace {

struct Stage {
    std::string id;
    std::string coords;
    std::size_t dim = 0;
};

// Reuses an existing derived object when present.
std::optional<std::string> existing(Registry& reg, const std::string& metricId, Role role) {
    reg.metric(metricId);
    std::string id = derived_id(metricId, role);
    if (reg.exists(id)) return id;
    return std::nullopt;
}

Stage begin(Registry& reg, const std::string& metricId, Role role) {
    Stage s;
    s.id = derived_id(metricId, role);
    s.coords = reg.metric(metricId).defaultCoords;
    s.dim = reg.dimension_of(s.coords);
    reg.claim_id(s.id);
    return s;
}

void finish(Registry& reg, const Stage& s, const std::string& metricId, Role role, const std::string& symbol,
            const IndexConfig& indices, Components c) {
    reg.simplify_all(c);
    TensorObject obj;
    obj.id = s.id;
    obj.role = role;
    obj.symbol = symbol;
    obj.metric = metricId;
    obj.defaultIndices = indices;
    obj.defaultCoords = s.coords;
    obj.store(indices, s.coords, std::move(c));
    reg.put(std::move(obj));
}

std::vector<std::string> coord_symbols(const Registry& reg, const std::string& coordsId) {
    return reg.coords(coordsId).coordSymbols;
}

}  // namespace

std::string calc_christoffel(Registry& reg, const std::string& metricId) {
    if (auto id = existing(reg, metricId, Role::Christoffel)) return *id;
    Stage s = begin(reg, metricId, Role::Christoffel);
    const std::size_t n = s.dim;
    Components g = represent(reg, metricId, {-1, -1}, s.coords);
    Components gi = represent(reg, metricId, {1, 1}, s.coords);
    auto xs = coord_symbols(reg, s.coords);
    // dg[s][a][b] = d_s g_ab
    Components dg(n * n * n);
    reg.parallel_for(n * n * n, [&](std::size_t f) {
        std::size_t k = f / (n * n), a = (f / n) % n, b = f % n;
        dg[f] = diff(g[a * n + b], xs[k]);
    });
    Components out(n * n * n);
    reg.parallel_for(n * n * n, [&](std::size_t f) {
        std::size_t l = f / (n * n), m = (f / n) % n, v = f % n;
        std::vector<Expr> terms;
        for (std::size_t sg = 0; sg < n; ++sg) {
            if (gi[l * n + sg].is_zero_literal()) continue;
            Expr bracket = dg[m * n * n + v * n + sg] + dg[v * n * n + sg * n + m] - dg[sg * n * n + m * n + v];
            terms.push_back(gi[l * n + sg] * bracket);
        }
        out[f] = rational(1, 2) * Expr::sum(std::move(terms));
    });
    ++reg.christoffelComputations;
    finish(reg, s, metricId, Role::Christoffel, "Γ", {1, -1, -1}, std::move(out));
    return s.id;
}

std::string calc_riemann(Registry& reg, const std::string& metricId) {
    if (auto id = existing(reg, metricId, Role::Riemann)) return *id;
    std::string cid = calc_christoffel(reg, metricId);
    Stage s = begin(reg, metricId, Role::Riemann);
    const std::size_t n = s.dim;
    const Components& G = represent(reg, cid, {1, -1, -1}, s.coords);
    auto xs = coord_symbols(reg, s.coords);
    auto at = [&](std::size_t a, std::size_t b, std::size_t c) -> const Expr& { return G[(a * n + b) * n + c]; };
    Components out(n * n * n * n);
    reg.parallel_for(out.size(), [&](std::size_t f) {
        std::size_t r = f / (n * n * n), sg = (f / (n * n)) % n, m = (f / n) % n, v = f % n;
        std::vector<Expr> terms{diff(at(r, v, sg), xs[m]), -diff(at(r, m, sg), xs[v])};
        for (std::size_t l = 0; l < n; ++l) {
            terms.push_back(at(r, m, l) * at(l, v, sg));
            terms.push_back(-(at(r, v, l) * at(l, m, sg)));
        }
        out[f] = Expr::sum(std::move(terms));
    });
    finish(reg, s, metricId, Role::Riemann, "R", {1, -1, -1, -1}, std::move(out));
    return s.id;
}

std::string calc_ricci_tensor(Registry& reg, const std::string& metricId) {
    if (auto id = existing(reg, metricId, Role::RicciTensor)) return *id;
    std::string rid = calc_riemann(reg, metricId);
    Stage s = begin(reg, metricId, Role::RicciTensor);
    const std::size_t n = s.dim;
    const Components& R = represent(reg, rid, {1, -1, -1, -1}, s.coords);
    Components out(n * n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<Expr> terms;
            for (std::size_t l = 0; l < n; ++l) terms.push_back(R[((l * n + m) * n + l) * n + v]);
            out[m * n + v] = Expr::sum(std::move(terms));
        }
    finish(reg, s, metricId, Role::RicciTensor, "R", {-1, -1}, std::move(out));
    return s.id;
}

std::string calc_ricci_scalar(Registry& reg, const std::string& metricId) {
    if (auto id = existing(reg, metricId, Role::RicciScalar)) return *id;
    std::string rid = calc_ricci_tensor(reg, metricId);
    Stage s = begin(reg, metricId, Role::RicciScalar);
    const std::size_t n = s.dim;
    const Components& R = represent(reg, rid, {-1, -1}, s.coords);
    const Components& gi = represent(reg, metricId, {1, 1}, s.coords);
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < n * n; ++i)
        if (!gi[i].is_zero_literal() && !R[i].is_zero_literal()) terms.push_back(gi[i] * R[i]);
    finish(reg, s, metricId, Role::RicciScalar, "R", {}, {Expr::sum(std::move(terms))});
    return s.id;
}

std::string calc_einstein(Registry& reg, const std::string& metricId) {
    if (auto id = existing(reg, metricId, Role::Einstein)) return *id;
    std::string tid = calc_ricci_tensor(reg, metricId);
    std::string sid = calc_ricci_scalar(reg, metricId);
    Stage s = begin(reg, metricId, Role::Einstein);
    const std::size_t n = s.dim;
    const Components& R = represent(reg, tid, {-1, -1}, s.coords);
    Expr scalar = represent(reg, sid, {}, s.coords)[0];
    const Components& g = represent(reg, metricId, {-1, -1}, s.coords);
    Components out(n * n);
    for (std::size_t i = 0; i < n * n; ++i) out[i] = R[i] - rational(1, 2) * g[i] * scalar;
    finish(reg, s, metricId, Role::Einstein, "G", {-1, -1}, std::move(out));
    return s.id;
}

Expr line_element(Registry& reg, const std::string& metricId, const std::optional<std::string>& coordsId) {
    std::string c = coordsId.value_or(reg.metric(metricId).defaultCoords);
    const Components& g = represent(reg, metricId, {-1, -1}, c);
    auto xs = coord_symbols(reg, c);
    const std::size_t n = xs.size();
    std::vector<Expr> terms;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            if (g[a * n + b].is_zero_literal()) continue;
            Expr term = g[a * n + b] * Expr::symbol("d" + xs[a]) * Expr::symbol("d" + xs[b]);
            terms.push_back(a == b ? term : Expr(2L) * term);
        }
    return simplify(Expr::sum(std::move(terms)), reg.options().assumptions);
}

Expr volume_element_squared(Registry& reg, const std::string& metricId, const std::optional<std::string>& coordsId) {
    std::string c = coordsId.value_or(reg.metric(metricId).defaultCoords);
    const Components& g = represent(reg, metricId, {-1, -1}, c);
    const Assumptions& a = reg.options().assumptions;
    return simplify(determinant(g, reg.dimension_of(c), a), a);
}

}  // namespace tc
