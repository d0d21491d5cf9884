#include "tensorcalc/transform.hpp"

#include <algorithm>

#include "tensorcalc/error.hpp"

namespace tc {

std::size_t ipow(std::size_t dim, std::size_t rank) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < rank; ++i) n *= dim;
    return n;
}

std::vector<std::size_t> unflatten(std::size_t flat, std::size_t dim, std::size_t rank) {
    std::vector<std::size_t> idx(rank);
    for (std::size_t i = rank; i-- > 0;) {
        idx[i] = flat % dim;
        flat /= dim;
    }
    return idx;
}

std::size_t flatten(const std::vector<std::size_t>& idx, std::size_t dim) {
    std::size_t f = 0;
    for (std::size_t i : idx) f = f * dim + i;
    return f;
}

Components apply_to_slot(const Components& t, std::size_t dim, std::size_t rank, std::size_t slot,
                         const Components& m) {
    std::size_t stride = ipow(dim, rank - slot - 1);
    Components out(t.size());
    for (std::size_t f = 0; f < t.size(); ++f) {
        std::size_t a = (f / stride) % dim;
        std::size_t base = f - a * stride;
        std::vector<Expr> terms;
        for (std::size_t b = 0; b < dim; ++b) {
            const Expr& mab = m[a * dim + b];
            const Expr& tb = t[base + b * stride];
            if (mab.is_zero_literal() || tb.is_zero_literal()) continue;
            terms.push_back(mab * tb);
        }
        out[f] = Expr::sum(std::move(terms));
    }
    return out;
}

namespace {

Components transpose(const Components& m, std::size_t n) {
    Components t(m.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[j * n + i] = m[i * n + j];
    return t;
}

Components minor_of(const Components& m, std::size_t n, std::size_t row, std::size_t col) {
    Components out;
    out.reserve((n - 1) * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (j != col) out.push_back(m[i * n + j]);
    }
    return out;
}

// Laplace expansion along the row with the most zeros, unsimplified.
Expr laplace(const Components& m, std::size_t n) {
    if (n == 0) return Expr(1L);
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    std::size_t best = 0, bestZeros = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t z = 0;
        for (std::size_t j = 0; j < n; ++j) z += m[i * n + j].is_zero_literal();
        if (z > bestZeros) best = i, bestZeros = z;
    }
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < n; ++j) {
        const Expr& e = m[best * n + j];
        if (e.is_zero_literal()) continue;
        Expr sub = laplace(minor_of(m, n, best, j), n - 1);
        if (sub.is_zero_literal()) continue;
        Expr term = e * sub;
        terms.push_back((best + j) % 2 ? -term : term);
    }
    return Expr::sum(std::move(terms));
}

bool vanishes(const Expr& e, const Assumptions& a) {
    if (e.is_number()) return e.is_zero_literal();
    try {
        return is_zero(e, a);
    } catch (const Error&) {
        return false;
    }
}

// Gauss-Jordan elimination on [m | rhs] with zero-tested pivots.
bool gauss_jordan(Components m, Components& rhs, std::size_t n, std::size_t cols, const Assumptions& a, Expr* det) {
    Expr d(1L);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = n;
        for (std::size_t r = c; r < n; ++r)
            if (!vanishes(m[r * n + c], a)) {
                p = r;
                break;
            }
        if (p == n) return false;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[p * n + j], m[c * n + j]);
            for (std::size_t j = 0; j < cols; ++j) std::swap(rhs[p * cols + j], rhs[c * cols + j]);
            d = -d;
        }
        Expr piv = m[c * n + c];
        d = simplify(d * piv, a);
        Expr inv = simplify(Expr::power(piv, Expr(-1L)), a);
        for (std::size_t j = 0; j < n; ++j) m[c * n + j] = simplify(m[c * n + j] * inv, a);
        for (std::size_t j = 0; j < cols; ++j) rhs[c * cols + j] = simplify(rhs[c * cols + j] * inv, a);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            Expr f = m[r * n + c];
            if (f.is_zero_literal()) continue;
            for (std::size_t j = 0; j < n; ++j) m[r * n + j] = simplify(m[r * n + j] - f * m[c * n + j], a);
            for (std::size_t j = 0; j < cols; ++j)
                rhs[r * cols + j] = simplify(rhs[r * cols + j] - f * rhs[c * cols + j], a);
        }
    }
    if (det) *det = d;
    return true;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void check_config(const TensorObject& obj, const IndexConfig& indices) {
    for (int s : indices)
        if (s != 1 && s != -1) throw Error(Errc::InvalidArgument, "index configuration entries must be 1 or -1");
    if (indices.size() != obj.rank())
        throw Error(Errc::RankMismatch, "the tensor " + quoted(obj.id) + " has rank " + std::to_string(obj.rank()) +
                                            ", but the index configuration has " + std::to_string(indices.size()) +
                                            " slots");
}

Components represent_copy(Registry& reg, const std::string& id, const IndexConfig& indices,
                          const std::string& coordsId);

Components identity(std::size_t n) {
    Components d(n * n, Expr(0L));
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = Expr(1L);
    return d;
}

// Cached representation in `coordsId` whose index configuration differs from
// `indices` in the fewest slots.
const Components* closest_in(const TensorObject& obj, const IndexConfig& indices, const std::string& coordsId,
                             IndexConfig* found) {
    const Components* best = nullptr;
    std::size_t bestDiff = 0;
    for (const auto& [key, comps] : obj.reps) {
        if (key.coords != coordsId) continue;
        std::size_t diff = 0;
        for (std::size_t i = 0; i < indices.size(); ++i) diff += key.indices[i] != indices[i];
        if (!best || diff < bestDiff) {
            best = &comps;
            bestDiff = diff;
            *found = key.indices;
        }
    }
    return best;
}

// Raises/lowers slots of `t` from `from` to `to` in coordsId.
Components adjust_indices(Registry& reg, const TensorObject& obj, Components t, const IndexConfig& from,
                          const IndexConfig& to, const std::string& coordsId) {
    if (from == to) return t;
    if (obj.metric.empty())
        throw Error(Errc::RoleForbidden, "the tensor " + quoted(obj.id) + " has no metric to raise or lower indices");
    std::size_t dim = reg.dimension_of(coordsId);
    std::string metricId = obj.metric;
    for (std::size_t s = 0; s < to.size(); ++s) {
        if (from[s] == to[s]) continue;
        Components g = represent_copy(reg, metricId, to[s] < 0 ? IndexConfig{-1, -1} : IndexConfig{1, 1}, coordsId);
        t = apply_to_slot(t, dim, to.size(), s, g);
        reg.simplify_all(t, false);
    }
    return t;
}

// Chooses a coordinate system holding a cached representation with a direct
// transformation edge to coordsId: default coords first, then cached
// representations in insertion order.
std::string transform_source(const Registry& reg, const TensorObject& obj, const std::string& coordsId) {
    std::vector<std::string> candidates{obj.defaultCoords};
    for (const auto& [key, comps] : obj.reps) candidates.push_back(key.coords);
    for (const auto& c : candidates) {
        if (c == coordsId) continue;
        bool cached = std::any_of(obj.reps.begin(), obj.reps.end(), [&](const auto& r) { return r.first.coords == c; });
        if (cached && reg.coords(c).transformation_to(coordsId)) return c;
    }
    throw Error(Errc::NoTransformPath, "no coordinate transformation to " + quoted(coordsId) +
                                           " is defined from any coordinate system in which " + quoted(obj.id) +
                                           " is known");
}

// Transforms a representation from source to target coordinates, tensorially.
Components transform_components(Registry& reg, Components t, const IndexConfig& indices,
                                const CoordTransformation& tr, std::size_t dim) {
    std::vector<SubstitutionRule> rules;
    for (const auto& [sym, e] : tr.rules) rules.push_back(SubstitutionRule::replace(Expr::symbol(sym), e));
    for (auto& c : t) c = substitute(c, rules);
    Components lowerMap = transpose(tr.jacobians.J, dim);
    for (std::size_t s = 0; s < indices.size(); ++s) {
        t = apply_to_slot(t, dim, indices.size(), s, indices[s] > 0 ? tr.jacobians.Jinv : lowerMap);
        reg.simplify_all(t, false);
    }
    return t;
}

const Components& store(Registry& reg, const std::string& id, const IndexConfig& indices, const std::string& coordsId,
                        Components c) {
    TensorObject& obj = reg.get_mut(id);
    obj.store(indices, coordsId, std::move(c));
    return *obj.find(indices, coordsId);
}

// The representation in coordsId, coordinate-transformed if needed, with
// whatever index configuration is cheapest to obtain.
Components in_coords(Registry& reg, const std::string& id, const IndexConfig& want, const std::string& coordsId,
                     IndexConfig* got) {
    const TensorObject& obj = reg.get(id);
    if (const Components* c = closest_in(obj, want, coordsId, got)) return *c;
    std::string src = transform_source(reg, obj, coordsId);
    IndexConfig srcIdx;
    Components srcRep = *closest_in(obj, want, src, &srcIdx);
    const CoordTransformation& tr = *reg.coords(src).transformation_to(coordsId);
    Components t = transform_components(reg, std::move(srcRep), srcIdx, tr, reg.dimension_of(coordsId));
    reg.simplify_all(t);
    *got = srcIdx;
    return store(reg, id, srcIdx, coordsId, std::move(t));
}

Components christoffel_in(Registry& reg, const std::string& id, const std::string& coordsId) {
    const IndexConfig base{1, -1, -1};
    {
        const TensorObject& obj = reg.get(id);
        if (const Components* c = obj.find(base, coordsId)) return *c;
        IndexConfig got;
        if (const Components* c = closest_in(obj, base, coordsId, &got))
            return store(reg, id, base, coordsId, adjust_indices(reg, obj, *c, got, base, coordsId));
    }
    const TensorObject& obj = reg.get(id);
    std::string src = transform_source(reg, obj, coordsId);
    Components srcRep = represent_copy(reg, id, base, src);
    const CoordTransformation& tr = *reg.coords(src).transformation_to(coordsId);
    std::size_t dim = reg.dimension_of(coordsId);
    Components t = transform_components(reg, std::move(srcRep), base, tr, dim);
    // Inhomogeneous term Jinv[l'][l] d2[l][m'][n'].
    Components extra = apply_to_slot(tr.jacobians.d2, dim, 3, 0, tr.jacobians.Jinv);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!extra[i].is_zero_literal()) t[i] = t[i] + extra[i];
    reg.simplify_all(t);
    return store(reg, id, base, coordsId, std::move(t));
}

Components represent_copy(Registry& reg, const std::string& id, const IndexConfig& indices,
                          const std::string& coordsId) {
    return represent(reg, id, indices, coordsId);
}

// Metrics always transform their all-lower representation.
Components metric_lower(Registry& reg, const std::string& id, const std::string& coordsId) {
    const IndexConfig lower{-1, -1};
    const TensorObject& obj = reg.get(id);
    if (const Components* c = obj.find(lower, coordsId)) return *c;
    std::string src = transform_source(reg, obj, coordsId);
    Components g = represent_copy(reg, id, lower, src);
    const CoordTransformation& tr = *reg.coords(src).transformation_to(coordsId);
    Components t = transform_components(reg, std::move(g), lower, tr, reg.dimension_of(coordsId));
    reg.simplify_all(t);
    return store(reg, id, lower, coordsId, std::move(t));
}

}  // namespace

Expr determinant(const Components& m, std::size_t n, const Assumptions& a) {
    if (m.size() != n * n) throw Error(Errc::ShapeMismatch, "determinant needs a square matrix");
    if (n <= 4) return simplify(laplace(m, n), a);
    Components rhs;
    Expr det;
    if (!gauss_jordan(m, rhs, n, 0, a, &det)) return Expr(0L);
    return det;
}

Components invert_matrix(const Components& m, std::size_t n, const Assumptions& a) {
    if (m.size() != n * n) throw Error(Errc::ShapeMismatch, "inverse needs a square matrix");
    if (n <= 4) {
        Expr det = simplify(laplace(m, n), a);
        if (vanishes(det, a)) throw Error(Errc::Singular, "the matrix is not invertible");
        Expr inv = Expr::power(det, Expr(-1L));
        Components out(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Expr cof = n == 1 ? Expr(1L) : laplace(minor_of(m, n, i, j), n - 1);
                if ((i + j) % 2) cof = -cof;
                out[j * n + i] = cof.is_zero_literal() ? Expr(0L) : simplify(cof * inv, a);
            }
        return out;
    }
    Components rhs = identity(n);
    if (!gauss_jordan(m, rhs, n, n, a, nullptr)) throw Error(Errc::Singular, "the matrix is not invertible");
    return rhs;
}

Components invert_metric(const Components& g, std::size_t n, const Assumptions& a) {
    try {
        return invert_matrix(g, n, a);
    } catch (const Error& e) {
        if (e.code() == Errc::Singular) throw Error(Errc::Singular, "the metric is not invertible");
        throw;
    }
}

void add_coord_transformation(Registry& reg, const std::string& sourceId, const std::string& targetId,
                              const std::vector<CoordRule>& rules) {
    const TensorObject& src = reg.coords(sourceId);
    const TensorObject& tgt = reg.coords(targetId);
    std::size_t n = src.coordSymbols.size();
    if (tgt.coordSymbols.size() != n)
        throw Error(Errc::DimensionMismatch, "the coordinate systems " + quoted(sourceId) + " and " +
                                                 quoted(targetId) + " have different dimensions");
    if (sourceId == targetId) throw Error(Errc::InvalidArgument, "source and target coordinates are the same");
    std::vector<Expr> x;
    for (const auto& s : src.coordSymbols) x.push_back(Expr::symbol(s));
    CoordTransformation tr;
    for (const auto& [sym, e] : rules) {
        auto it = std::find(src.coordSymbols.begin(), src.coordSymbols.end(), sym);
        if (it == src.coordSymbols.end())
            throw Error(Errc::RuleTargetsNonSourceSymbol,
                        quoted(sym) + " is not a coordinate of " + quoted(sourceId));
        x[static_cast<std::size_t>(it - src.coordSymbols.begin())] = e;
        tr.rules.emplace_back(sym, e);
    }
    const Assumptions& a = reg.options().assumptions;
    Components J(n * n);
    reg.parallel_for(n * n, [&](std::size_t f) { J[f] = simplify(diff(x[f / n], tgt.coordSymbols[f % n]), a); });
    tr.jacobians.Jinv = invert_matrix(J, n, a);
    Components d2(n * n * n);
    reg.parallel_for(d2.size(), [&](std::size_t f) {
        d2[f] = simplify(diff(J[f / n], tgt.coordSymbols[f % n]), a);
    });
    tr.jacobians.J = std::move(J);
    tr.jacobians.d2 = std::move(d2);
    TensorObject& s = reg.get_mut(sourceId);
    for (auto& [target, existing] : s.transformations)
        if (target == targetId) {
            existing = std::move(tr);
            return;
        }
    s.transformations.emplace_back(targetId, std::move(tr));
}

const Components& represent(Registry& reg, const std::string& id, const IndexConfig& indices,
                            const std::string& coordsId) {
    const TensorObject& obj = reg.get(id);
    check_config(obj, indices);
    reg.coords(coordsId);
    if (const Components* c = obj.find(indices, coordsId)) return *c;
    switch (obj.role) {
    case Role::Coordinates:
        throw Error(Errc::RoleForbidden, "coordinates do not transform like tensors; " + quoted(id) +
                                             " is only available as {1} in " + quoted(id));
    case Role::Metric: {
        const IndexConfig lower{-1, -1};
        Components g = metric_lower(reg, id, coordsId);
        std::size_t n = reg.dimension_of(coordsId);
        if (indices == lower) return *reg.get(id).find(lower, coordsId);
        if (indices == IndexConfig{1, 1})
            return store(reg, id, indices, coordsId, invert_metric(g, n, reg.options().assumptions));
        return store(reg, id, indices, coordsId, identity(n));
    }
    case Role::Christoffel: {
        Components base = christoffel_in(reg, id, coordsId);
        const IndexConfig b{1, -1, -1};
        if (indices == b) return *reg.get(id).find(b, coordsId);
        Components t = adjust_indices(reg, reg.get(id), std::move(base), b, indices, coordsId);
        reg.simplify_all(t);
        return store(reg, id, indices, coordsId, std::move(t));
    }
    default: {
        IndexConfig got;
        Components t = in_coords(reg, id, indices, coordsId, &got);
        if (got == indices) return *reg.get(id).find(indices, coordsId);
        t = adjust_indices(reg, reg.get(id), std::move(t), got, indices, coordsId);
        reg.simplify_all(t);
        return store(reg, id, indices, coordsId, std::move(t));
    }
    }
}

}  // namespace tc
