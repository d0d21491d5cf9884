#include "tensorcalc/registry.hpp"

#include <algorithm>
#include <set>

#include "parallel.hpp"
#include "tensorcalc/error.hpp"
#include "tensorcalc/transform.hpp"

namespace tc {

const char* const kDefaultIndexLetters = "μνρσκλαβγδεζηθικξπτυφχψω";
const char* const kFormatVersion = "1.0";
const char* const kPlaceholderSymbol = "□";
const char* const kDefaultCurveParameter = "λ";

namespace {

const std::pair<Role, const char*> kRoleNames[] = {
    {Role::Coordinates, "Coordinates"},
    {Role::Metric, "Metric"},
    {Role::Tensor, "Tensor"},
    {Role::Christoffel, "Christoffel"},
    {Role::Riemann, "Riemann"},
    {Role::RicciTensor, "RicciTensor"},
    {Role::RicciScalar, "RicciScalar"},
    {Role::Einstein, "Einstein"},
    {Role::Lagrangian, "Lagrangian"},
    {Role::GeodesicFromLagrangian, "GeodesicFromLagrangian"},
    {Role::GeodesicFromChristoffel, "GeodesicFromChristoffel"},
    {Role::Temporary, "Temporary"},
};

const Role kDerivedRoles[] = {
    Role::Christoffel, Role::Riemann,    Role::RicciTensor,            Role::RicciScalar,
    Role::Einstein,    Role::Lagrangian, Role::GeodesicFromLagrangian, Role::GeodesicFromChristoffel,
};

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void check_indices(const IndexConfig& c) {
    for (int s : c)
        if (s != 1 && s != -1) throw Error(Errc::InvalidArgument, "index configuration entries must be 1 or -1");
}

}  // namespace

std::string role_name(Role r) {
    for (const auto& [role, name] : kRoleNames)
        if (role == r) return name;
    return "Tensor";
}

Role role_from_name(const std::string& name) {
    for (const auto& [role, n] : kRoleNames)
        if (name == n) return role;
    throw Error(Errc::SchemaError, "unknown role " + quoted(name));
}

std::string index_config_text(const IndexConfig& c) {
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + std::to_string(c[i]);
    return s + "}";
}

std::string derived_id(const std::string& metricId, Role role) { return metricId + role_name(role); }

const Components* TensorObject::find(const IndexConfig& indices, const std::string& coords) const {
    for (const auto& [key, comps] : reps)
        if (key.indices == indices && key.coords == coords) return &comps;
    return nullptr;
}

void TensorObject::store(const IndexConfig& indices, const std::string& coords, Components c) {
    for (auto& [key, comps] : reps)
        if (key.indices == indices && key.coords == coords) {
            comps = std::move(c);
            return;
        }
    reps.emplace_back(RepKey{indices, coords}, std::move(c));
}

const CoordTransformation* TensorObject::transformation_to(const std::string& target) const {
    for (const auto& [id, tr] : transformations)
        if (id == target) return &tr;
    return nullptr;
}

Registry::Registry() { options_.indexLetters = kDefaultIndexLetters; }

Registry::~Registry() = default;

// ---- creation

void Registry::check_new_id(const std::string& id, bool allowReplace) {
    if (id.empty()) throw Error(Errc::InvalidArgument, "tensor IDs must be non-empty");
    if (id[0] == '$') throw Error(Errc::ReservedId, "tensor IDs may not start with \"$\": " + quoted(id));
    if (!exists(id)) return;
    if (!allowReplace || !options_.allowOverwrite)
        throw Error(Errc::DuplicateId, "A tensor with the ID " + quoted(id) +
                                           " already exists. Delete it first or enable overwriting.");
    notify("Overwriting the tensor " + quoted(id) + ".");
}

void Registry::reserve(const std::string& sym) {
    auto& r = options_.reservedSymbols;
    if (std::find(r.begin(), r.end(), sym) == r.end()) r.push_back(sym);
}

std::string Registry::new_coordinates(const std::string& id, const std::vector<std::string>& symbols) {
    if (symbols.empty()) throw Error(Errc::EmptySymbols, "a coordinate system needs at least one symbol");
    std::set<std::string> seen;
    for (const auto& s : symbols) {
        if (s.empty()) throw Error(Errc::InvalidArgument, "empty coordinate symbol");
        if (!seen.insert(s).second) throw Error(Errc::InvalidArgument, "repeated coordinate symbol " + quoted(s));
        if (s == options_.curveParameter)
            throw Error(Errc::CollidesWithCoordinate, "coordinate " + quoted(s) + " is the curve parameter");
    }
    check_new_id(id, true);
    TensorObject obj;
    obj.id = id;
    obj.role = Role::Coordinates;
    obj.symbol = "x";
    obj.defaultIndices = {1};
    obj.defaultCoords = id;
    obj.coordSymbols = symbols;
    Components c;
    for (const auto& s : symbols) c.push_back(Expr::symbol(s));
    obj.store({1}, id, std::move(c));
    put(std::move(obj));
    for (const auto& s : symbols) reserve(s);
    return id;
}

std::string Registry::new_metric(const std::string& id, const std::string& coordsId, const Components& lower,
                                 const std::string& symbol) {
    std::size_t n = dimension_of(coordsId);
    if (lower.size() != n * n)
        throw Error(Errc::ShapeMismatch, "the metric must be a " + std::to_string(n) + "x" + std::to_string(n) +
                                             " matrix");
    const Assumptions& a = options_.assumptions;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!is_zero(simplify(lower[i * n + j] - lower[j * n + i], a), a))
                throw Error(Errc::NotSymmetric, "the metric components must be a symmetric matrix");
    Components g = lower;
    simplify_all(g);
    Expr det = determinant(g, n, a);
    if (det.is_zero_literal() || is_zero(det, a))
        throw Error(Errc::Singular, "the metric components must be an invertible matrix");
    bool replacing = exists(id);
    check_new_id(id, true);
    if (replacing) {
        notify("All curvature tensors previously calculated from the metric being overwritten will be deleted.");
        delete_derived(id);
    }
    TensorObject obj;
    obj.id = id;
    obj.role = Role::Metric;
    obj.symbol = symbol.empty() ? "g" : symbol;
    obj.defaultIndices = {-1, -1};
    obj.defaultCoords = coordsId;
    obj.store({-1, -1}, coordsId, std::move(g));
    put(std::move(obj));
    return id;
}

std::string Registry::new_tensor(const std::string& id, const std::string& metricId, const std::string& coordsId,
                                 const IndexConfig& indices, const Components& components,
                                 const std::string& symbol) {
    const TensorObject& m = metric(metricId);
    std::string cs = coordsId.empty() ? m.defaultCoords : coordsId;
    std::size_t n = dimension_of(cs);
    check_indices(indices);
    if (components.size() != ipow(n, indices.size()))
        throw Error(Errc::ShapeMismatch, "expected " + std::to_string(ipow(n, indices.size())) +
                                             " components for rank " + std::to_string(indices.size()) +
                                             " in dimension " + std::to_string(n) + ", got " +
                                             std::to_string(components.size()));
    check_new_id(id, true);
    TensorObject obj;
    obj.id = id;
    obj.role = Role::Tensor;
    obj.symbol = symbol.empty() ? kPlaceholderSymbol : symbol;
    obj.metric = metricId;
    obj.defaultIndices = indices;
    obj.defaultCoords = cs;
    Components c = components;
    simplify_all(c);
    obj.store(indices, cs, std::move(c));
    put(std::move(obj));
    return id;
}

std::string Registry::put(TensorObject obj) {
    std::string id = obj.id;
    auto it = objects_.find(id);
    if (it == objects_.end()) {
        objects_.emplace(id, std::move(obj));
        order_.push_back(id);
    } else {
        it->second = std::move(obj);
    }
    return id;
}

void Registry::claim_id(const std::string& id, bool force) {
    if (force && exists(id)) {
        notify("Overwriting the tensor " + quoted(id) + ".");
    } else {
        check_new_id(id, true);
    }
    if (!exists(id)) return;
    Role r = get(id).role;
    if (r == Role::Coordinates || r == Role::Metric) remove(id);
}

// ---- lookup

bool Registry::exists(const std::string& id) const { return objects_.count(id) > 0; }

const TensorObject& Registry::get(const std::string& id) const {
    auto it = objects_.find(id);
    if (it == objects_.end()) throw Error(Errc::UnknownId, "The tensor " + quoted(id) + " does not exist.");
    return it->second;
}

TensorObject& Registry::get_mut(const std::string& id) {
    auto it = objects_.find(id);
    if (it == objects_.end()) throw Error(Errc::UnknownId, "The tensor " + quoted(id) + " does not exist.");
    return it->second;
}

const TensorObject& Registry::coords(const std::string& coordsId) const {
    auto it = objects_.find(coordsId);
    if (it == objects_.end() || it->second.role != Role::Coordinates)
        throw Error(Errc::UnknownCoords, "The coordinate system " + quoted(coordsId) + " does not exist.");
    return it->second;
}

const TensorObject& Registry::metric(const std::string& metricId) const {
    auto it = objects_.find(metricId);
    if (it == objects_.end() || it->second.role != Role::Metric)
        throw Error(Errc::UnknownMetric, "The metric " + quoted(metricId) + " does not exist.");
    return it->second;
}

std::size_t Registry::dimension_of(const std::string& coordsId) const { return coords(coordsId).coordSymbols.size(); }

// ---- editing

void Registry::erase_entry(const std::string& id) {
    objects_.erase(id);
    order_.erase(std::remove(order_.begin(), order_.end(), id), order_.end());
}

void Registry::remove(const std::string& id) {
    const TensorObject& obj = get(id);
    for (const auto& other : order_) {
        if (other == id) continue;
        const TensorObject& o = objects_.at(other);
        if (obj.role == Role::Coordinates && o.defaultCoords == id)
            throw Error(Errc::InUseAsCoords,
                        "The coordinate system " + quoted(id) +
                            " cannot be deleted, as it is the default coordinate system of the tensor " +
                            quoted(other) + ". To delete the coordinate system, first change the default "
                                            "coordinate system of " +
                            quoted(other) + " and any other relevant tensors.");
        if (obj.role == Role::Metric && o.metric == id)
            throw Error(Errc::InUseAsMetric, "The metric " + quoted(id) +
                                                 " cannot be deleted, as it has been used to define the tensor " +
                                                 quoted(other) + ". To delete the metric, first delete " +
                                                 quoted(other) + " and any other tensors defined using this metric.");
    }
    if (obj.role == Role::Coordinates) {
        for (const auto& [oid, o] : objects_) {
            if (oid == id || o.reps.empty()) continue;
            bool elsewhere = std::any_of(o.reps.begin(), o.reps.end(), [&](const auto& r) { return r.first.coords != id; });
            if (!elsewhere)
                throw Error(Errc::InUseAsCoords, "The coordinate system " + quoted(id) +
                                                     " cannot be deleted, as the components of the tensor " +
                                                     quoted(oid) + " are only known in it.");
        }
        for (auto& [oid, o] : objects_) {
            if (oid == id) continue;
            std::erase_if(o.reps, [&](const auto& r) { return r.first.coords == id; });
            std::erase_if(o.transformations, [&](const auto& t) { return t.first == id; });
        }
    }
    erase_entry(id);
}

void Registry::delete_derived(const std::string& metricId) {
    for (Role r : kDerivedRoles) {
        std::string did = derived_id(metricId, r);
        auto it = objects_.find(did);
        if (it != objects_.end() && it->second.role == r) erase_entry(did);
    }
}

std::string Registry::change_id(const std::string& oldId, const std::string& newId) {
    get(oldId);
    if (newId == oldId) return newId;
    if (newId.empty()) throw Error(Errc::InvalidArgument, "tensor IDs must be non-empty");
    if (newId[0] == '$') throw Error(Errc::ReservedId, "tensor IDs may not start with \"$\": " + quoted(newId));
    if (exists(newId)) throw Error(Errc::DuplicateId, "A tensor with the ID " + quoted(newId) + " already exists.");
    auto node = objects_.extract(oldId);
    node.key() = newId;
    node.mapped().id = newId;
    objects_.insert(std::move(node));
    std::replace(order_.begin(), order_.end(), oldId, newId);
    for (auto& [oid, o] : objects_) {
        if (o.metric == oldId) o.metric = newId;
        if (o.defaultCoords == oldId) o.defaultCoords = newId;
        for (auto& [key, comps] : o.reps)
            if (key.coords == oldId) key.coords = newId;
        for (auto& [target, tr] : o.transformations)
            if (target == oldId) target = newId;
    }
    return newId;
}

std::string Registry::change_symbol(const std::string& id, const std::string& symbol) {
    get_mut(id).symbol = symbol.empty() ? kPlaceholderSymbol : symbol;
    return id;
}

std::string Registry::change_default_indices(const std::string& id, const IndexConfig& indices) {
    TensorObject& obj = get_mut(id);
    if (obj.role == Role::Coordinates || obj.role == Role::Metric)
        throw Error(Errc::RoleForbidden, "the default indices of a " + role_name(obj.role) +
                                             " object cannot be changed");
    check_indices(indices);
    if (indices.size() != obj.rank())
        throw Error(Errc::RankMismatch, "the tensor " + quoted(id) + " has rank " + std::to_string(obj.rank()) +
                                            ", but the index configuration has " + std::to_string(indices.size()) +
                                            " slots");
    obj.defaultIndices = indices;
    return id;
}

std::string Registry::change_default_coords(const std::string& id, const std::string& coordsId) {
    TensorObject& obj = get_mut(id);
    if (obj.role == Role::Coordinates)
        throw Error(Errc::RoleForbidden, "the default coordinates of a coordinate system cannot be changed");
    if (dimension_of(coordsId) != dimension_of(obj.defaultCoords))
        throw Error(Errc::DimensionMismatch, "the coordinate system " + quoted(coordsId) +
                                                 " has a different dimension");
    obj.defaultCoords = coordsId;
    return id;
}

void Registry::clear_cache(const std::string& id) {
    TensorObject& obj = get_mut(id);
    if (obj.reps.size() > 1) obj.reps.resize(1);
}

// ---- settings

const std::vector<std::string>& Registry::set_reserved_symbols(const std::vector<std::string>& syms) {
    for (const auto& s : syms) reserve(s);
    return options_.reservedSymbols;
}

const Assumptions& Registry::add_assumption(const Predicate& p) {
    options_.assumptions.add(p);
    return options_.assumptions;
}

const Assumptions& Registry::clear_assumptions() {
    options_.assumptions.predicates.clear();
    return options_.assumptions;
}

const Assumptions& Registry::set_assume_real(bool on) {
    options_.assumptions.assumeReal = on;
    return options_.assumptions;
}

const std::string& Registry::set_index_letters(const std::string& letters) {
    options_.indexLetters = letters.empty() ? kDefaultIndexLetters : letters;
    return options_.indexLetters;
}

bool Registry::set_allow_overwrite(bool on) { return options_.allowOverwrite = on; }

bool Registry::set_parallelize(bool on) { return options_.parallelize = on; }

unsigned Registry::set_workers(unsigned n) {
    workers_ = n;
    pool_.reset();
    return workers();
}

unsigned Registry::workers() const { return workers_ ? workers_ : hardware_workers(); }

DisplayOpts Registry::display_opts() const {
    DisplayOpts d;
    d.suppressArgs.insert(options_.reservedSymbols.begin(), options_.reservedSymbols.end());
    d.curveParameter = options_.curveParameter;
    return d;
}

// ---- components

Components Registry::get_components(const std::string& id, std::optional<IndexConfig> indices,
                                    std::optional<std::string> coordsId) {
    const TensorObject& obj = get(id);
    if (!indices && !coordsId)
        notify("Using the default index configuration " + index_config_text(obj.defaultIndices) +
               " and the default coordinate system " + quoted(obj.defaultCoords) + ".");
    else if (!indices)
        notify("Using the default index configuration " + index_config_text(obj.defaultIndices) + ".");
    else if (!coordsId)
        notify("Using the default coordinate system " + quoted(obj.defaultCoords) + ".");
    IndexConfig ic = indices ? *indices : obj.defaultIndices;
    std::string cs = coordsId ? *coordsId : obj.defaultCoords;
    return represent(*this, id, ic, cs);
}

std::string Registry::simplify_tensor(const std::string& id) {
    TensorObject& obj = get_mut(id);
    for (auto& [key, comps] : obj.reps) simplify_all(comps);
    return id;
}

void Registry::parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) const {
    if (!options_.parallelize || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (!pool_) pool_ = std::make_unique<WorkerPool>(workers());
    pool_->parallel_for(n, fn);
}

void Registry::simplify_all(Components& c, bool zeroTest) const {
    const Assumptions& a = options_.assumptions;
    parallel_for(c.size(), [&](std::size_t i) {
        if (c[i].is_number()) return;
        Expr s = simplify(c[i], a);
        if (zeroTest && !s.is_number()) {
            try {
                if (is_zero(s, a)) s = Expr(0L);
            } catch (const Error&) {
            }
        }
        c[i] = s;
    });
}

// ---- info

InfoReport Registry::info(const std::optional<std::string>& id) const {
    InfoReport rep;
    rep.total = order_.size();
    std::string& s = rep.text;
    auto join = [](const std::vector<std::string>& v, const char* sep) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
        return out;
    };
    if (id) {
        const TensorObject& o = get(*id);
        s += "ID: " + o.id + "\n";
        s += "Symbol: " + o.symbol + "\n";
        s += "Role: " + role_name(o.role) + "\n";
        if (!o.metric.empty()) s += "Metric: " + o.metric + "\n";
        if (o.role != Role::Coordinates) s += "Default Coordinates: " + o.defaultCoords + "\n";
        s += "Default Indices: " + index_config_text(o.defaultIndices) + "\n";
        s += "Rank: " + std::to_string(o.rank()) + "\n";
        if (o.role == Role::Coordinates) {
            std::vector<std::string> users;
            for (const auto& other : order_)
                if (other != o.id && objects_.at(other).defaultCoords == o.id) users.push_back(other);
            s += "Default Coordinates For: " + join(users, ", ") + "\n";
        }
        if (o.role == Role::Metric) {
            std::vector<std::string> users;
            for (const auto& other : order_)
                if (objects_.at(other).metric == o.id) users.push_back(other);
            s += "Tensors Using This Metric: " + join(users, ", ") + "\n";
        }
        return rep;
    }
    std::vector<std::string> coordIds, metricIds;
    for (const auto& [oid, o] : objects_) {
        if (o.role == Role::Coordinates) coordIds.push_back(oid);
        if (o.role == Role::Metric) metricIds.push_back(oid);
    }
    s += "Total tensors created: " + std::to_string(rep.total) + "\n";
    s += "Coordinate Systems:\n";
    for (std::size_t i = 0; i < coordIds.size(); ++i) s += std::to_string(i + 1) + ". " + coordIds[i] + "\n";
    s += "Metrics:\n";
    for (std::size_t i = 0; i < metricIds.size(); ++i) {
        std::vector<std::string> users;
        for (const auto& other : order_)
            if (objects_.at(other).metric == metricIds[i]) users.push_back(other);
        s += std::to_string(i + 1) + ". " + metricIds[i] + " →" + (users.empty() ? "" : " " + join(users, " | ")) +
             "\n";
    }
    return rep;
}

void Registry::reset(std::vector<TensorObject> objects, SessionOptions options) {
    objects_.clear();
    order_.clear();
    options_ = std::move(options);
    for (auto& o : objects) put(std::move(o));
    pool_.reset();
}

}  // namespace tc
