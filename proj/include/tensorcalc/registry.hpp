#pragma once

// Session store of tensor objects keyed by ID, plus session-wide options.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tensorcalc/calculus.hpp"
#include "tensorcalc/expr.hpp"
#include "tensorcalc/simplify.hpp"
#include "tensorcalc/text.hpp"

namespace tc {

class WorkerPool;

enum class Role {
    Coordinates,
    Metric,
    Tensor,
    Christoffel,
    Riemann,
    RicciTensor,
    RicciScalar,
    Einstein,
    Lagrangian,
    GeodesicFromLagrangian,
    GeodesicFromChristoffel,
    Temporary,
};

std::string role_name(Role r);
Role role_from_name(const std::string& name);

// +1 upper, -1 lower, one entry per slot.
using IndexConfig = std::vector<int>;
// Dense row-major array of dim^rank entries.
using Components = std::vector<Expr>;

std::string index_config_text(const IndexConfig& c);

struct RepKey {
    IndexConfig indices;
    std::string coords;

    friend bool operator==(const RepKey& a, const RepKey& b) {
        return a.indices == b.indices && a.coords == b.coords;
    }
};

struct JacobianSet {
    Components J;     // J[mu][mu'] = d x^mu / d x^mu' (old w.r.t. new)
    Components Jinv;  // Jinv[mu'][mu] = d x^mu' / d x^mu
    Components d2;    // d2[l][mu'][nu'] = d^2 x^l / d x^mu' d x^nu'
};

struct CoordTransformation {
    std::vector<std::pair<std::string, Expr>> rules;  // source symbol -> expression in target symbols
    JacobianSet jacobians;
};

struct TensorObject {
    std::string id;
    Role role = Role::Tensor;
    std::string symbol;
    std::string metric;  // empty for coordinates and metrics
    IndexConfig defaultIndices;
    std::string defaultCoords;
    // Cached representations in insertion order.
    std::vector<std::pair<RepKey, Components>> reps;
    // Coordinates role only.
    std::vector<std::string> coordSymbols;
    std::vector<std::pair<std::string, CoordTransformation>> transformations;

    std::size_t rank() const { return defaultIndices.size(); }
    const Components* find(const IndexConfig& indices, const std::string& coords) const;
    void store(const IndexConfig& indices, const std::string& coords, Components c);
    const CoordTransformation* transformation_to(const std::string& target) const;
};

struct SessionOptions {
    std::string indexLetters;
    std::vector<std::string> reservedSymbols;
    Assumptions assumptions;
    bool allowOverwrite = false;
    bool parallelize = false;
    std::string curveParameter = "λ";
    std::string formatVersion = "1.0";

    friend bool operator==(const SessionOptions& a, const SessionOptions& b) = default;
};

extern const char* const kDefaultIndexLetters;
extern const char* const kFormatVersion;
extern const char* const kPlaceholderSymbol;
extern const char* const kDefaultCurveParameter;

// Derived-object IDs, e.g. derived_id("Schwarzschild", Role::Christoffel).
std::string derived_id(const std::string& metricId, Role role);

struct InfoReport {
    std::string text;
    std::size_t total = 0;
};

class Registry {
public:
    Registry();
    ~Registry();
    Registry(const Registry&) = delete;
    Registry& operator=(const Registry&) = delete;

    // ---- creation
    std::string new_coordinates(const std::string& id, const std::vector<std::string>& symbols);
    std::string new_metric(const std::string& id, const std::string& coordsId, const Components& lowerComponents,
                           const std::string& symbol = "g");
    std::string new_tensor(const std::string& id, const std::string& metricId, const std::string& coordsId,
                           const IndexConfig& indices, const Components& components,
                           const std::string& symbol = kPlaceholderSymbol);
    // Registers an already-built object (used by calc, curvature, geodesic, import).
    std::string put(TensorObject obj);
    // Validates `id` for a new object; with `force` an existing non-structural
    // object is replaced regardless of the overwrite setting.
    void claim_id(const std::string& id, bool force = false);

    // ---- lookup
    bool exists(const std::string& id) const;
    const TensorObject& get(const std::string& id) const;
    TensorObject& get_mut(const std::string& id);
    const std::vector<std::string>& ids() const { return order_; }
    std::size_t dimension_of(const std::string& coordsId) const;
    const TensorObject& coords(const std::string& coordsId) const;
    const TensorObject& metric(const std::string& metricId) const;

    // ---- editing
    void remove(const std::string& id);
    std::string change_id(const std::string& oldId, const std::string& newId);
    std::string change_symbol(const std::string& id, const std::string& symbol);
    std::string change_default_indices(const std::string& id, const IndexConfig& indices);
    std::string change_default_coords(const std::string& id, const std::string& coordsId);
    // Clears every cached representation except the defining one.
    void clear_cache(const std::string& id);

    // ---- settings
    const SessionOptions& options() const { return options_; }
    SessionOptions& options_mut() { return options_; }
    const std::vector<std::string>& set_reserved_symbols(const std::vector<std::string>& syms);
    const Assumptions& add_assumption(const Predicate& p);
    const Assumptions& clear_assumptions();
    const Assumptions& set_assume_real(bool on);
    const std::string& set_index_letters(const std::string& letters);  // empty restores the default
    bool set_allow_overwrite(bool on);
    bool set_parallelize(bool on);
    unsigned set_workers(unsigned n);  // 0 means all logical cores
    unsigned workers() const;
    const std::string& curve_parameter() const { return options_.curveParameter; }

    // Display options derived from the session (reserved-symbol argument suppression).
    DisplayOpts display_opts() const;

    // ---- components
    // Returns a copy of the requested representation; notifies when defaults are used.
    Components get_components(const std::string& id, std::optional<IndexConfig> indices = std::nullopt,
                              std::optional<std::string> coords = std::nullopt);
    std::string simplify_tensor(const std::string& id);

    // Simplifies every entry, in parallel when enabled; with zeroTest,
    // entries that vanish numerically become literal zeros.
    void simplify_all(Components& c, bool zeroTest = true) const;
    void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) const;

    InfoReport info(const std::optional<std::string>& id = std::nullopt) const;

    // Messages such as overwrite warnings and default-representation notices.
    std::function<void(const std::string&)> notify = [](const std::string&) {};

    // Replaces every object and option (used by import_all).
    void reset(std::vector<TensorObject> objects, SessionOptions options);

    // Instrumentation: number of Christoffel computations performed.
    std::size_t christoffelComputations = 0;

private:
    std::map<std::string, TensorObject> objects_;
    std::vector<std::string> order_;
    SessionOptions options_;
    unsigned workers_ = 0;
    mutable std::unique_ptr<WorkerPool> pool_;

    void check_new_id(const std::string& id, bool allowReplace);
    void erase_entry(const std::string& id);
    void delete_derived(const std::string& metricId);
    void reserve(const std::string& sym);
};

}  // namespace tc
