#include "tensorcalc/session_io.hpp"

#include <fstream>
#include <sstream>

#include "tensorcalc/error.hpp"
#include "tensorcalc/text.hpp"
#include "tensorcalc/transform.hpp"

namespace tc {

const char* const kOptionsKey = "$options";
const char* const kSessionExtension = ".ogre.json";

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(Errc::SchemaError, "invalid session data: " + msg); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema(std::string("missing field ") + key);
    return j.at(key);
}

std::string str_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) schema(std::string(key) + " must be a string");
    return v.get<std::string>();
}

IndexConfig indices_from(const Json& j) {
    if (!j.is_array()) schema("index configurations must be arrays");
    IndexConfig c;
    for (const auto& v : j) {
        if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) schema("index entries must be 1 or -1");
        c.push_back(v.get<int>());
    }
    return c;
}

Json components_to_json(const Components& c) {
    Json a = Json::array();
    for (const auto& e : c) a.push_back(expr_to_json(e));
    return a;
}

Components components_from(const Json& j) {
    if (!j.is_array()) schema("components must be arrays");
    Components c;
    for (const auto& v : j) c.push_back(expr_from_json(v));
    return c;
}

const std::pair<Relation, const char*> kRelations[] = {
    {Relation::Ge, ">="}, {Relation::Gt, ">"}, {Relation::Le, "<="}, {Relation::Lt, "<"}, {Relation::Eq, "=="},
};

void check_version(const Json& j) {
    std::string v = str_field(j, "FormatVersion");
    std::string major = v.substr(0, v.find('.'));
    std::string ours = std::string(kFormatVersion).substr(0, std::string(kFormatVersion).find('.'));
    if (major != ours) throw Error(Errc::VersionUnsupported, "unsupported session format version " + v);
}

Json record(const TensorObject& o) {
    Json r;
    r["Role"] = role_name(o.role);
    r["Symbol"] = o.symbol;
    if (!o.metric.empty()) r["Metric"] = o.metric;
    r["DefaultIndices"] = o.defaultIndices;
    r["DefaultCoords"] = o.defaultCoords;
    if (o.role == Role::Coordinates) r["CoordSymbols"] = o.coordSymbols;
    Json comps = Json::object();
    for (const auto& [key, c] : o.reps) comps[Json::array({key.indices, key.coords}).dump()] = components_to_json(c);
    r["Components"] = comps;
    if (o.role == Role::Coordinates) {
        Json trs = Json::object();
        for (const auto& [target, tr] : o.transformations) {
            Json rules = Json::object();
            for (const auto& [sym, e] : tr.rules) rules[sym] = expr_to_json(e);
            trs[target] = Json{{"Rules", rules},
                               {"Jacobian", components_to_json(tr.jacobians.J)},
                               {"InverseJacobian", components_to_json(tr.jacobians.Jinv)},
                               {"ChristoffelJacobian", components_to_json(tr.jacobians.d2)}};
        }
        r["CoordTransformations"] = trs;
    }
    r["FormatVersion"] = kFormatVersion;
    return r;
}

TensorObject object_from(const std::string& id, const Json& r) {
    if (!r.is_object()) schema("the record of " + id + " must be an object");
    check_version(r);
    TensorObject o;
    o.id = id;
    o.role = role_from_name(str_field(r, "Role"));
    o.symbol = str_field(r, "Symbol");
    if (r.contains("Metric")) o.metric = str_field(r, "Metric");
    o.defaultIndices = indices_from(field(r, "DefaultIndices"));
    o.defaultCoords = str_field(r, "DefaultCoords");
    if (o.role == Role::Coordinates) {
        const Json& syms = field(r, "CoordSymbols");
        if (!syms.is_array() || syms.empty()) schema("CoordSymbols must be a non-empty array");
        for (const auto& s : syms) {
            if (!s.is_string()) schema("coordinate symbols must be strings");
            o.coordSymbols.push_back(s.get<std::string>());
        }
    }
    const Json& comps = field(r, "Components");
    if (!comps.is_object() || comps.empty()) schema(id + " has no components");
    for (const auto& [key, value] : comps.items()) {
        Json k;
        try {
            k = Json::parse(key);
        } catch (const Json::parse_error&) {
            schema("malformed component key " + key);
        }
        if (!k.is_array() || k.size() != 2 || !k[1].is_string()) schema("malformed component key " + key);
        o.store(indices_from(k[0]), k[1].get<std::string>(), components_from(value));
    }
    if (o.role == Role::Coordinates && r.contains("CoordTransformations")) {
        for (const auto& [target, t] : r.at("CoordTransformations").items()) {
            CoordTransformation tr;
            const Json& rules = field(t, "Rules");
            if (!rules.is_object()) schema("transformation rules must be an object");
            for (const auto& [sym, e] : rules.items()) tr.rules.emplace_back(sym, expr_from_json(e));
            tr.jacobians.J = components_from(field(t, "Jacobian"));
            tr.jacobians.Jinv = components_from(field(t, "InverseJacobian"));
            tr.jacobians.d2 = components_from(field(t, "ChristoffelJacobian"));
            o.transformations.emplace_back(target, std::move(tr));
        }
    }
    return o;
}

SessionOptions options_from(const Json& j) {
    check_version(j);
    SessionOptions o;
    o.curveParameter = str_field(j, "CurveParameter");
    o.indexLetters = str_field(j, "IndexLetters");
    const Json& par = field(j, "Parallelize");
    const Json& ow = field(j, "AllowOverwrite");
    if (!par.is_boolean() || !ow.is_boolean()) schema("Parallelize and AllowOverwrite must be booleans");
    o.parallelize = par.get<bool>();
    o.allowOverwrite = ow.get<bool>();
    const Json& reserved = field(j, "ReservedSymbols");
    if (!reserved.is_array()) schema("ReservedSymbols must be an array");
    for (const auto& s : reserved) {
        if (!s.is_string()) schema("reserved symbols must be strings");
        o.reservedSymbols.push_back(s.get<std::string>());
    }
    const Json& as = field(j, "SimplifyAssumptions");
    const Json& real = field(as, "AssumeReal");
    if (!real.is_boolean()) schema("AssumeReal must be a boolean");
    o.assumptions.assumeReal = real.get<bool>();
    const Json& preds = field(as, "Predicates");
    if (!preds.is_array()) schema("Predicates must be an array");
    for (const auto& p : preds) {
        Predicate pr;
        pr.symbol = str_field(p, "Symbol");
        std::string rel = str_field(p, "Relation");
        bool found = false;
        for (const auto& [r, text] : kRelations)
            if (rel == text) {
                pr.rel = r;
                found = true;
            }
        if (!found) schema("unknown relation " + rel);
        pr.bound = expr_from_json(field(p, "Bound"));
        o.assumptions.predicates.push_back(pr);
    }
    o.formatVersion = str_field(j, "FormatVersion");
    return o;
}

[[noreturn]] void dangling(const std::string& id, const std::string& what, const std::string& ref) {
    throw Error(Errc::DanglingReference,
                "the tensor \"" + id + "\" refers to the " + what + " \"" + ref + "\", which is not present");
}

}  // namespace

// ---- expressions

Json expr_to_json(const Expr& e) {
    auto with_args = [&](const char* tag) {
        Json a = Json::array({tag});
        for (const auto& x : e.args()) a.push_back(expr_to_json(x));
        return a;
    };
    switch (e.kind()) {
    case Kind::Symbol: return Json::array({"Symbol", e.name()});
    case Kind::Integer: return Json::array({"Integer", e.value().get_str()});
    case Kind::Rational: return Json::array({"Rational", e.value().get_str()});
    case Kind::Sum: return with_args("Sum");
    case Kind::Product: return with_args("Product");
    case Kind::Power: return with_args("Power");
    case Kind::Abs: return with_args("Abs");
    case Kind::FuncApp: {
        Json a = Json::array({"Function", e.name()});
        for (const auto& x : e.args()) a.push_back(expr_to_json(x));
        return a;
    }
    case Kind::Deriv: {
        Json a = Json::array({"Derivative", e.name(), e.orders()});
        for (const auto& x : e.args()) a.push_back(expr_to_json(x));
        return a;
    }
    case Kind::DeferredD: return Json::array({"DeferredDerivative", e.name(), e.orders()[0], expr_to_json(e[0])});
    }
    return Json();
}

Expr expr_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_string()) schema("malformed expression");
    const std::string tag = j[0].get<std::string>();
    auto text = [&](std::size_t i) {
        if (j.size() <= i || !j[i].is_string()) schema("malformed " + tag + " expression");
        return j[i].get<std::string>();
    };
    auto args = [&](std::size_t from) {
        std::vector<Expr> out;
        for (std::size_t i = from; i < j.size(); ++i) out.push_back(expr_from_json(j[i]));
        return out;
    };
    try {
        if (tag == "Symbol") return Expr::symbol(text(1));
        if (tag == "Integer") return Expr(Rational(mpz_class(text(1))));
        if (tag == "Rational") {
            Rational q(text(1));
            q.canonicalize();
            return Expr(q);
        }
    } catch (const std::invalid_argument&) {
        schema("malformed number");
    }
    if (tag == "Sum") return Expr::sum(args(1));
    if (tag == "Product") return Expr::product(args(1));
    if (tag == "Power" && j.size() == 3) return Expr::power(expr_from_json(j[1]), expr_from_json(j[2]));
    if (tag == "Abs" && j.size() == 2) return Expr::abs(expr_from_json(j[1]));
    if (tag == "Function") return Expr::func(text(1), args(2));
    if (tag == "Derivative" && j.size() >= 3 && j[2].is_array()) {
        std::vector<int> orders;
        for (const auto& o : j[2]) {
            if (!o.is_number_integer()) schema("derivative orders must be integers");
            orders.push_back(o.get<int>());
        }
        return Expr::deriv(text(1), orders, args(3));
    }
    if (tag == "DeferredDerivative" && j.size() == 4 && j[2].is_number_integer())
        return Expr::deferred(expr_from_json(j[3]), text(1), j[2].get<int>());
    schema("unknown expression tag " + tag);
}

// ---- export

Json export_tensor(const Registry& reg, const std::string& id) {
    Json out;
    out[id] = record(reg.get(id));
    return out;
}

Json export_all(const Registry& reg) {
    const SessionOptions& o = reg.options();
    Json preds = Json::array();
    for (const auto& p : o.assumptions.predicates) {
        const char* rel = ">=";
        for (const auto& [r, text] : kRelations)
            if (r == p.rel) rel = text;
        preds.push_back(Json{{"Symbol", p.symbol}, {"Relation", rel}, {"Bound", expr_to_json(p.bound)}});
    }
    Json out;
    out[kOptionsKey] = Json{{"CurveParameter", o.curveParameter},
                            {"IndexLetters", o.indexLetters},
                            {"Parallelize", o.parallelize},
                            {"AllowOverwrite", o.allowOverwrite},
                            {"ReservedSymbols", o.reservedSymbols},
                            {"SimplifyAssumptions", Json{{"AssumeReal", o.assumptions.assumeReal}, {"Predicates", preds}}},
                            {"FormatVersion", kFormatVersion}};
    for (const auto& id : reg.ids()) out[id] = record(reg.get(id));
    return out;
}

void export_all_to_file(const Registry& reg, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::FileWriteError, "cannot write " + path);
    f << export_all(reg).dump(2) << '\n';
    if (!f) throw Error(Errc::FileWriteError, "cannot write " + path);
}

// ---- import

void import_all(Registry& reg, const Json& session) {
    if (!session.is_object()) schema("a session must be an object");
    SessionOptions opts = options_from(field(session, kOptionsKey));
    std::vector<TensorObject> objects;
    std::map<std::string, Role> roles;
    for (const auto& [id, r] : session.items()) {
        if (id == kOptionsKey) continue;
        if (id.empty() || id[0] == '$') schema("invalid tensor ID " + id);
        objects.push_back(object_from(id, r));
        roles[id] = objects.back().role;
    }
    auto is = [&](const std::string& id, Role r) { return roles.count(id) && roles.at(id) == r; };
    for (const auto& o : objects) {
        if (!o.metric.empty() && !is(o.metric, Role::Metric)) dangling(o.id, "metric", o.metric);
        if (!is(o.defaultCoords, Role::Coordinates)) dangling(o.id, "coordinate system", o.defaultCoords);
        for (const auto& [key, c] : o.reps) {
            if (!is(key.coords, Role::Coordinates)) dangling(o.id, "coordinate system", key.coords);
            (void)c;
        }
        for (const auto& [target, tr] : o.transformations)
            if (!is(target, Role::Coordinates)) dangling(o.id, "coordinate system", target);
    }
    std::map<std::string, std::size_t> dims;
    for (const auto& o : objects)
        if (o.role == Role::Coordinates) dims[o.id] = o.coordSymbols.size();
    for (const auto& o : objects)
        for (const auto& [key, c] : o.reps)
            if (key.indices.size() != o.rank() || c.size() != ipow(dims.at(key.coords), o.rank()))
                schema("component array of " + o.id + " has the wrong shape");
    reg.reset(std::move(objects), std::move(opts));
}

void import_all_from_file(Registry& reg, const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::FileReadError, "cannot read " + path);
    Json j;
    try {
        j = Json::parse(f);
    } catch (const Json::parse_error& e) {
        schema(std::string("not valid JSON: ") + e.what());
    }
    import_all(reg, j);
}

std::string import_tensor(Registry& reg, const Json& fragment) {
    if (!fragment.is_object() || fragment.size() != 1) schema("a tensor fragment must hold exactly one tensor");
    auto first = fragment.begin();
    const std::string id = first.key();
    TensorObject o = object_from(id, first.value());
    auto has = [&](const std::string& ref, Role role) { return reg.exists(ref) && reg.get(ref).role == role; };
    if (!o.metric.empty() && !has(o.metric, Role::Metric)) dangling(id, "metric", o.metric);
    if (o.role != Role::Coordinates) {
        if (!has(o.defaultCoords, Role::Coordinates)) dangling(id, "coordinate system", o.defaultCoords);
        for (const auto& [key, c] : o.reps)
            if (!has(key.coords, Role::Coordinates)) dangling(id, "coordinate system", key.coords);
    } else {
        for (const auto& [target, tr] : o.transformations)
            if (!has(target, Role::Coordinates) && target != id) dangling(id, "coordinate system", target);
    }
    reg.claim_id(id);
    std::string key = o.id;
    reg.put(std::move(o));
    if (reg.get(key).role == Role::Coordinates) {
        auto& reserved = reg.options_mut().reservedSymbols;
        for (const auto& s : reg.get(key).coordSymbols)
            if (std::find(reserved.begin(), reserved.end(), s) == reserved.end()) reserved.push_back(s);
    }
    return key;
}

// ---- rendering

std::vector<ListingGroup> group_components(const Components& c, const Assumptions& a) {
    std::vector<ListingGroup> groups;
    std::vector<Expr> negated;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Expr& e = c[i];
        if (e.is_zero_literal()) continue;
        bool placed = false;
        for (std::size_t g = 0; g < groups.size() && !placed; ++g) {
            int sign = 0;
            if (e == groups[g].value) sign = 1;
            else if (e == negated[g]) sign = -1;
            else if (simplify(e - groups[g].value, a).is_zero_literal()) sign = 1;
            else if (simplify(e + groups[g].value, a).is_zero_literal()) sign = -1;
            if (sign) {
                groups[g].members.emplace_back(i, sign);
                placed = true;
            }
        }
        if (!placed) {
            groups.push_back(ListingGroup{{{i, 1}}, e});
            negated.push_back(simplify(-e, a));
        }
    }
    return groups;
}

namespace {

std::size_t display_width(const std::string& s) {
    std::size_t w = 0;
    for (const auto& ch : utf8_chars(s)) {
        // Combining diacritics (dot accents) take no column.
        if (ch.size() == 2 && static_cast<unsigned char>(ch[0]) == 0xCC) continue;
        if (ch.size() == 2 && static_cast<unsigned char>(ch[0]) == 0xCD &&
            static_cast<unsigned char>(ch[1]) < 0xB0)
            continue;
        ++w;
    }
    return w;
}

std::string label(const std::string& s, Style style) { return style == Style::Latex ? latex_name(s) : s; }

// Symbol with index labels grouped into runs of upper and lower slots.
std::string decorate(const std::string& symbol, const std::vector<std::string>& labels, const IndexConfig& pos,
                     Style style) {
    std::string out = label(symbol, style);
    std::size_t i = 0;
    while (i < labels.size()) {
        int p = pos[i];
        std::string run;
        while (i < labels.size() && pos[i] == p) {
            if (style == Style::Latex && !run.empty()) run += " ";
            run += label(labels[i++], style);
        }
        if (style == Style::Latex) out += std::string(p > 0 ? "^{" : "_{") + run + "}" + (i < labels.size() ? "{}" : "");
        else out += (p > 0 ? "^" : "_") + run;
    }
    return out;
}

struct Rendered {
    const TensorObject* obj;
    IndexConfig indices;
    std::string coords;
    Components comps;
    std::vector<std::string> symbols;
    std::size_t dim;
};

Rendered prepare(Registry& reg, const std::string& id, const std::optional<IndexConfig>& indices,
                 const std::optional<std::string>& coords, const PostFn& post) {
    Rendered r;
    r.obj = &reg.get(id);
    r.indices = indices.value_or(r.obj->defaultIndices);
    r.coords = coords.value_or(r.obj->defaultCoords);
    r.comps = represent(reg, id, r.indices, r.coords);
    r.obj = &reg.get(id);
    r.symbols = reg.coords(r.coords).coordSymbols;
    r.dim = r.symbols.size();
    if (post) {
        for (auto& e : r.comps) e = post(e);
        reg.simplify_all(r.comps);
    }
    return r;
}

std::string listing_body(Registry& reg, const Rendered& r, Style style) {
    auto groups = group_components(r.comps, reg.options().assumptions);
    if (groups.empty()) return "No non-zero elements.";
    DisplayOpts opts = reg.display_opts();
    std::string out;
    const std::size_t rank = r.indices.size();
    for (const auto& g : groups) {
        std::string line;
        for (const auto& [flat, sign] : g.members) {
            std::vector<std::string> labels;
            for (auto k : unflatten(flat, r.dim, rank)) labels.push_back(r.symbols[k]);
            if (!line.empty()) line += " = ";
            if (sign < 0) line += "-";
            line += decorate(r.obj->symbol, labels, r.indices, style);
        }
        line += " = " + format_expr(g.value, style, opts);
        if (!out.empty()) out += style == Style::Latex ? " \\\\\n" : "\n";
        out += line;
    }
    return out;
}

std::string matrix_text(const std::vector<std::vector<std::string>>& rows, Style style) {
    if (style == Style::Latex) {
        std::string out = "\\begin{pmatrix} ";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) out += " \\\\ ";
            for (std::size_t j = 0; j < rows[i].size(); ++j) out += (j ? " & " : "") + rows[i][j];
        }
        return out + " \\end{pmatrix}";
    }
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows)
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], display_width(row[j]));
    std::string out;
    for (const auto& row : rows) {
        out += "\n  [";
        for (std::size_t j = 0; j < row.size(); ++j)
            out += " " + row[j] + std::string(width[j] - display_width(row[j]), ' ');
        out += " ]";
    }
    return out;
}

}  // namespace

std::string show(Registry& reg, const std::string& id, std::optional<IndexConfig> indices,
                 std::optional<std::string> coords, const PostFn& post, Style style) {
    Rendered r = prepare(reg, id, indices, coords, post);
    const std::size_t rank = r.indices.size();
    const std::string& letters = reg.options().indexLetters;
    auto chars = utf8_chars(letters);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rank; ++i) names.push_back(i < chars.size() ? chars[i] : "i" + std::to_string(i));
    std::string args;
    for (std::size_t i = 0; i < r.symbols.size(); ++i) args += (i ? ", " : "") + label(r.symbols[i], style);
    std::string head = id + ": " + decorate(r.obj->symbol, names, r.indices, style) + "(" + args + ") =";
    if (rank >= 3) return head + "\n" + listing_body(reg, r, style);
    DisplayOpts opts = reg.display_opts();
    auto fmt = [&](const Expr& e) { return format_expr(e, style, opts); };
    if (rank == 0) return head + " " + fmt(r.comps[0]);
    std::vector<std::vector<std::string>> rows;
    if (rank == 1) {
        for (const auto& e : r.comps) rows.push_back({fmt(e)});
    } else {
        for (std::size_t i = 0; i < r.dim; ++i) {
            rows.emplace_back();
            for (std::size_t j = 0; j < r.dim; ++j) rows.back().push_back(fmt(r.comps[i * r.dim + j]));
        }
    }
    return head + (style == Style::Latex ? " " : "") + matrix_text(rows, style);
}

std::string list_components(Registry& reg, const std::string& id, std::optional<IndexConfig> indices,
                            std::optional<std::string> coords, const PostFn& post, Style style) {
    Rendered r = prepare(reg, id, indices, coords, post);
    return id + ":\n" + listing_body(reg, r, style);
}

}  // namespace tc
