#include "tensorcalc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "tensorcalc/calc.hpp"
#include "tensorcalc/curvature.hpp"
#include "tensorcalc/geodesic.hpp"
#include "tensorcalc/session_io.hpp"
#include "tensorcalc/simplify.hpp"
#include "tensorcalc/text.hpp"
#include "tensorcalc/transform.hpp"

namespace tc {

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::FileReadError:
    case Errc::FileWriteError: return ExitIO;
    case Errc::SchemaError:
    case Errc::VersionUnsupported: return ExitSchema;
    default: return ExitCommand;
    }
}

// ---- text helpers

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

}  // namespace

std::vector<std::string> split_command(std::string_view line) {
    std::vector<std::string> words;
    std::string cur;
    bool inWord = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '\'' || c == '"') {
            auto close = line.find(c, i + 1);
            if (close == std::string_view::npos) throw UsageError("unterminated quote");
            cur.append(line.substr(i + 1, close - i - 1));
            inWord = true;
            i = close;
        } else if (is_space(c)) {
            if (inWord) words.push_back(std::move(cur));
            cur.clear();
            inWord = false;
        } else {
            cur += c;
            inWord = true;
        }
    }
    if (inWord) words.push_back(std::move(cur));
    return words;
}

std::vector<std::string> split_top_level(std::string_view text) {
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (depth < 0) throw UsageError("unbalanced brackets in " + std::string(text));
        if (c == ',' && depth == 0) {
            parts.push_back(trim(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (depth != 0) throw UsageError("unbalanced brackets in " + std::string(text));
    std::string last = trim(text.substr(start));
    if (!last.empty() || !parts.empty()) parts.push_back(last);
    for (const auto& p : parts)
        if (p.empty()) throw UsageError("empty entry in " + std::string(text));
    return parts;
}

namespace {

// Text inside a matching outer bracket pair, if the whole string is one.
std::optional<std::string> unwrap(const std::string& s, char open, char close) {
    if (s.size() < 2 || s.front() != open || s.back() != close) return std::nullopt;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == open) ++depth;
        if (s[i] == close && --depth == 0 && i + 1 != s.size()) return std::nullopt;
    }
    return s.substr(1, s.size() - 2);
}

void collect_nested(const std::string& text, std::size_t level, ComponentText& out) {
    auto inner = unwrap(text, '[', ']');
    if (!inner) {
        if (level != out.shape.size()) throw UsageError("ragged component list");
        out.values.push_back(parse_expr(text));
        return;
    }
    auto parts = split_top_level(*inner);
    if (level == out.shape.size()) {
        if (!out.values.empty()) throw UsageError("ragged component list");
        out.shape.push_back(parts.size());
    } else if (level > out.shape.size() || out.shape[level] != parts.size()) {
        throw UsageError("ragged component list");
    }
    for (const auto& p : parts) collect_nested(p, level + 1, out);
}

}  // namespace

ComponentText parse_components(std::string_view text) {
    std::string s = trim(text);
    ComponentText out;
    if (s.rfind("diag(", 0) == 0 && s.back() == ')') {
        auto parts = split_top_level(std::string_view(s).substr(5, s.size() - 6));
        std::size_t n = parts.size();
        out.shape = {n, n};
        out.values.assign(n * n, Expr(0L));
        for (std::size_t i = 0; i < n; ++i) out.values[i * n + i] = parse_expr(parts[i]);
        return out;
    }
    collect_nested(s, 0, out);
    std::size_t expected = 1;
    for (auto d : out.shape) expected *= d;
    if (out.values.size() != expected) throw UsageError("ragged component list");
    return out;
}

IndexConfig parse_indices(std::string_view text) {
    std::string s = trim(text);
    auto inner = unwrap(s, '[', ']');
    if (!inner) throw UsageError("index configuration must look like [1, -1]: " + s);
    IndexConfig out;
    if (trim(*inner).empty()) return out;
    for (const auto& p : split_top_level(*inner)) {
        if (p == "1" || p == "+1" || p == "+" || p == "u")
            out.push_back(1);
        else if (p == "-1" || p == "-" || p == "d")
            out.push_back(-1);
        else
            throw UsageError("index entries must be 1 or -1: " + s);
    }
    return out;
}

std::vector<SubstitutionRule> parse_rule(std::string_view text) {
    std::string s(text);
    std::size_t at = s.find("->");
    std::size_t len = 2;
    if (at == std::string::npos) {
        at = s.find("→");
        len = std::string("→").size();
    }
    if (at == std::string::npos) throw UsageError("rule must look like lhs -> rhs: " + s);
    Expr lhs = parse_expr(trim(s.substr(0, at)));
    Expr rhs = parse_expr(trim(s.substr(at + len)));
    if (lhs.kind() == Kind::Symbol)
        return {SubstitutionRule::replace(lhs, rhs), SubstitutionRule::function(lhs.name(), {}, rhs)};
    if (lhs.kind() == Kind::FuncApp) {
        std::vector<std::string> params;
        for (const auto& a : lhs.args()) {
            if (a.kind() != Kind::Symbol) return {SubstitutionRule::replace(lhs, rhs)};
            params.push_back(a.name());
        }
        return {SubstitutionRule::function(lhs.name(), params, rhs)};
    }
    return {SubstitutionRule::replace(lhs, rhs)};
}

// ---- benchmark

BenchResult bench_christoffel(Registry& reg, const std::string& metricId, int repeat) {
    reg.metric(metricId);
    if (repeat < 1) throw UsageError("--repeat must be at least 1");
    std::string target = derived_id(metricId, Role::Christoffel);
    bool wasParallel = reg.options().parallelize;
    auto median_time = [&](bool parallel) {
        reg.set_parallelize(parallel);
        std::vector<double> times;
        for (int k = 0; k < repeat; ++k) {
            if (reg.exists(target)) reg.remove(target);
            reg.clear_cache(metricId);
            auto t0 = std::chrono::steady_clock::now();
            calc_christoffel(reg, metricId);
            times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        std::sort(times.begin(), times.end());
        return times[times.size() / 2];
    };
    BenchResult r;
    try {
        r.serialSeconds = median_time(false);
        r.parallelSeconds = median_time(true);
    } catch (...) {
        reg.set_parallelize(wasParallel);
        throw;
    }
    reg.set_parallelize(wasParallel);
    r.workers = reg.workers();
    return r;
}

// ---- verbs

namespace {

struct Args {
    std::vector<std::string> pos;
    std::multimap<std::string, std::string> opts;

    bool flag(const std::string& k) const { return opts.count(k) > 0; }
    std::vector<std::string> all(const std::string& k) const {
        std::vector<std::string> v;
        auto [b, e] = opts.equal_range(k);
        for (auto it = b; it != e; ++it) v.push_back(it->second);
        return v;
    }
    std::optional<std::string> at(std::size_t i) const {
        return i < pos.size() ? std::optional<std::string>(pos[i]) : std::nullopt;
    }
};

struct Ctx {
    Registry& reg;
    std::ostream& out;
    Style& style;
};

struct Verb {
    const char* synopsis;
    std::size_t minArgs;
    std::size_t maxArgs;  // SIZE_MAX for variadic
    std::set<std::string> valueOpts;
    std::set<std::string> flagOpts;
    std::function<void(Ctx&, const Args&)> run;
};

constexpr std::size_t kMany = static_cast<std::size_t>(-1);

bool parse_switch(const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw UsageError("expected on or off, got " + v);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::FileReadError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Positional index configuration and coordinates in either order.
void view_args(const Args& a, std::size_t from, std::optional<IndexConfig>& indices,
               std::optional<std::string>& coords) {
    for (std::size_t i = from; i < a.pos.size(); ++i) {
        const std::string& w = a.pos[i];
        if (!w.empty() && w.front() == '[') {
            if (indices) throw UsageError("index configuration given twice");
            indices = parse_indices(w);
        } else {
            if (coords) throw UsageError("coordinate system given twice");
            coords = w;
        }
    }
}

PostFn post_function(Ctx& c, const Args& a) {
    std::vector<SubstitutionRule> rules;
    for (const auto& r : a.all("--replace")) {
        auto more = parse_rule(r);
        rules.insert(rules.end(), more.begin(), more.end());
    }
    bool act = a.flag("--activate");
    if (rules.empty() && !act) return {};
    Assumptions as = c.reg.options().assumptions;
    return [rules, act, as](const Expr& e) {
        Expr v = substitute(e, rules);
        if (act) v = activate_deferred(v);
        return simplify(v, as);
    };
}

std::string on_off(bool b) { return b ? "on" : "off"; }

void print_id(Ctx& c, const std::string& id) { c.out << id << "\n"; }

const std::map<std::string, Verb>& verbs() {
    static const std::map<std::string, Verb> table = {
        {"new-coordinates",
         {"new-coordinates ID SYMBOL...", 2, kMany, {}, {},
          [](Ctx& c, const Args& a) {
              print_id(c, c.reg.new_coordinates(a.pos[0], std::vector<std::string>(a.pos.begin() + 1, a.pos.end())));
          }}},
        {"new-metric",
         {"new-metric ID COORDS COMPONENTS [SYMBOL]", 3, 4, {}, {},
          [](Ctx& c, const Args& a) {
              auto comps = parse_components(a.pos[2]);
              if (comps.shape.size() != 2) throw UsageError("metric components must be a matrix");
              print_id(c, c.reg.new_metric(a.pos[0], a.pos[1], comps.values, a.at(3).value_or("g")));
          }}},
        {"new-tensor",
         {"new-tensor ID METRIC COORDS INDICES COMPONENTS [SYMBOL]", 5, 6, {}, {},
          [](Ctx& c, const Args& a) {
              IndexConfig idx = parse_indices(a.pos[3]);
              auto comps = parse_components(a.pos[4]);
              if (comps.shape.size() != idx.size())
                  throw Error(Errc::ShapeMismatch, "components do not match the rank of the index configuration");
              print_id(c, c.reg.new_tensor(a.pos[0], a.pos[1], a.pos[2], idx, comps.values,
                                           a.at(5).value_or(kPlaceholderSymbol)));
          }}},
        {"transform-add",
         {"transform-add SOURCE TARGET 'x -> expr'...", 3, kMany, {}, {},
          [](Ctx& c, const Args& a) {
              std::vector<CoordRule> rules;
              for (std::size_t i = 2; i < a.pos.size(); ++i) {
                  auto r = parse_rule(a.pos[i]);
                  if (r.front().target.kind() != Kind::Symbol)
                      throw UsageError("transformation rules must replace coordinate symbols");
                  rules.emplace_back(r.front().target.name(), r.front().replacement);
              }
              add_coord_transformation(c.reg, a.pos[0], a.pos[1], rules);
              print_id(c, a.pos[0]);
          }}},
        {"calc",
         {"calc 'FORMULA'", 1, 1, {}, {}, [](Ctx& c, const Args& a) { print_id(c, calc(c.reg, a.pos[0])); }}},
        {"christoffel",
         {"christoffel METRIC", 1, 1, {}, {}, [](Ctx& c, const Args& a) { print_id(c, calc_christoffel(c.reg, a.pos[0])); }}},
        {"riemann",
         {"riemann METRIC", 1, 1, {}, {}, [](Ctx& c, const Args& a) { print_id(c, calc_riemann(c.reg, a.pos[0])); }}},
        {"ricci",
         {"ricci METRIC", 1, 1, {}, {}, [](Ctx& c, const Args& a) { print_id(c, calc_ricci_tensor(c.reg, a.pos[0])); }}},
        {"ricci-scalar",
         {"ricci-scalar METRIC", 1, 1, {}, {},
          [](Ctx& c, const Args& a) { print_id(c, calc_ricci_scalar(c.reg, a.pos[0])); }}},
        {"einstein",
         {"einstein METRIC", 1, 1, {}, {}, [](Ctx& c, const Args& a) { print_id(c, calc_einstein(c.reg, a.pos[0])); }}},
        {"lagrangian",
         {"lagrangian METRIC [COORDS]", 1, 2, {}, {},
          [](Ctx& c, const Args& a) { print_id(c, calc_lagrangian(c.reg, a.pos[0], a.at(1))); }}},
        {"geodesic-lagrangian",
         {"geodesic-lagrangian METRIC [COORDS]", 1, 2, {}, {},
          [](Ctx& c, const Args& a) { print_id(c, geodesic_from_lagrangian(c.reg, a.pos[0], a.at(1))); }}},
        {"geodesic-christoffel",
         {"geodesic-christoffel METRIC [COORDS]", 1, 2, {}, {},
          [](Ctx& c, const Args& a) { print_id(c, geodesic_from_christoffel(c.reg, a.pos[0], a.at(1))); }}},
        {"show",
         {"show ID [INDICES] [COORDS] [--replace 'a -> b']... [--activate]", 1, 3, {"--replace"}, {"--activate"},
          [](Ctx& c, const Args& a) {
              std::optional<IndexConfig> idx;
              std::optional<std::string> coords;
              view_args(a, 1, idx, coords);
              c.out << show(c.reg, a.pos[0], idx, coords, post_function(c, a), c.style) << "\n";
          }}},
        {"list",
         {"list ID [INDICES] [COORDS] [--replace 'a -> b']... [--activate]", 1, 3, {"--replace"}, {"--activate"},
          [](Ctx& c, const Args& a) {
              std::optional<IndexConfig> idx;
              std::optional<std::string> coords;
              view_args(a, 1, idx, coords);
              c.out << list_components(c.reg, a.pos[0], idx, coords, post_function(c, a), c.style) << "\n";
          }}},
        {"line-element",
         {"line-element METRIC [COORDS]", 1, 2, {}, {},
          [](Ctx& c, const Args& a) {
              c.out << format_expr(line_element(c.reg, a.pos[0], a.at(1)), c.style, c.reg.display_opts()) << "\n";
          }}},
        {"volume-element",
         {"volume-element METRIC [COORDS]", 1, 2, {}, {},
          [](Ctx& c, const Args& a) {
              c.out << format_expr(volume_element_squared(c.reg, a.pos[0], a.at(1)), c.style, c.reg.display_opts())
                    << "\n";
          }}},
        {"info",
         {"info [ID]", 0, 1, {}, {}, [](Ctx& c, const Args& a) { c.out << c.reg.info(a.at(0)).text; }}},
        {"export",
         {"export ID [FILE]", 1, 2, {}, {},
          [](Ctx& c, const Args& a) {
              std::string text = export_tensor(c.reg, a.pos[0]).dump(2);
              if (!a.at(1)) {
                  c.out << text << "\n";
                  return;
              }
              std::ofstream f(*a.at(1), std::ios::binary);
              if (!(f << text << "\n")) throw Error(Errc::FileWriteError, "cannot write " + *a.at(1));
              print_id(c, a.pos[0]);
          }}},
        {"import",
         {"import FILE", 1, 1, {}, {},
          [](Ctx& c, const Args& a) {
              Json j;
              try {
                  j = Json::parse(read_file(a.pos[0]));
              } catch (const nlohmann::json::exception& e) {
                  throw Error(Errc::SchemaError, a.pos[0] + ": " + e.what());
              }
              if (!j.is_object()) throw Error(Errc::SchemaError, a.pos[0] + ": expected an object");
              for (const auto& [id, rec] : j.items()) {
                  if (id == kOptionsKey) continue;
                  Json one = Json::object();
                  one[id] = rec;
                  print_id(c, import_tensor(c.reg, one));
              }
          }}},
        {"save",
         {"save FILE", 1, 1, {}, {},
          [](Ctx& c, const Args& a) {
              export_all_to_file(c.reg, a.pos[0]);
              c.out << "Saved " << c.reg.ids().size() << " objects to " << a.pos[0] << "\n";
          }}},
        {"load",
         {"load FILE", 1, 1, {}, {},
          [](Ctx& c, const Args& a) {
              import_all_from_file(c.reg, a.pos[0]);
              c.out << "Loaded " << c.reg.ids().size() << " objects from " << a.pos[0] << "\n";
          }}},
        {"delete",
         {"delete ID", 1, 1, {}, {},
          [](Ctx& c, const Args& a) {
              c.reg.remove(a.pos[0]);
              c.out << "Deleted " << a.pos[0] << "\n";
          }}},
        {"rename",
         {"rename OLD NEW", 2, 2, {}, {}, [](Ctx& c, const Args& a) { print_id(c, c.reg.change_id(a.pos[0], a.pos[1])); }}},
        {"simplify",
         {"simplify ID", 1, 1, {}, {}, [](Ctx& c, const Args& a) { print_id(c, c.reg.simplify_tensor(a.pos[0])); }}},
        {"activate",
         {"activate ID", 1, 1, {}, {}, [](Ctx& c, const Args& a) { print_id(c, activate_tensor(c.reg, a.pos[0])); }}},
        {"clear-cache",
         {"clear-cache ID", 1, 1, {}, {},
          [](Ctx& c, const Args& a) {
              c.reg.clear_cache(a.pos[0]);
              print_id(c, a.pos[0]);
          }}},
        {"set-symbol",
         {"set-symbol ID SYMBOL", 2, 2, {}, {},
          [](Ctx& c, const Args& a) { print_id(c, c.reg.change_symbol(a.pos[0], a.pos[1])); }}},
        {"set-indices",
         {"set-indices ID INDICES", 2, 2, {}, {},
          [](Ctx& c, const Args& a) { print_id(c, c.reg.change_default_indices(a.pos[0], parse_indices(a.pos[1]))); }}},
        {"set-coords",
         {"set-coords ID COORDS", 2, 2, {}, {},
          [](Ctx& c, const Args& a) { print_id(c, c.reg.change_default_coords(a.pos[0], a.pos[1])); }}},
        {"set-reserved",
         {"set-reserved SYMBOL...", 0, kMany, {}, {},
          [](Ctx& c, const Args& a) {
              const auto& all = c.reg.set_reserved_symbols(a.pos);
              c.out << "Reserved symbols:";
              for (const auto& s : all) c.out << " " << s;
              c.out << "\n";
          }}},
        {"set-assume",
         {"set-assume 'PREDICATE'... | set-assume clear", 0, kMany, {}, {},
          [](Ctx& c, const Args& a) {
              if (a.pos.size() == 1 && a.pos[0] == "clear")
                  c.reg.clear_assumptions();
              else
                  for (const auto& p : a.pos) c.reg.add_assumption(parse_predicate(p));
              c.out << "Assumptions: " << c.reg.options().assumptions.to_string() << "\n";
          }}},
        {"set-assume-real",
         {"set-assume-real on|off", 1, 1, {}, {},
          [](Ctx& c, const Args& a) {
              c.reg.set_assume_real(parse_switch(a.pos[0]));
              c.out << "Assumptions: " << c.reg.options().assumptions.to_string() << "\n";
          }}},
        {"set-index-letters",
         {"set-index-letters [LETTERS]", 0, 1, {}, {},
          [](Ctx& c, const Args& a) { c.out << "Index letters: " << c.reg.set_index_letters(a.at(0).value_or("")) << "\n"; }}},
        {"set-curve-parameter",
         {"set-curve-parameter [SYMBOL]", 0, 1, {}, {},
          [](Ctx& c, const Args& a) {
              c.out << "Curve parameter: " << set_curve_parameter(c.reg, a.at(0).value_or("")) << "\n";
          }}},
        {"set-parallel",
         {"set-parallel on|off|auto [WORKERS]", 1, 2, {}, {},
          [](Ctx& c, const Args& a) {
              if (a.at(1)) {
                  try {
                      c.reg.set_workers(static_cast<unsigned>(std::stoul(*a.at(1))));
                  } catch (const std::logic_error&) {
                      throw UsageError("worker count must be a number: " + *a.at(1));
                  }
              }
              bool on = a.pos[0] == "auto" ? c.reg.workers() > 1 : parse_switch(a.pos[0]);
              c.reg.set_parallelize(on);
              if (on)
                  c.out << "Parallelization enabled with " << c.reg.workers() << " workers.\n";
              else
                  c.out << "Parallelization disabled.\n";
          }}},
        {"set-overwrite",
         {"set-overwrite on|off", 1, 1, {}, {},
          [](Ctx& c, const Args& a) {
              c.out << "Overwriting " << on_off(c.reg.set_allow_overwrite(parse_switch(a.pos[0]))) << ".\n";
          }}},
        {"set-format",
         {"set-format plain|latex", 1, 1, {}, {},
          [](Ctx& c, const Args& a) {
              if (a.pos[0] == "plain")
                  c.style = Style::Plain;
              else if (a.pos[0] == "latex")
                  c.style = Style::Latex;
              else
                  throw UsageError("format must be plain or latex");
              c.out << "Format: " << a.pos[0] << "\n";
          }}},
        {"bench",
         {"bench christoffel METRIC [--repeat K]", 2, 2, {"--repeat"}, {},
          [](Ctx& c, const Args& a) {
              if (a.pos[0] != "christoffel") throw UsageError("only 'bench christoffel' is available");
              int repeat = 3;
              if (auto r = a.all("--repeat"); !r.empty()) {
                  try {
                      repeat = std::stoi(r.back());
                  } catch (const std::logic_error&) {
                      throw UsageError("--repeat needs a number");
                  }
              }
              BenchResult b = bench_christoffel(c.reg, a.pos[1], repeat);
              std::ostringstream s;
              s.precision(4);
              s << std::fixed << "christoffel " << a.pos[1] << ": 1 worker " << b.serialSeconds << " s, " << b.workers
                << " workers " << b.parallelSeconds << " s, ratio " << b.ratio() << " (median of " << repeat << ")";
              c.out << s.str() << "\n";
          }}},
    };
    return table;
}

}  // namespace

// ---- interpreter

Interpreter::Interpreter(std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    reg_.notify = [this](const std::string& msg) { err_ << "note: " << msg << "\n"; };
}

std::string Interpreter::usage() {
    std::string s = "commands:\n";
    for (const auto& [name, v] : verbs()) s += "  " + std::string(v.synopsis) + "\n";
    s += "  help\n";
    return s;
}

void Interpreter::execute(std::string_view line) { execute(split_command(line)); }

void Interpreter::execute(const std::vector<std::string>& words) {
    if (words.empty()) return;
    if (words[0] == "help") {
        out_ << usage();
        return;
    }
    auto it = verbs().find(words[0]);
    if (it == verbs().end()) throw UsageError("unknown command '" + words[0] + "'; type help for a list");
    const Verb& v = it->second;
    auto fail = [&](const std::string& why) { throw UsageError(why + "\nusage: " + v.synopsis); };
    Args args;
    for (std::size_t i = 1; i < words.size(); ++i) {
        const std::string& w = words[i];
        if (w.size() > 2 && w.compare(0, 2, "--") == 0) {
            if (v.flagOpts.count(w)) {
                args.opts.emplace(w, "");
            } else if (v.valueOpts.count(w)) {
                if (i + 1 >= words.size()) fail(w + " needs a value");
                args.opts.emplace(w, words[++i]);
            } else {
                fail("unknown option " + w);
            }
        } else {
            args.pos.push_back(w);
        }
    }
    if (args.pos.size() < v.minArgs || args.pos.size() > v.maxArgs) fail("wrong number of arguments");
    Ctx ctx{reg_, out_, style};
    v.run(ctx, args);
}

void Interpreter::report(const std::exception& e, std::optional<std::size_t> line) {
    err_ << "error: ";
    if (line) err_ << "line " << *line << ": ";
    if (auto* te = dynamic_cast<const Error*>(&e)) err_ << errc_name(te->code()) << ": ";
    err_ << e.what() << "\n";
}

namespace {

int code_of(const std::exception& e) {
    if (auto* te = dynamic_cast<const Error*>(&e)) return exit_code_for(te->code());
    return ExitCommand;
}

bool blank_or_comment(std::string_view line) {
    std::string t = trim(line);
    return t.empty() || t.front() == '#';
}

}  // namespace

int Interpreter::run_line(std::string_view line) {
    try {
        if (!blank_or_comment(line)) execute(line);
        return ExitOk;
    } catch (const std::exception& e) {
        report(e, std::nullopt);
        return code_of(e);
    }
}

int Interpreter::run_script(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (blank_or_comment(line)) continue;
        try {
            execute(line);
        } catch (const std::exception& e) {
            report(e, n);
            return code_of(e);
        }
    }
    return ExitOk;
}

int Interpreter::run_script_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        err_ << "error: FileReadError: cannot read " << path << "\n";
        return ExitIO;
    }
    return run_script(in);
}

void Interpreter::repl(std::istream& in, bool prompt) {
    std::string line;
    while (true) {
        if (prompt) out_ << "tcalc> " << std::flush;
        if (!std::getline(in, line)) break;
        std::string t = trim(line);
        if (t == "quit" || t == "exit") break;
        run_line(line);
    }
    if (prompt) out_ << "\n";
}

}  // namespace tc
