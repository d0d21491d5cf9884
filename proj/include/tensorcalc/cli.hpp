#pragma once

// Line-oriented command language over a session registry: script runner,
// REPL and benchmark.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tensorcalc/calculus.hpp"
#include "tensorcalc/error.hpp"
#include "tensorcalc/registry.hpp"

namespace tc {

enum ExitCode : int { ExitOk = 0, ExitCommand = 1, ExitIO = 2, ExitSchema = 3 };

int exit_code_for(Errc code);

// Unknown verbs and malformed arguments.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shell-like splitting: whitespace separates words, single and double quotes
// group text verbatim and adjacent pieces join.
std::vector<std::string> split_command(std::string_view line);

// Splits at top-level commas, ignoring commas nested in brackets.
std::vector<std::string> split_top_level(std::string_view text);

struct ComponentText {
    Components values;         // row-major
    std::vector<std::size_t> shape;  // empty for a scalar
};

// "[[a, b], [c, d]]", "diag(a, b, c)" or a single expression.
ComponentText parse_components(std::string_view text);

// "[1, -1]", "[]"; "+"/"u" and "-"/"d" are accepted as well.
IndexConfig parse_indices(std::string_view text);

// "lhs -> rhs". A bare name on the left also replaces that function by a
// constant closure; "f(a, b) -> body" defines a closure over a and b.
std::vector<SubstitutionRule> parse_rule(std::string_view text);

struct BenchResult {
    double serialSeconds = 0;
    double parallelSeconds = 0;
    unsigned workers = 0;
    double ratio() const { return serialSeconds > 0 ? parallelSeconds / serialSeconds : 0; }
};

// Median wall time of `repeat` Christoffel computations without and with
// parallel simplification; cached results are dropped between runs.
BenchResult bench_christoffel(Registry& reg, const std::string& metricId, int repeat);

class Interpreter {
public:
    Interpreter(std::ostream& out, std::ostream& err);

    Registry& registry() { return reg_; }
    Style style = Style::Plain;

    // Throws tc::Error or UsageError.
    void execute(const std::vector<std::string>& words);
    void execute(std::string_view line);

    // Runs one line, printing any error; returns the exit code.
    int run_line(std::string_view line);
    // Stops at the first failing line and reports its number.
    int run_script(std::istream& in);
    int run_script_file(const std::string& path);
    // Errors are printed and the session continues.
    void repl(std::istream& in, bool prompt = true);

    static std::string usage();

private:
    Registry reg_;
    std::ostream& out_;
    std::ostream& err_;

    void report(const std::exception& e, std::optional<std::size_t> line);
};

}  // namespace tc
