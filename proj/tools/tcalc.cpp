// tcalc: script runner and REPL for the tensor calculus engine.

#include <unistd.h>

#include <iostream>

#include "CLI11.hpp"
#include "tensorcalc/cli.hpp"
#include "tensorcalc/session_io.hpp"
#include "tensorcalc/simplify.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Symbolic tensor calculus: run a script, or start a REPL when none is given"};
    std::string format = "plain";
    std::string parallel = "off";
    unsigned workers = 0;
    std::string load;
    std::string script;
    std::vector<std::string> assume;
    app.add_option("--format", format, "Rendering of show/list output")->check(CLI::IsMember({"plain", "latex"}));
    app.add_option("--parallel", parallel, "Parallel simplification")->check(CLI::IsMember({"on", "off", "auto"}));
    app.add_option("--workers", workers, "Worker count (default: logical cores)");
    app.add_option("--load", load, "Session file to load first");
    app.add_option("--script", script, "Script file, or - for standard input");
    app.add_option("--assume", assume, "Simplification assumption such as 'r >= 0'");

    app.fallthrough();
    auto* bench = app.add_subcommand("bench", "Time Christoffel symbols with 1 and N workers");
    std::string benchWhat;
    std::string benchMetric;
    int repeat = 3;
    bench->add_option("what", benchWhat, "Computation to time")->required()->check(CLI::IsMember({"christoffel"}));
    bench->add_option("metric", benchMetric, "Metric ID")->required();
    bench->add_option("--repeat", repeat, "Runs per setting; the median is reported")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    tc::Interpreter in(std::cout, std::cerr);
    tc::Registry& reg = in.registry();
    in.style = format == "latex" ? tc::Style::Latex : tc::Style::Plain;
    try {
        if (workers) reg.set_workers(workers);
        reg.set_parallelize(parallel == "on" || (parallel == "auto" && reg.workers() > 1));
        if (!load.empty()) tc::import_all_from_file(reg, load);
        for (const auto& a : assume) reg.add_assumption(tc::parse_predicate(a));
    } catch (const tc::Error& e) {
        std::cerr << "error: " << tc::errc_name(e.code()) << ": " << e.what() << "\n";
        return tc::exit_code_for(e.code());
    }

    if (!script.empty()) {
        int status = script == "-" ? in.run_script(std::cin) : in.run_script_file(script);
        if (status != tc::ExitOk) return status;
    } else if (!*bench) {
        if (isatty(STDIN_FILENO)) {
            in.repl(std::cin);
            return tc::ExitOk;
        }
        return in.run_script(std::cin);
    }

    if (*bench) {
        std::vector<std::string> words{"bench", benchWhat, benchMetric, "--repeat", std::to_string(repeat)};
        try {
            in.execute(words);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            if (auto* te = dynamic_cast<const tc::Error*>(&e)) return tc::exit_code_for(te->code());
            return tc::ExitCommand;
        }
    }
    return tc::ExitOk;
}
