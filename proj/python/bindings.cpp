#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tensorcalc/cli.hpp"
#include "tensorcalc/session_io.hpp"
#include "tensorcalc/text.hpp"
#include "tensorcalc/transform.hpp"

namespace py = pybind11;

namespace {

// A command-language session with captured output.
class Session {
public:
    Session() : interp_(out_, err_) {}

    // Runs one command and returns what it printed; raises on failure.
    std::string run(const std::string& line) {
        reset();
        int status = interp_.run_line(line);
        if (status != tc::ExitOk) throw_failure(status);
        return out_.str();
    }

    std::string run_script(const std::string& text) {
        reset();
        std::istringstream in(text);
        int status = interp_.run_script(in);
        if (status != tc::ExitOk) throw_failure(status);
        return out_.str();
    }

    std::vector<std::string> components(const std::string& id, std::optional<tc::IndexConfig> indices,
                                        std::optional<std::string> coords) {
        tc::Registry& reg = interp_.registry();
        const tc::TensorObject& obj = reg.get(id);
        const tc::Components& c = tc::represent(reg, id, indices.value_or(obj.defaultIndices),
                                                coords.value_or(obj.defaultCoords));
        std::vector<std::string> out;
        for (const auto& e : c) out.push_back(tc::format_expr(e));
        return out;
    }

    std::vector<std::string> ids() { return interp_.registry().ids(); }
    std::string export_json() { return tc::export_all(interp_.registry()).dump(); }
    void import_json(const std::string& text) { tc::import_all(interp_.registry(), tc::Json::parse(text)); }

private:
    std::ostringstream out_, err_;
    tc::Interpreter interp_;

    void reset() {
        out_.str("");
        err_.str("");
    }
    [[noreturn]] void throw_failure(int status) {
        std::string msg = err_.str();
        while (!msg.empty() && msg.back() == '\n') msg.pop_back();
        throw py::value_error("exit status " + std::to_string(status) + ": " + msg);
    }
};

}  // namespace

PYBIND11_MODULE(_tensorcalc, m) {
    m.doc() = "Symbolic tensor calculus sessions";
    py::register_exception<tc::Error>(m, "TensorError", PyExc_RuntimeError);
    py::class_<Session>(m, "Session")
        .def(py::init<>())
        .def("run", &Session::run, py::arg("line"))
        .def("run_script", &Session::run_script, py::arg("text"))
        .def("components", &Session::components, py::arg("id"), py::arg("indices") = py::none(),
             py::arg("coords") = py::none())
        .def("ids", &Session::ids)
        .def("export_json", &Session::export_json)
        .def("import_json", &Session::import_json, py::arg("text"));
    m.def("simplify", [](const std::string& text) { return tc::format_expr(tc::simplify(tc::parse_expr(text))); });
}
