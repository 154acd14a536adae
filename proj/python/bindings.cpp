#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ahmd/io.hpp"
#include "ahmd/nerve.hpp"
#include "ahmd/report.hpp"

namespace py = pybind11;
using namespace ahmd;

namespace {

std::vector<Simplex> simplices_of(const Complex& c, const SimplexSet& s)
{
    std::vector<Simplex> out;
    s.for_each([&](SimplexId id) { out.push_back(c.simplex(id)); });
    return out;
}

RunConfig with_overrides(RunConfig c, const py::kwargs& kw)
{
    for (const auto& [key, value] : kw) {
        const std::string k = py::cast<std::string>(key);
        if (k == "level")
            c.level = py::cast<int>(value);
        else if (k == "budget")
            c.budget = py::cast<std::uint64_t>(value);
        else if (k == "stage")
            c.stage = py::cast<int>(value);
        else if (k == "epsilon")
            c.epsilon = py::cast<double>(value);
        else if (k == "radius")
            c.radius = py::cast<int>(value);
        else if (k == "target_stage")
            c.target_stage = py::cast<int>(value);
        else if (k == "target_block")
            c.target_block = py::cast<int>(value);
        else if (k == "cover")
            c.cover = py::cast<std::string>(value);
        else if (k == "closed_set")
            c.closed_set = py::cast<std::string>(value);
        else if (k == "open_set")
            c.open_set = py::cast<std::string>(value);
        else if (k == "trace")
            c.trace = py::cast<std::string>(value);
        else if (k == "family")
            c.family = py::cast<std::string>(value);
        else if (k == "timing")
            c.timing = py::cast<bool>(value);
        else
            throw ValidationError("unknown option '" + k + "'");
    }
    return c;
}

std::vector<std::string> keys(const auto& map)
{
    std::vector<std::string> out;
    for (const auto& [name, value] : map)
        out.push_back(name);
    return out;
}

}  // namespace

PYBIND11_MODULE(_ahmd, m)
{
    m.doc() = "Mean dimension and capacity computations on finite diagonal systems";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

    py::class_<Complex>(m, "Complex")
        .def_static("path", &Complex::path, py::arg("vertices"))
        .def_static("cycle", &Complex::cycle, py::arg("vertices"))
        .def_static("full_simplex", &Complex::full_simplex, py::arg("dimension"))
        .def_static("simplex_boundary", &Complex::simplex_boundary, py::arg("dimension"))
        .def_static("from_facets", &Complex::from_facets, py::arg("vertex_count"), py::arg("facets"))
        .def_property_readonly("vertex_count", &Complex::vertex_count)
        .def_property_readonly("dimension", &Complex::dimension)
        .def("__len__", &Complex::size)
        .def("simplices", [](const Complex& c) { return simplices_of(c, c.all()); })
        .def("__eq__", [](const Complex& a, const Complex& b) { return a == b; });

    py::class_<OpenSet>(m, "OpenSet")
        .def("__len__", &OpenSet::size)
        .def("simplices", [](const OpenSet& u) { return simplices_of(u.complex(), u.members()); })
        .def("issubset", &OpenSet::subset_of)
        .def("__and__", [](const OpenSet& a, const OpenSet& b) { return a & b; })
        .def("__or__", [](const OpenSet& a, const OpenSet& b) { return a | b; })
        .def("__eq__", [](const OpenSet& a, const OpenSet& b) { return a == b; });

    m.def(
        "open_star",
        [](const Complex& c, const std::vector<Vertex>& vs) { return open_star(c, std::span<const Vertex>(vs)); },
        py::arg("complex"), py::arg("vertices"));

    py::class_<Cover>(m, "Cover")
        .def(py::init<Complex, std::vector<OpenSet>>(), py::arg("complex"), py::arg("elements"))
        .def_static("trivial", &Cover::trivial)
        .def_static("vertex_stars", &Cover::vertex_stars)
        .def_property_readonly("complex", &Cover::complex)
        .def_property_readonly("elements", &Cover::elements)
        .def("__len__", &Cover::size);

    m.def("ord", &ord, py::arg("cover"));
    m.def("join", &join, py::arg("a"), py::arg("b"));
    m.def("refines", &refines, py::arg("fine"), py::arg("coarse"));
    m.def(
        "refinement_dimension",
        [](const Cover& a, int level, std::uint64_t budget) {
            const auto r = refinement_dimension(a, level, budget);
            py::dict d;
            d["value"] = r.value;
            d["exact"] = r.exact;
            d["nodes"] = r.nodes;
            d["certificate_elements"] = r.certificate.cover.size();
            return d;
        },
        py::arg("cover"), py::arg("level") = 0, py::arg("budget") = 1'000'000);
    m.def(
        "nerve_dimension", [](const Cover& a) { return nerve(a).dimension; }, py::arg("cover"));

    py::class_<SystemDescription>(m, "Description")
        .def_property_readonly("stage_count", [](const SystemDescription& d) { return d.system.stage_count(); })
        .def_property_readonly("sizes",
                               [](const SystemDescription& d) {
                                   std::vector<std::vector<int>> out;
                                   for (const auto& stage : d.system.stages()) {
                                       out.emplace_back();
                                       for (const Block& b : stage)
                                           out.back().push_back(b.size);
                                   }
                                   return out;
                               })
        .def_property_readonly("covers", [](const SystemDescription& d) { return keys(d.covers); })
        .def_property_readonly("closed_sets", [](const SystemDescription& d) { return keys(d.closed_sets); })
        .def_property_readonly("open_sets", [](const SystemDescription& d) { return keys(d.open_sets); })
        .def_property_readonly("traces", [](const SystemDescription& d) { return keys(d.traces); })
        .def_property_readonly("families", [](const SystemDescription& d) { return keys(d.families); })
        .def("to_json", [](const SystemDescription& d) { return to_json(d).dump(); });

    m.def("load_description", &load_description, py::arg("path"));
    m.def(
        "parse_description", [](const std::string& text) { return parse_description(Json::parse(text)); },
        py::arg("text"));
    m.def(
        "goodearl_description",
        [](const std::vector<int>& mult, const std::vector<int>& points, int resolution) {
            return parse_description(goodearl_description(mult, points, resolution));
        },
        py::arg("m"), py::arg("points"), py::arg("resolution") = 4);

    m.def("commands", &commands);
    m.def(
        "run_json",
        [](const std::string& command, const SystemDescription& d, const py::kwargs& kw) {
            const RunConfig config = with_overrides(d.config, kw);
            Report r;
            {
                py::gil_scoped_release release;
                r = run(command, d, config);
            }
            return r.json.dump();
        },
        py::arg("command"), py::arg("description"));
}
