#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "movcat/cli.hpp"
#include "movcat/movability.hpp"
#include "movcat/workspace.hpp"

namespace py = pybind11;
using namespace movcat;

namespace {

struct PyCategory {
  CategoryRef ref;
  const FinCategory& operator*() const { return *ref; }
};

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ObjId object_of(const FinCategory& c, const std::string& name) {
  if (auto o = c.find_object(name)) return *o;
  throw Error(Errc::unknown_object, name);
}

MorId morphism_of(const FinCategory& c, const std::string& name) {
  if (auto m = c.find_morphism(name)) return *m;
  throw Error(Errc::unknown_morphism, name);
}

std::vector<std::string> names(const FinCategory& c, std::span<const MorId> ms) {
  std::vector<std::string> out;
  for (MorId m : ms) out.push_back(c.name(m));
  return out;
}

py::dict decision(const FinCategory& c, const Decision& d) {
  py::dict out;
  out["holds"] = static_cast<bool>(d);
  out["witness"] = d ? to_py(to_json(c, *d.witness)) : py::none();
  py::list cert;
  for (const auto& f : d.certificate) cert.append(to_py(to_json(c, f)));
  out["certificate"] = cert;
  return out;
}

Witness witness_of(const FinCategory& c, const py::dict& w) {
  Witness out;
  out.target = object_of(c, w["target"].cast<std::string>());
  out.mover = object_of(c, w["mover"].cast<std::string>());
  out.movability = morphism_of(c, w["movability"].cast<std::string>());
  for (const auto& [p, u] : w["factors"].cast<std::map<std::string, std::string>>())
    out.factors[morphism_of(c, p)] = morphism_of(c, u);
  return out;
}

std::vector<std::string> diagnostics(const Diagnostics& d) {
  std::vector<std::string> out;
  for (const auto& i : d.items()) out.push_back(i.str());
  return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  static py::handle error = py::exception<Error>(m, "MovcatError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("diagnostics") = diagnostics(e.details());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<PyCategory>(m, "Category")
      .def(py::init([](std::vector<std::string> objects,
                       std::vector<std::tuple<std::string, std::string, std::string>> morphisms,
                       std::map<std::string, std::string> identities,
                       std::vector<std::tuple<std::string, std::string, std::string>> compositions) {
             CategoryDescription raw;
             raw.objects = std::move(objects);
             for (auto& [n, d, c] : morphisms) raw.morphisms.push_back({n, d, c});
             for (auto& [o, i] : identities) raw.identities.emplace_back(o, i);
             for (auto& [g, f, gf] : compositions) raw.compositions.push_back({g, f, gf});
             return PyCategory{share(validate_category(raw))};
           }),
           py::arg("objects"), py::arg("morphisms"), py::arg("identities"), py::arg("compositions"))
      .def_property_readonly("objects", [](const PyCategory& c) { return c.ref->table().objects; })
      .def_property_readonly("morphisms",
                             [](const PyCategory& c) {
                               std::vector<std::string> out;
                               for (const auto& a : c.ref->table().arrows) out.push_back(a.name);
                               return out;
                             })
      .def("dom", [](const PyCategory& c, const std::string& f) { return c.ref->name(c.ref->dom(morphism_of(*c, f))); })
      .def("cod", [](const PyCategory& c, const std::string& f) { return c.ref->name(c.ref->cod(morphism_of(*c, f))); })
      .def("identity", [](const PyCategory& c, const std::string& o) { return c.ref->name(c.ref->identity(object_of(*c, o))); })
      .def("compose",
           [](const PyCategory& c, const std::string& g, const std::string& f) {
             return c.ref->name(c.ref->compose(morphism_of(*c, g), morphism_of(*c, f)));
           },
           "g after f")
      .def("hom", [](const PyCategory& c, const std::string& a, const std::string& b) {
        return names(*c, c.ref->hom(object_of(*c, a), object_of(*c, b)));
      })
      .def("dual", [](const PyCategory& c) { return PyCategory{share(dual(*c))}; })
      .def("to_text", [](const PyCategory& c, const std::string& name) { return print_category(name, c.ref->describe()); },
           py::arg("name"))
      .def("__len__", [](const PyCategory& c) { return c.ref->morphism_count(); })
      .def("__repr__", [](const PyCategory& c) {
        return "<Category " + std::to_string(c.ref->object_count()) + " objects, " +
               std::to_string(c.ref->morphism_count()) + " morphisms>";
      });

  m.def("decide",
        [](const PyCategory& c, const std::string& x, bool uniform) {
          const ObjId o = object_of(*c, x);
          return decision(*c, uniform ? decide_uniformly_movable(*c, o) : decide_movable(*c, o));
        },
        py::arg("category"), py::arg("object"), py::arg("uniform") = true);
  m.def("decide_co",
        [](const PyCategory& c, const std::string& x, bool uniform) {
          return decision(*c, decide_co_movable(*c, object_of(*c, x), uniform));
        },
        py::arg("category"), py::arg("object"), py::arg("uniform") = true);
  m.def("decide_category",
        [](const PyCategory& c, bool uniform) {
          std::map<std::string, bool> out;
          for (const auto& d : decide_category(*c, uniform).objects) out[c.ref->name(d.target)] = static_cast<bool>(d);
          return out;
        },
        py::arg("category"), py::arg("uniform") = true);
  m.def("verify_witness",
        [](const PyCategory& c, const py::dict& w, bool uniform) {
          return diagnostics(verify_witness(*c, witness_of(*c, w), uniform));
        },
        py::arg("category"), py::arg("witness"), py::arg("uniform") = true,
        "Empty list when the witness checks out.");

  py::class_<Workspace>(m, "Workspace")
      .def_static("parse", &parse_workspace, py::arg("text"))
      .def_static("load", &load_workspace, py::arg("path"))
      .def_static("fixtures", [] { return load_workspace(fixture_dir() + "/fixtures.ws"); })
      .def_property_readonly("categories",
                             [](const Workspace& ws) {
                               std::vector<std::string> out;
                               for (const auto& c : ws.categories) out.push_back(c.name);
                               return out;
                             })
      .def("category", [](const Workspace& ws, const std::string& name) { return PyCategory{ws.category(name)}; })
      .def("to_text", &print_workspace)
      .def("run", [](const Workspace& ws, std::vector<std::string> args) {
        const CommandResult r = run_command(ws, args);
        return py::make_tuple(r.status, r.output());
      });

  m.def("run", [](std::vector<std::string> args) {
    const CommandResult r = run_cli(args);
    return py::make_tuple(r.status, r.output());
  }, "Full command line without the program name; returns (exit status, output).");
}
