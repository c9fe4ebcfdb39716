#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "../tools/run.hpp"
#include "boolpow/factorization.hpp"
#include "boolpow/free_algebra.hpp"
#include "boolpow/io.hpp"
#include "boolpow/sampling.hpp"

namespace py = pybind11;
using namespace boolpow;

namespace {

py::object to_py(const io::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

io::Json from_py(const py::object& o) {
  return io::Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::dict decomposition_dict(const DecompositionReport& r) {
  py::dict d;
  d["free_size"] = r.free_size;
  d["r_size"] = r.r_size;
  d["s_size"] = r.s_size;
  d["exponent"] = r.exponent;
  d["first_factor"] = r.first_factor;
  d["second_factor"] = r.second_factor;
  d["restriction_injective"] = r.restriction_injective;
  d["first_is_full_power"] = r.first_is_full_power;
  d["is_product"] = r.is_product;
  d["verified"] = r.verified();
  return d;
}

}  // namespace

PYBIND11_MODULE(_boolpow, m) {
  m.doc() = "Filtered Boolean powers of finite algebras";

  static py::exception<Error> error(m, "BoolpowError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(errc_name(e.code())), e.what()).ptr());
    }
  });

  py::class_<FiniteAlgebra>(m, "Algebra")
      .def_property_readonly("size", &FiniteAlgebra::size)
      .def_property_readonly("op_names",
                             [](const FiniteAlgebra& a) {
                               std::vector<std::string> out;
                               for (const auto& op : a.ops()) out.push_back(op.name);
                               return out;
                             })
      .def("apply", [](const FiniteAlgebra& a, const std::string& op, const std::vector<int>& args) {
        int i = a.op_index(op);
        require(i >= 0, Errc::InvalidArgument, "no operation named '" + op + "'");
        return a.apply(static_cast<std::size_t>(i), args);
      })
      .def("to_json", [](const FiniteAlgebra& a) { return to_py(io::to_json(a)); });

  m.def("builtin_algebra", &builtin_algebra, py::arg("name"));
  m.def("builtin_names", &builtin_names);
  m.def("algebra_from_json", [](const py::object& o) { return io::load_algebra(from_py(o)); });
  m.def("is_simple", &is_simple);
  m.def("is_abelian", [](const FiniteAlgebra& a) { return is_abelian(a); });
  m.def("idempotents", &idempotents);
  m.def("automorphisms", &automorphisms);
  m.def("subalgebras", [](const FiniteAlgebra& a) { return subalgebras(a); });
  m.def("malcev_term", [](const FiniteAlgebra& a) -> std::optional<std::string> {
    auto t = find_malcev_term(a);
    if (!t) return std::nullopt;
    return render_term(a, *t);
  });

  py::class_<PowerContext>(m, "PowerContext")
      .def(py::init([](const FiniteAlgebra& a, const std::vector<int>& filters) {
             return PowerContext::make(a, PointContext::standard(static_cast<int>(filters.size())), filters);
           }),
           py::arg("algebra"), py::arg("filters"))
      .def_property_readonly("filters", [](const PowerContext& c) { return c.filters; })
      .def_property_readonly("algebra", [](const PowerContext& c) { return c.alg(); })
      .def("to_json", [](const PowerContext& c) { return to_py(io::to_json(c)); })
      .def("__eq__", [](const PowerContext& a, const PowerContext& b) { return a == b; });

  py::class_<PowerElement>(m, "PowerElement")
      .def("at_word", &PowerElement::at_word, py::arg("word"))
      .def_property_readonly("depth", &PowerElement::depth)
      .def("to_json", [](const PowerElement& f) { return to_py(io::to_json(f)); })
      .def("__eq__", [](const PowerElement& a, const PowerElement& b) { return a == b; })
      .def("__hash__", [](const PowerElement& f) { return py::hash(py::str(io::to_json(f).dump())); });

  m.def("element_from_json", [](const PowerContext& c, const py::object& o) {
    return io::element_from_json(c, from_py(o));
  });
  m.def("enumerate_elements",
        [](const PowerContext& c, int depth, std::size_t limit) { return enumerate_elements(c, depth, limit); },
        py::arg("ctx"), py::arg("depth"), py::arg("limit") = std::size_t{1} << 20);
  m.def("apply_operation", [](const PowerContext& c, const std::string& op, const std::vector<PowerElement>& args) {
    int i = c.alg().op_index(op);
    require(i >= 0, Errc::InvalidArgument, "no operation named '" + op + "'");
    return apply_operation(c, static_cast<std::size_t>(i), args);
  });
  m.def("congruence_related", [](const PowerElement& f, const PowerElement& g, const PowerElement& x,
                                 const PowerElement& y) { return related(principal_congruence(f, g), x, y); },
        "whether (x, y) lies in the congruence generated by (f, g)");
  m.def("reduce_idempotents", [](const PowerContext& c) {
    auto r = reduce_idempotents(c);
    py::dict d;
    d["reduced"] = r.reduced;
    d["class_of"] = r.class_of;
    d["representative"] = r.representative;
    d["alpha"] = r.alpha;
    d["apply"] = py::cpp_function([w = r.witness](const PowerElement& f) { return w.apply(f); });
    return d;
  });

  py::class_<FreeAlgebraRep>(m, "FreeAlgebra")
      .def_property_readonly("rank", [](const FreeAlgebraRep& f) { return f.k; })
      .def("__len__", &FreeAlgebraRep::size)
      .def("table", [](const FreeAlgebraRep& f, std::size_t i) {
        require(i < f.size(), Errc::OutOfRange, "element index out of range");
        return f.elements[i].table;
      })
      .def("witness", [](const FreeAlgebraRep& f, std::size_t i) {
        require(i < f.size(), Errc::OutOfRange, "element index out of range");
        std::vector<std::string> names;
        for (int v = 0; v < f.k; ++v) names.push_back("x" + std::to_string(v));
        return render_term(f.algebra, f.witness(i), names);
      });
  m.def("clone_generate", &clone_generate, py::arg("algebra"), py::arg("k"), py::arg("budget") = std::size_t{1} << 16);
  m.def("transversal_R", &transversal_R);
  m.def("compute_Sk", &compute_Sk);
  m.def("theta_class", &theta_class);
  m.def("verify_Fk_decomposition", [](const FreeAlgebraRep& f) { return decomposition_dict(verify_Fk_decomposition(f)); });
  m.def("theta_class_is_power_truncation", [](const FreeAlgebraRep& f, std::size_t e) {
    auto w = theta_class_is_power_truncation(f, e);
    py::dict d;
    d["filters"] = w.filters;
    d["free_tuples"] = w.free_tuples;
    d["members"] = w.members;
    d["verified"] = w.verified;
    return d;
  });
  m.def("loop_ring_split", [](const FreeAlgebraRep& f) {
    auto s = loop_ring_split(f);
    py::dict d;
    d["identity"] = s.identity;
    d["normal"] = s.normal;
    d["complement"] = s.complement;
    d["y_generators"] = s.y_generators;
    d["trivial_intersection"] = s.trivial_intersection;
    d["product_is_everything"] = s.product_is_everything;
    d["verified"] = s.verified();
    return d;
  });

  py::class_<EPHomeo>(m, "Homeo")
      .def("extends_to_X", &EPHomeo::extends_to_X)
      .def("fixes_points", &EPHomeo::fixes_points)
      .def("inverse", &EPHomeo::inverse)
      .def("to_json", [](const EPHomeo& h) { return to_py(io::to_json(h)); })
      .def("__mul__", [](const EPHomeo& a, const EPHomeo& b) { return compose(a, b); })
      .def("__eq__", [](const EPHomeo& a, const EPHomeo& b) { return a == b; });
  m.def("random_homeo", [](int points, std::uint64_t seed) {
    Rng rng(seed);
    return random_homeo(PointContext::standard(points), rng);
  });
  m.def("homeo_from_json", [](int points, const py::object& o) {
    return io::homeo_from_json(PointContext::standard(points), from_py(o));
  });
  m.def("two_ends_exchange", &two_ends_exchange);
  m.def("pigeonhole_factor", [](const EPHomeo& sigma) {
    auto rep = pigeonhole_factor(sigma, good_partition(sigma.domain()));
    py::dict d;
    d["i"] = rep.i;
    d["j"] = rep.j;
    d["factors"] = py::make_tuple(rep.factors.sigma1, rep.factors.sigma2, rep.factors.sigma3);
    d["verified"] = rep.verified();
    return d;
  }, "factor sigma through the stabilizers of a good partition of its context");

  m.def("command_names", &cli::command_names);
  m.def("run", [](const std::string& command, const py::dict& options) {
    cli::RunConfig cfg;
    cfg.command = command;
    for (auto [k, v] : options) {
      auto key = k.cast<std::string>();
      if (key == "builtin") cfg.builtin = v.cast<std::string>();
      else if (key == "alg") cfg.alg = v.cast<std::string>();
      else if (key == "rank") cfg.rank = v.cast<int>();
      else if (key == "depth") cfg.depth = v.cast<int>();
      else if (key == "budget") cfg.budget = v.cast<std::size_t>();
      else if (key == "seed") cfg.seed = v.cast<std::uint64_t>();
      else if (key == "points") cfg.points = v.cast<int>();
      else if (key == "filters") cfg.filters = v.cast<std::vector<int>>();
      else if (key == "steps") cfg.steps = v.cast<int>();
      else if (key == "limit") cfg.limit = v.cast<int>();
      else if (key == "phi") cfg.phi = v.cast<std::string>();
      else if (key == "psi") cfg.psi = v.cast<std::string>();
      else if (key == "sigma") cfg.sigma = v.cast<std::string>();
      else if (key == "partition") cfg.partition = v.cast<std::string>();
      else if (key == "gens") cfg.gens = v.cast<std::string>();
      else fail(Errc::InvalidArgument, "unknown option '" + key + "'");
    }
    return to_py(cli::run(cfg));
  }, py::arg("command"), py::arg("options") = py::dict());
}
