#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypertree/boundary.hpp"
#include "hypertree/census.hpp"
#include "hypertree/certificates.hpp"
#include "hypertree/complex_io.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/homology.hpp"
#include "hypertree/kernel.hpp"
#include "hypertree/records.hpp"
#include "hypertree/sampler.hpp"
#include "hypertree/torsion_stats.hpp"

namespace py = pybind11;
using namespace hypertree;

namespace {

using Faces = std::vector<std::array<int, 3>>;

// Big integers cross as Python ints via their decimal string.
py::int_ to_py(const BigInt& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

BigInt from_py(const py::int_& x) { return BigInt(py::str(x).cast<std::string>()); }

py::object to_py(const Rational& q) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(BigInt(q.get_num())), to_py(BigInt(q.get_den())));
}

py::list to_py(const std::vector<BigInt>& xs) {
  py::list out;
  for (const auto& x : xs) out.append(to_py(x));
  return out;
}

Complex2 make_complex(int n, const Faces& faces) {
  std::vector<Triangle> tris;
  tris.reserve(faces.size());
  for (const auto& f : faces) {
    for (int v : f)
      if (v < 1 || v > n) throw InputError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
    tris.push_back(make_triangle(f[0] - 1, f[1] - 1, f[2] - 1));
  }
  return Complex2(n, std::span<const Triangle>(tris));
}

Faces to_faces(const Complex2& c) {
  Faces out;
  for (const auto& t : c.triangles()) out.push_back({t.v[0] + 1, t.v[1] + 1, t.v[2] + 1});
  return out;
}

py::tuple complex_tuple(const Complex2& c) { return py::make_tuple(c.n(), to_faces(c)); }

py::dict report_dict(const DensityReport& r) {
  py::dict d;
  d["kind"] = r.kind;
  d["n"] = r.n;
  d["max_vertices"] = r.max_vertices;
  std::vector<int> v;
  for (int x : r.vertices) v.push_back(x + 1);
  d["vertices"] = v;
  d["f0"] = r.f0;
  d["f2"] = r.f2;
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  d["ratio"] = fraction(r.ratio.num, r.ratio.den);
  d["threshold"] = fraction(r.threshold.num, r.threshold.den);
  d["pass"] = r.pass;
  d["exhaustive"] = r.exhaustive;
  if (r.tetrahedron_free) d["tetrahedron_free"] = *r.tetrahedron_free;
  return d;
}

KernelBackend backend_for(const std::string& name, int n) {
  if (name == "auto") return default_backend(n);
  if (name == "rational") return KernelBackend::Rational;
  if (name == "float") return KernelBackend::Float;
  throw InputError("unknown backend '" + name + "' (auto, rational or float)");
}

}  // namespace

PYBIND11_MODULE(_hypertree, m) {
  m.doc() = "Random 2-trees: census, determinantal sampling, integral homology and density certificates";
  m.attr("__version__") = library_version();
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ResourceError& e) {
      py::set_error(PyExc_MemoryError, e.what());
    }
  });

  m.def("cone_tree", [](int n) { return complex_tuple(cone_tree(n)); }, py::arg("n"),
        "The cone 2-tree: all faces through vertex 1. Returns (n, faces).");
  m.def("projective_plane6", [] { return complex_tuple(projective_plane6()); },
        "The six-vertex real projective plane. Returns (n, faces).");
  m.def("read_complex", [](const std::string& path) { return complex_tuple(read_complex(path)); }, py::arg("path"));

  m.def("is_2tree", [](int n, const Faces& f) { return is_2tree(make_complex(n, f)); }, py::arg("n"),
        py::arg("faces"));
  m.def(
      "h1",
      [](int n, const Faces& f) {
        const auto h = h1(make_complex(n, f));
        return py::make_tuple(h.betti1, to_py(h.torsion.factors()));
      },
      py::arg("n"), py::arg("faces"), "Returns (betti1, invariant factors > 1).");
  m.def("h1_order", [](int n, const Faces& f) { return to_py(h1_order(make_complex(n, f))); }, py::arg("n"),
        py::arg("faces"));
  m.def(
      "smith_normal_form",
      [](const std::vector<std::vector<py::int_>>& rows) {
        const int r = static_cast<int>(rows.size());
        const int c = r ? static_cast<int>(rows[0].size()) : 0;
        IntMatrix mat(r, c);
        for (int i = 0; i < r; ++i) {
          if (static_cast<int>(rows[i].size()) != c) throw InputError("ragged matrix");
          for (int j = 0; j < c; ++j) mat.set(i, j, from_py(rows[i][j]));
        }
        const auto s = smith_normal_form(mat);
        return py::make_tuple(to_py(s.invariant_factors), s.rank);
      },
      py::arg("rows"), "Returns (nonzero diagonal entries, rank).");

  m.def(
      "census",
      [](int n, int threads, bool allow_larger) {
        CensusOptions o;
        o.threads = threads;
        o.allow_larger = allow_larger;
        o.keep_records = false;
        CensusResult r;
        {
          py::gil_scoped_release release;
          r = verify_kalai(n, o);
        }
        py::list hist;
        for (const auto& [key, e] : r.histogram) {
          py::dict row;
          row["factors"] = to_py(key);
          row["count"] = e.count;
          row["weighted"] = to_py(e.weighted);
          hist.append(row);
        }
        py::dict d;
        d["n"] = n;
        d["total"] = r.total;
        d["kalai_sum"] = to_py(r.kalai_sum);
        d["kalai_target"] = to_py(r.kalai_target);
        d["kalai_pass"] = r.kalai_pass();
        d["histogram"] = hist;
        d["p_trivial"] = to_py(trivial_h1_probability(r).exact);
        return d;
      },
      py::arg("n"), py::arg("threads") = 1, py::arg("allow_larger") = false);

  m.def(
      "containment_probability",
      [](int n, const Faces& faces, bool weighted, const std::string& via) {
        std::vector<int> idx;
        for (const auto& f : faces) idx.push_back(triangle_index(make_triangle(f[0] - 1, f[1] - 1, f[2] - 1), n));
        if (via == "kernel") {
          if (!weighted) throw InputError("the kernel gives the weighted measure only");
          return to_py(containment_probability(build_kernel(n, KernelBackend::Rational), idx).exact);
        }
        if (via != "census") throw InputError("via must be 'census' or 'kernel'");
        ContainmentCount c;
        {
          py::gil_scoped_release release;
          c = containment_counts(n, idx, weighted);
        }
        return to_py(c.probability);
      },
      py::arg("n"), py::arg("faces"), py::arg("weighted") = true, py::arg("via") = "census",
      "P(faces all in T), exact, under the |H_1|^2 measure (weighted) or uniformly over 2-trees.");

  m.def(
      "kernel_entry",
      [](int n, const std::array<int, 3>& s, const std::array<int, 3>& t) {
        const auto k = build_kernel(n, KernelBackend::Rational);
        return to_py(k.entry_exact(triangle_index(make_triangle(s[0] - 1, s[1] - 1, s[2] - 1), n),
                                   triangle_index(make_triangle(t[0] - 1, t[1] - 1, t[2] - 1), n)));
      },
      py::arg("n"), py::arg("s"), py::arg("t"), "Exact correlation kernel entry K[s][t].");

  m.def(
      "sample",
      [](int n, std::size_t count, const std::string& method, std::uint64_t seed, std::uint64_t mh_steps,
         const std::string& backend, int workers) {
        BatchOptions o;
        o.backend = backend_for(backend, n);
        o.mh_steps = mh_steps;
        o.workers = workers;
        const Method meth = parse_method(method);
        std::vector<SampleRecord> recs;
        {
          py::gil_scoped_release release;
          recs = sample_batch(n, count, meth, seed, o);
        }
        py::list out;
        for (const auto& r : recs) {
          py::dict d;
          d["n"] = r.n;
          d["seed"] = r.seed;
          d["method"] = to_string(r.method);
          d["faces"] = to_faces(r.complex);
          d["h1_factors"] = to_py(r.h1_factors);
          d["h1_order"] = to_py(r.h1_order);
          out.append(d);
        }
        return out;
      },
      py::arg("n"), py::arg("count") = 1, py::arg("method") = "dpp", py::arg("seed") = 1,
      py::arg("mh_steps") = 1000, py::arg("backend") = "auto", py::arg("workers") = 1);

  m.def(
      "densest_subcomplex",
      [](int n, const Faces& f, int max_vertices, const std::string& threshold, std::uint64_t node_budget) {
        ScanOptions o;
        o.node_budget = node_budget;
        return report_dict(densest_subcomplex(make_complex(n, f), max_vertices, parse_fraction(threshold), o));
      },
      py::arg("n"), py::arg("faces"), py::arg("max_vertices") = kDefaultScanVertices, py::arg("threshold") = "3/2",
      py::arg("node_budget") = 20'000'000);
  m.def(
      "hyperbolicity_certificate",
      [](int n, const Faces& f, int max_vertices) {
        return report_dict(hyperbolicity_certificate(make_complex(n, f), max_vertices));
      },
      py::arg("n"), py::arg("faces"), py::arg("max_vertices") = kDefaultScanVertices);
  m.def(
      "asphericity_certificate",
      [](int n, const Faces& f, int max_vertices) {
        return report_dict(asphericity_certificate(make_complex(n, f), max_vertices));
      },
      py::arg("n"), py::arg("faces"), py::arg("max_vertices") = kDefaultScanVertices);
  m.def(
      "union_bound",
      [](int n, int max_vertices) {
        const auto ub = union_bound_value(n, max_vertices);
        return py::make_tuple(ub.value, to_py(ub.exact));
      },
      py::arg("n"), py::arg("max_vertices") = 6, "Returns (float value, exact Fraction).");

  m.def("aut_order", [](const py::int_& p, std::vector<int> parts) { return to_py(aut_order({from_py(p), parts})); },
        py::arg("p"), py::arg("partition"));
  m.def("cohen_lenstra_pmf",
        [](const py::int_& p, std::vector<int> parts) { return cohen_lenstra_pmf({from_py(p), parts}); },
        py::arg("p"), py::arg("partition"));
  m.def(
      "expected_torsion_bounds",
      [](int n) {
        const auto b = expected_torsion_bounds(n);
        py::dict d;
        d["log_stated_lower"] = b.log_stated_lower;
        d["log_proof_lower"] = b.log_proof_lower;
        d["log_upper"] = b.log_upper;
        return d;
      },
      py::arg("n"), "Natural logs of the bounds on E|H_1|.");
  m.def(
      "power_mean_check",
      [](const std::vector<double>& xs) {
        const auto r = power_mean_check(xs);
        return py::make_tuple(r.lhs, r.rhs, r.holds);
      },
      py::arg("xs"), "Returns (sum x^3, (sum x^2)^{3/2}/sqrt(k), holds).");
}
