// python bindings: thin wrappers over the C++ core.  Exact integers cross
// the boundary as python ints, exact rationals as fractions.Fraction, and
// report rows as plain dicts.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ffdist/campaign.hpp"
#include "ffdist/charsums.hpp"
#include "ffdist/checks.hpp"
#include "ffdist/config.hpp"
#include "ffdist/counts.hpp"
#include "ffdist/error.hpp"
#include "ffdist/field.hpp"
#include "ffdist/forms.hpp"
#include "ffdist/graphs.hpp"
#include "ffdist/pointset.hpp"
#include "ffdist/vectorspace.hpp"

namespace py = pybind11;
using namespace ffdist;

namespace {

py::object to_int(const Int& v) {
    PyObject* o = PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    if (!o) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(o);
}

py::object to_fraction(const Rat& v) {
    return py::module_::import("fractions").attr("Fraction")(v.get_str());
}

py::dict report_dict(const CountReport& rep) {
    py::dict d;
    d["raw"] = to_int(rep.raw);
    d["normalized"] = to_fraction(rep.normalized);
    d["q_power"] = rep.q_power;
    d["engine"] = rep.engine;
    d["work"] = rep.work;
    return d;
}

py::dict sum_dict(const SumValue& s) {
    py::dict d;
    d["value"] = s.value;
    d["magnitude"] = s.magnitude;
    return d;
}

py::dict check_dict(const TheoremCheck& c) {
    py::dict d;
    d["theorem"] = c.theorem_id;
    d["hypothesis_satisfied"] = c.hypothesis_satisfied;
    d["holds"] = c.holds;
    d["advisory"] = c.advisory;
    d["exact"] = c.exact;
    d["lhs"] = c.lhs;
    d["rhs"] = c.rhs;
    d["margin"] = c.margin;
    d["witness"] = c.witness;
    d["work"] = c.work;
    d["note"] = c.note;
    return d;
}

py::dict record_dict(const CheckRecord& r) {
    py::dict d;
    d["spec"] = r.spec;
    d["check"] = r.check;
    d["p"] = r.p;
    d["k"] = r.k;
    d["d"] = r.d;
    d["q"] = r.q;
    d["form"] = r.form;
    d["set"] = r.set;
    d["status"] = r.status;
    d["error"] = r.error;
    d["result"] = check_dict(r.result);
    return d;
}

}  // namespace

PYBIND11_MODULE(_ffdist, m) {
    m.doc() = "distance functions, character sums and embedding counts over GF(p^k)";

    // translators run newest-first, so the base goes in before the leaves
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigParseError>(m, "ConfigParseError", PyExc_ValueError);
    py::register_exception<BudgetExceededError>(m, "BudgetExceededError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<FiniteField>(m, "Field", "GF(p^k) with p odd; elements are indices in [0, q)")
        .def(py::init<long, int>(), py::arg("p"), py::arg("k") = 1)
        .def_property_readonly("p", &FiniteField::p)
        .def_property_readonly("k", &FiniteField::k)
        .def_property_readonly("q", &FiniteField::q)
        .def_property_readonly("modulus", &FiniteField::modulus_str)
        .def("add", &FiniteField::add)
        .def("sub", &FiniteField::sub)
        .def("mul", &FiniteField::mul)
        .def("neg", &FiniteField::neg)
        .def("inv", &FiniteField::inv)
        .def("pow", &FiniteField::pow)
        .def("frobenius", &FiniteField::frobenius)
        .def("from_integer", &FiniteField::from_integer)
        .def("trace", &FiniteField::trace)
        .def("eta", &FiniteField::eta, "quadratic character: 0 at 0, +1 on squares, -1 off")
        .def("sqrt",
             [](const FiniteField& F, uint32_t a) -> py::object {
                 uint32_t r = F.sqrt(a);
                 if (r == UINT32_MAX) return py::none();
                 return py::cast(r);
             })
        .def("least_nonsquare", &FiniteField::least_nonsquare)
        .def("__repr__", [](const FiniteField& F) {
            return "Field(" + std::to_string(F.p()) + ", " + std::to_string(F.k()) + ")";
        });

    py::class_<VectorSpace>(m, "Space", "F^d with points encoded as base-q indices")
        .def(py::init<const FiniteField&, int>(), py::arg("field"), py::arg("d"),
             py::keep_alive<1, 2>())
        .def_property_readonly("field", &VectorSpace::field,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("dim", &VectorSpace::dim)
        .def_property_readonly("points", &VectorSpace::points)
        .def("encode", &VectorSpace::encode)
        .def("decode", &VectorSpace::decode)
        .def("add", &VectorSpace::add)
        .def("sub", &VectorSpace::sub)
        .def("neg", &VectorSpace::neg_point)
        .def("dot", &VectorSpace::dot)
        .def("__repr__", [](const VectorSpace& V) {
            return "Space(q=" + std::to_string(V.field().q()) +
                   ", d=" + std::to_string(V.dim()) + ")";
        });

    py::class_<DistanceFn>(m, "Form",
                           "non-degenerate bilinear or quadratic distance-type function")
        .def_property_readonly("kind",
                               [](const DistanceFn& fn) {
                                   return fn.kind() == FormKind::quadratic ? "quadratic"
                                                                           : "bilinear";
                               })
        .def_property_readonly("spec", &DistanceFn::spec)
        .def("phi", &DistanceFn::phi, py::arg("x"), py::arg("y"),
             "phi(x, y); for quadratic forms this is Q(x - y)")
        .def("quad", &DistanceFn::quad, py::arg("v"), "Q(v); quadratic forms only")
        .def("sphere",
             [](const DistanceFn& fn, uint32_t t) { return fn.sphere(t).points; },
             py::arg("t"), "sorted point indices of the sphere {x : Q(x) = t}")
        .def("sphere_sizes",
             [](const DistanceFn& fn) {
                 std::vector<uint64_t> out;
                 const long q = fn.space().field().q();
                 out.reserve(static_cast<std::size_t>(q));
                 for (long t = 0; t < q; ++t)
                     out.push_back(fn.sphere(static_cast<uint32_t>(t)).points.size());
                 return out;
             },
             "|S_t| for t = 0..q-1; quadratic forms only")
        .def("__repr__", [](const DistanceFn& fn) { return "Form(\"" + fn.spec() + "\")"; });

    m.def(
        "form",
        [](const VectorSpace& V, const std::string& spec) { return parse_form(V, spec); },
        py::arg("space"), py::arg("spec"), py::keep_alive<0, 1>(),
        "parse a form spec, e.g. \"bilinear:dot\", \"quadratic:diag=1,1,a\", "
        "\"bilinear:matrix=[[1,0],[0,1]]\"");

    py::class_<PointSet>(m, "PointSet")
        .def_property_readonly("descriptor", &PointSet::descriptor)
        .def("points", &PointSet::points, py::return_value_policy::copy)
        .def("contains", &PointSet::contains)
        .def("__contains__", &PointSet::contains)
        .def("__len__", &PointSet::size)
        .def("__repr__",
             [](const PointSet& s) { return "PointSet(\"" + s.descriptor() + "\")"; });

    m.def(
        "point_set",
        [](const VectorSpace& V, const std::string& desc, const DistanceFn* fn) {
            return parse_pointset(V, fn, desc);
        },
        py::arg("space"), py::arg("descriptor"), py::arg("form") = nullptr,
        py::keep_alive<0, 1>(),
        "parse a point-set descriptor: full | random:count:seed | sphere:t | affine:j:c | "
        "explicit:i,... | complement(d) | union(a;b) | inter(a;b)");

    py::class_<DistanceGraph>(m, "Graph")
        .def_property_readonly("vertices", &DistanceGraph::vertices)
        .def_property_readonly("edges",
                               [](const DistanceGraph& g) {
                                   std::vector<std::tuple<int, int, uint32_t>> out;
                                   for (const Edge& e : g.edges())
                                       out.emplace_back(e.u, e.v, e.label);
                                   return out;
                               })
        .def("__repr__", [](const DistanceGraph& g) {
            return "Graph(vertices=" + std::to_string(g.vertices()) +
                   ", edges=" + std::to_string(g.edges().size()) + ")";
        });

    m.def("graph", &make_graph, py::arg("shape"), py::arg("label"),
          "build a labeled shape: path:k, cycle:n, star:r, matching:m, complete:n");

    // counters; raw counts are exact python ints, normalized counts Fractions
    m.def(
        "count_graph",
        [](const DistanceFn& fn, const DistanceGraph& g, const PointSet& A, bool distinct,
           uint64_t budget) { return report_dict(count_graph(fn, g, A, distinct, budget)); },
        py::arg("form"), py::arg("graph"), py::arg("set"), py::arg("distinct") = false,
        py::arg("budget") = 0);
    m.def(
        "count_paths",
        [](const DistanceFn& fn, const std::vector<uint32_t>& labels, const PointSet& A,
           uint64_t budget) { return report_dict(count_paths(fn, labels, A, budget)); },
        py::arg("form"), py::arg("labels"), py::arg("set"), py::arg("budget") = 0);
    m.def(
        "count_tree",
        [](const DistanceFn& fn, const DistanceGraph& tree, const PointSet& A, int root,
           uint64_t budget) {
            TreeCount tc = count_tree(fn, tree, A, root, budget);
            py::dict d = report_dict(tc.report);
            d["root"] = tc.root;
            py::list rc;
            for (const Int& v : tc.root_counts) rc.append(to_int(v));
            d["root_counts"] = rc;
            return d;
        },
        py::arg("form"), py::arg("tree"), py::arg("set"), py::arg("root") = 0,
        py::arg("budget") = 0);
    m.def(
        "count_cycles",
        [](const DistanceFn& fn, int n, uint32_t label, const PointSet& A, uint64_t budget,
           const std::string& engine) {
            return report_dict(count_cycles(fn, n, label, A, budget, engine));
        },
        py::arg("form"), py::arg("n"), py::arg("label"), py::arg("set"), py::arg("budget") = 0,
        py::arg("engine") = "auto");

    // character sums
    m.def(
        "gauss_sum", [](const FiniteField& F) { return sum_dict(gauss_sum(F)); },
        py::arg("field"));
    m.def(
        "kloosterman_sum",
        [](const FiniteField& F, uint32_t a, uint32_t b) {
            return sum_dict(kloosterman_sum(F, a, b));
        },
        py::arg("field"), py::arg("a"), py::arg("b"));
    m.def(
        "salie_sum",
        [](const FiniteField& F, uint32_t a, uint32_t b) {
            return sum_dict(salie_sum(F, a, b));
        },
        py::arg("field"), py::arg("a"), py::arg("b"));
    m.def(
        "sphere_fourier",
        [](const DistanceFn& fn, uint32_t t, uint32_t m_) {
            FourierValue f = sphere_fourier(fn, t, m_);
            py::dict d;
            d["value"] = f.value;
            d["magnitude"] = f.magnitude;
            return d;
        },
        py::arg("form"), py::arg("t"), py::arg("m"),
        "Fourier coefficient of the sphere S_t at frequency m");
    m.def(
        "quadratic_weil",
        [](const DistanceFn& fn, uint32_t ell, uint32_t xi, bool factored) {
            return quadratic_weil(fn, ell, xi, factored).match;
        },
        py::arg("form"), py::arg("ell"), py::arg("xi") = 0, py::arg("factored") = false,
        "True iff the enumerated quadratic exponential sum equals its closed form");

    // check campaign
    m.def(
        "run_check",
        [](const std::string& spec, uint64_t budget, uint64_t seed) {
            CheckRunner runner;
            py::list out;
            for (const CheckRecord& r : runner.run(spec, budget, seed)) out.append(record_dict(r));
            return out;
        },
        py::arg("spec"), py::arg("budget") = uint64_t{400000000}, py::arg("seed") = uint64_t{1},
        "run one instance line, e.g. \"check=gauss; p=5; k=1\"");

    m.def(
        "verify",
        [](const py::kwargs& kw) {
            Config cfg;
            for (auto item : kw)
                cfg.set(py::cast<std::string>(py::str(item.first)),
                        py::cast<std::string>(py::str(item.second)));
            CampaignResult res = run_campaign(cfg);
            CampaignSummary s = summarize(res);
            py::dict sum;
            sum["rows"] = s.rows;
            sum["holds"] = s.holds;
            sum["hypothesis_rows"] = s.hypothesis_rows;
            sum["hypothesis_holds"] = s.hypothesis_holds;
            sum["advisory_rows"] = s.advisory_rows;
            sum["hard_failures"] = s.hard_failures;
            sum["advisory_failures"] = s.advisory_failures;
            sum["unmet_failures"] = s.unmet_failures;
            sum["exact_rows"] = s.exact_rows;
            sum["budget_rows"] = s.budget_rows;
            sum["error_rows"] = s.error_rows;
            sum["work"] = s.work;
            py::list rows;
            for (const CheckRecord& r : res.records) rows.append(record_dict(r));
            std::ostringstream js, cs, su;
            write_jsonl(res, js);
            write_csv(res, cs);
            write_summary(res, su);
            py::dict out;
            out["summary"] = sum;
            out["records"] = rows;
            out["jsonl"] = js.str();
            out["csv"] = cs.str();
            out["text"] = su.str();
            return out;
        },
        "run a verification campaign; keys as in the CLI: suite=, theorem=, q=, d=, form=, "
        "set=, label=, budget=, seed=, jobs=, only=, instances=");
}
