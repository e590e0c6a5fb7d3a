#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "ca2d/bounds.hpp"
#include "ca2d/entropy.hpp"
#include "ca2d/errors.hpp"
#include "ca2d/geometry.hpp"
#include "ca2d/grid.hpp"
#include "ca2d/io.hpp"
#include "ca2d/lyapunov.hpp"
#include "ca2d/version.hpp"

namespace py = pybind11;
using namespace ca2d;

namespace {

RuleSpec make_rule(const std::string& source, int k) {
    if (source == "identity")
        return [] {
            RuleSpec r = parse_rule("alphabet = 2\nradius = 0\ntype = linear\nterm = (0,0) 1\n");
            r.name = "identity";
            return r;
        }();
    if (source == "F1" || source == "F2" || source == "F3" || source == "Fk")
        return builtin_rule(source, k);
    RuleSpec r = parse_rule(source);
    r.name = "custom";
    return r;
}

py::dict profile_dict(const DirectionProfile& p) {
    py::dict d;
    d["rule"] = p.rule_name;
    d["n"] = p.n;
    d["angles"] = p.angles;
    d["lambda_n"] = p.lambda_n;
    d["lambda_hat"] = p.lambda_hat;
    py::list anchors;
    for (const auto& [i, j] : p.anchor) anchors.append(py::make_tuple(i, j));
    d["anchors"] = anchors;
    return d;
}

std::vector<std::vector<int>> config_rows(const Configuration& c) {
    std::vector<std::vector<int>> rows;
    for (long iy = 0; iy < c.height(); ++iy) {
        std::vector<int> row;
        for (long ix = 0; ix < c.width(); ++ix) row.push_back(c.get(ix, iy));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "two-dimensional cellular automata: directional Lyapunov exponents, "
              "trajectory entropy and the shift-entropy bounds";
    m.attr("__version__") = CA2D_VERSION;

    py::register_exception<ca2d::parse_error>(m, "RuleParseError", PyExc_ValueError);
    py::register_exception<ca2d::domain_error>(m, "DomainError", PyExc_ValueError);

    m.def("rule_info", [](const std::string& source, int k) {
        RuleSpec r = make_rule(source, k);
        py::dict d;
        d["name"] = r.name;
        d["q"] = r.q;
        d["radius"] = r.radius;
        d["linear"] = r.is_linear();
        std::ostringstream h;
        h << std::hex << r.hash();
        d["hash"] = h.str();
        return d;
    }, py::arg("rule"), py::arg("k") = 1,
        "Resolve a builtin name ('F1', 'F2', 'F3', 'Fk', 'identity') or rule-file text.");

    m.def("step_random", [](const std::string& rule, long width, long height, int steps,
                            uint64_t seed, const std::string& boundary, int k) {
        RuleSpec r = make_rule(rule, k);
        Boundary b = boundary == "periodic" ? Boundary::periodic : Boundary::shrink;
        Configuration c = sample_configuration(MeasureSpec::make_uniform(r.q), width, height,
                                               seed, 0, 0, 0, b);
        return config_rows(step(c, r, steps));
    }, py::arg("rule"), py::arg("width"), py::arg("height"), py::arg("steps"),
        py::arg("seed") = 0, py::arg("boundary") = "shrink", py::arg("k") = 1,
        "Evolve a seeded random window; returns rows (bottom row first).");

    m.def("step_delta", [](const std::string& rule, long half, int steps, int k) {
        RuleSpec r = make_rule(rule, k);
        Configuration c(r.q, 2 * half + 1, 2 * half + 1, -half, -half, Boundary::shrink);
        c.put(0, 0, 1);
        Configuration out = step(c, r, steps);
        std::vector<std::pair<long, long>> ones;
        const LatticeRect v = out.valid_region();
        for (long j = v.j0; j <= v.j1; ++j)
            for (long i = v.i0; i <= v.i1; ++i)
                if (out.at(i, j)) ones.push_back({i, j});
        return ones;
    }, py::arg("rule"), py::arg("half"), py::arg("steps"), py::arg("k") = 1,
        "Cells holding 1 after evolving a single centered 1 (valid region only).");

    m.def("profile", [](const std::string& rule, int n, int angles, const std::string& strategy,
                        int samples, uint64_t seed, int k) {
        RuleSpec r = make_rule(rule, k);
        ProfileStrategy s = strategy == "sample" ? ProfileStrategy::sample : ProfileStrategy::exact;
        return profile_dict(profile(r, n, angles, s, samples, seed));
    }, py::arg("rule"), py::arg("n") = 64, py::arg("angles") = 64,
        py::arg("strategy") = "exact", py::arg("samples") = 32, py::arg("seed") = 0,
        py::arg("k") = 1, "Directional extent profile Lambda_n over an angle grid.");

    m.def("trajectory_rank", [](const std::string& rule, int p, int n, int k) {
        return trajectory_rank(make_rule(rule, k), p, n);
    }, py::arg("rule"), py::arg("p"), py::arg("n"), py::arg("k") = 1,
        "Rank over Z_q of the window-to-trajectory map; -log_q mu = rank.");

    m.def("afe_rank", [](const std::string& rule, int p_max, int n_max, int k) {
        EntropyEstimate est = afe_rank(make_rule(rule, k), p_max, n_max);
        return py::module_::import("json").attr("loads")(entropy_to_json(est).dump());
    }, py::arg("rule"), py::arg("p_max") = 6, py::arg("n_max") = 12, py::arg("k") = 1,
        "Rank-exact AFE estimate with the full (p, n) rank table.");

    m.def("shift_entropy", [](const std::vector<double>& weights) {
        CellSet one(std::vector<Cell>{{0, 0}});
        return shift_entropy(MeasureSpec::from_weights(weights), one).per_site_nats;
    }, py::arg("weights"), "Per-site entropy of a product measure, in nats.");

    m.def("bound_report", [](const std::string& rule, int n, int angles, int p_max, int n_max,
                             uint64_t seed, int k) {
        RuleSpec r = make_rule(rule, k);
        DirectionProfile p = profile(r, n, angles, ProfileStrategy::exact, 32, seed);
        EntropyEstimate afe = afe_rank(r, p_max, n_max);
        CellSet one(std::vector<Cell>{{0, 0}});
        ShiftEntropyEstimate hs = shift_entropy(MeasureSpec::make_uniform(r.q), one);
        BoundReport rep = assemble_report(afe, hs, p);
        return py::module_::import("json").attr("loads")(bound_report_to_json(rep).dump());
    }, py::arg("rule"), py::arg("n") = 64, py::arg("angles") = 64, py::arg("p_max") = 6,
        py::arg("n_max") = 12, py::arg("seed") = 0, py::arg("k") = 1,
        "Bounds, products and verdicts as a dict (machine-report schema).");

    m.def("surfaces", [](const std::string& rule, int n, int k) {
        RuleSpec r = make_rule(rule, k);
        DirectionProfile p = profile(r, n, n, ProfileStrategy::exact);
        py::dict d;
        d["T"] = static_cast<long>(surface_T(n, p).size());
        CellSet ts = surface_T_star(n, p);
        d["T_star"] = static_cast<long>(ts.size());
        TDoubleStarResult ds = surface_T_dstar(n, p);
        d["T_dstar"] = static_cast<long>(ds.cells.size());
        d["ratio"] = ds.ratio;
        d["R_area"] = surface_R(n, p).area;
        return d;
    }, py::arg("rule"), py::arg("n") = 16, py::arg("k") = 1,
        "Cell counts of T_n, T_n*, T_n** and the R_n area.");
}
