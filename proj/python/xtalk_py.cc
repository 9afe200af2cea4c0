#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "xtalk/cli.h"
#include "xtalk/errors.h"
#include "xtalk/report.h"
#include "xtalk/sweep.h"

namespace py = pybind11;

namespace pybind11::detail {

// Rationals cross the boundary as fractions.Fraction; int, str and Fraction are accepted.
template <>
struct type_caster<xtalk::Rational> {
    PYBIND11_TYPE_CASTER(xtalk::Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (!src || PyFloat_Check(src.ptr()) || PyBool_Check(src.ptr())) {
            return false;
        }
        if (!PyLong_Check(src.ptr()) && !PyUnicode_Check(src.ptr()) &&
            !isinstance(src, module_::import("fractions").attr("Fraction"))) {
            return false;
        }
        try {
            value = xtalk::Rational::parse(str(src).cast<std::string>());
        } catch (const xtalk::ArithmeticError &) {
            return false;
        }
        return true;
    }

    static handle cast(const xtalk::Rational &r, return_value_policy, handle) {
        return module_::import("fractions").attr("Fraction")(r.to_fraction_string()).release();
    }
};

}  // namespace pybind11::detail

namespace {

using namespace xtalk;

py::dict matrix_dict(const Matrix &m) {
    py::list rows;
    for (size_t i = 0; i < m.dim(); ++i) {
        py::list row;
        for (size_t k = 0; k < m.dim(); ++k) {
            row.append(py::cast(m(i, k)));
        }
        rows.append(row);
    }
    py::dict d;
    d["labels"] = m.labels();
    d["entries"] = rows;
    return d;
}

std::array<Rational, 4> islands(const std::vector<Rational> &c_g) {
    if (c_g.size() != 4) {
        throw DimensionError("c_g needs four island capacitances");
    }
    return {c_g[0], c_g[1], c_g[2], c_g[3]};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact capacitive drive-crosstalk analysis";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<ArithmeticError>(m, "ArithmeticError", error);
    py::register_exception<DimensionError>(m, "DimensionError", error);
    py::register_exception<UnknownLabelError>(m, "UnknownLabelError", error);
    auto singular = py::register_exception<SingularMatrixError>(m, "SingularMatrixError", error);
    py::register_exception<FloatingSubcircuitError>(m, "FloatingSubcircuitError", singular);
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<NetlistError>(m, "NetlistError", error);
    py::register_exception<ZeroTargetWeightError>(m, "ZeroTargetWeightError", error);
    py::register_exception<TopologyMismatchError>(m, "TopologyMismatchError", error);

    py::class_<Netlist>(m, "Netlist")
        .def_property_readonly("nodes", &Netlist::nodes)
        .def_property_readonly("capacitors",
                               [](const Netlist &n) {
                                   py::list out;
                                   for (const auto &c : n.capacitors()) {
                                       out.append(py::make_tuple(c.a, c.b, c.farads_f));
                                   }
                                   return out;
                               })
        .def_property_readonly("junctions",
                               [](const Netlist &n) {
                                   py::list out;
                                   for (const auto &j : n.junctions()) {
                                       out.append(py::make_tuple(j.a, j.b, n.junction_stem(j)));
                                   }
                                   return out;
                               })
        .def_property_readonly("drives",
                               [](const Netlist &n) {
                                   py::list out;
                                   for (const auto &d : n.drive_ports()) {
                                       out.append(py::make_tuple(d.name, d.source));
                                   }
                                   return out;
                               })
        .def("render", &render_netlist)
        .def("__eq__", [](const Netlist &a, const Netlist &b) { return a == b; })
        .def("__repr__", [](const Netlist &n) { return "<Netlist nodes=" + std::to_string(n.nodes().size()) + ">"; });

    m.def("parse_netlist", [](const std::string &text) { return parse_netlist(text); }, py::arg("text"));
    m.def("lint", &lint);

    m.def(
        "build_direct_coupled",
        [](const std::vector<Rational> &c_g, const Rational &c_c1, const Rational &c_c2, const Rational &c_d,
           const Rational &c_q) { return build_direct_coupled({c_d, c_q, islands(c_g), c_c1, c_c2}); },
        py::arg("c_g"), py::arg("c_c1"), py::arg("c_c2"), py::arg("c_d") = Rational(1, 10), py::arg("c_q") = Rational(70));
    m.def(
        "build_grounded_bus",
        [](const std::vector<Rational> &c_g, const Rational &c_c, const Rational &c_t, const Rational &c_d,
           const Rational &c_q) { return build_grounded_bus({c_d, c_q, islands(c_g), {c_c, c_c}, c_t}); },
        py::arg("c_g"), py::arg("c_c"), py::arg("c_t") = Rational(70), py::arg("c_d") = Rational(1, 10),
        py::arg("c_q") = Rational(70));
    m.def(
        "build_floating_bus",
        [](const std::vector<Rational> &c_g, const Rational &c_c, const Rational &c_b, const Rational &c_t,
           const Rational &c_d, const Rational &c_q) {
            return build_floating_bus({c_d, c_q, islands(c_g), {c_c, c_c}, {c_b, c_b}, c_t});
        },
        py::arg("c_g"), py::arg("c_c"), py::arg("c_b"), py::arg("c_t") = Rational(70), py::arg("c_d") = Rational(1, 10),
        py::arg("c_q") = Rational(70));
    m.def(
        "from_preset",
        [](const std::string &side, const Rational &r, const Rational &lambda, const Rational &island_cap) {
            return from_preset({parse_coupling_side(side), island_cap, r, lambda});
        },
        py::arg("side"), py::arg("r"), py::arg("lambda_") = Rational(1), py::arg("island_cap") = Rational(50));

    m.def("maxwell_matrix", [](const Netlist &n) { return matrix_dict(assemble(n)); });
    m.def("reduced_matrix", [](const Netlist &n) { return matrix_dict(quantize(n).c_r); },
          "C_r after eliminating the free-plus coordinates (Schur complement).");
    m.def("reduced_matrix_by_inverse", [](const Netlist &n) {
        ModeSystem ms = build_modes(n);
        return matrix_dict(reduce_by_inverse(transform(assemble(n), ms), ms));
    });
    m.def("modes", [](const Netlist &n) {
        py::list out;
        for (const auto &c : build_modes(n).coordinates) {
            out.append(py::make_tuple(c.label, std::string(to_string(c.kind))));
        }
        return out;
    });
    m.def(
        "ratio",
        [](const Netlist &n, const std::string &drive, const std::string &target, const std::string &victim) {
            return ratio(quantize(n), drive, target, victim);
        },
        py::arg("netlist"), py::arg("drive"), py::arg("target"), py::arg("victim"));
    m.def("to_db", &to_db);

    m.def("closed_form_general", &closed_form_general, py::arg("c_g2"), py::arg("c_g3"), py::arg("c_g4"),
          py::arg("c_c1"), py::arg("c_c2"));
    m.def("closed_form_lambda", &closed_form_lambda, py::arg("lambda_"), py::arg("c_g"), py::arg("c_c1"),
          py::arg("c_c2"));
    m.def(
        "layout_table_value",
        [](const std::string &side, const Rational &r, const Rational &lambda) {
            return layout_table_value({parse_coupling_side(side), Rational(50), r, lambda});
        },
        py::arg("side"), py::arg("r"), py::arg("lambda_") = Rational(1));
    m.def("floating_bus_ratio", &floating_bus_ratio, py::arg("c_c"), py::arg("c_g"), py::arg("c_b"));
    m.def("floating_bus_ratio_asymptotic", &floating_bus_ratio_asymptotic, py::arg("c_c"), py::arg("c_g"),
          py::arg("c_b"));
    m.def("grounded_bus_bus_ratio", &grounded_bus_bus_ratio, py::arg("c_c"), py::arg("c_g"));

    m.def(
        "sweep",
        [](const std::string &side, const std::vector<Rational> &lambdas, double r_min, double r_max, int points,
           unsigned threads) {
            SweepOptions options;
            options.threads = threads;
            py::list out;
            for (const auto &row : sweep(parse_coupling_side(side), lambdas, log_grid(r_min, r_max, points), options)) {
                out.append(py::make_tuple(row.lambda, row.r, row.ratio, row.strength_db));
            }
            return out;
        },
        py::arg("side"), py::arg("lambdas"), py::arg("r_min"), py::arg("r_max"), py::arg("points"),
        py::arg("threads") = 1);

    m.def(
        "drive_amplitude",
        [](double c_d, double c_q, double v_d, double inductance_nh, double capacitance_ff) {
            DriveAmplitude a = drive_amplitude(c_d, c_q, v_d, inductance_nh, capacitance_ff);
            py::dict d;
            d["impedance_ohm"] = a.impedance_ohm;
            d["charge_zpf_coulomb"] = a.charge_zpf_coulomb;
            d["energy_joule"] = a.energy_joule;
            d["angular_rate_rad_per_s"] = a.angular_rate_rad_per_s;
            return d;
        },
        py::arg("c_d_ff"), py::arg("c_q_ff"), py::arg("v_d_volt"), py::arg("inductance_nh"), py::arg("capacitance_ff"));

    m.def(
        "analyze",
        [](const Netlist &n, const std::string &format, const std::string &target, bool check_asymptotic) {
            AnalyzeOptions options;
            options.target = target;
            options.check_asymptotic = check_asymptotic;
            AnalysisReport r = analyze(n, options);
            return format == "json" ? render_json(r) : render_text(r);
        },
        py::arg("netlist"), py::arg("format") = "json", py::arg("target") = "", py::arg("check_asymptotic") = false);

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
