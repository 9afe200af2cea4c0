#include "xtalk/report.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <json.hpp>
#include <sstream>

#include "xtalk/errors.h"

namespace xtalk {

using json = nlohmann::ordered_json;

std::string format_db(double db) {
    if (std::isinf(db)) {
        return db < 0 ? "-inf" : "inf";
    }
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.2f", db);
    return buffer;
}

namespace {

std::string format_double(double v) {
    if (std::isinf(v)) {
        return v < 0 ? "-inf" : "inf";
    }
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

double parse_double(const json &j) {
    std::string s = j.get<std::string>();
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    return std::stod(s);
}

double corrected_db(double db, double impedance_ratio) {
    return db + 10.0 * std::log10(impedance_ratio);
}

json rational_json(const Rational &r) {
    return json{{"exact", r.to_fraction_string()}, {"decimal", r.to_decimal_string(12)}};
}

Rational rational_from_json(const json &j) {
    return Rational::parse(j.at("exact").get<std::string>());
}

json matrix_json(const Matrix &m) {
    json rows = json::array();
    for (size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (size_t k = 0; k < m.dim(); ++k) {
            row.push_back(rational_json(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return json{{"labels", m.labels()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const json &j) {
    auto labels = j.at("labels").get<std::vector<std::string>>();
    std::vector<Rational> entries;
    for (const auto &row : j.at("entries")) {
        for (const auto &v : row) {
            entries.push_back(rational_from_json(v));
        }
    }
    return Matrix(std::move(labels), std::move(entries));
}

json netlist_json(const Netlist &n) {
    json caps = json::array();
    for (const auto &c : n.capacitors()) {
        caps.push_back(json{{"a", c.a}, {"b", c.b}, {"fF", rational_json(c.farads_f)}});
    }
    json jjs = json::array();
    for (const auto &j : n.junctions()) {
        json e{{"a", j.a}, {"b", j.b}, {"name", j.name}};
        e["EJ_GHz"] = j.josephson_energy_ghz ? rational_json(*j.josephson_energy_ghz) : json(nullptr);
        jjs.push_back(std::move(e));
    }
    json drives = json::array();
    for (const auto &d : n.drive_ports()) {
        drives.push_back(json{{"name", d.name}, {"source", d.source}});
    }
    return json{{"nodes", n.nodes()}, {"capacitors", caps}, {"junctions", jjs}, {"drives", drives}};
}

Netlist netlist_from_json(const json &j) {
    std::vector<Capacitor> caps;
    for (const auto &c : j.at("capacitors")) {
        caps.push_back({c.at("a").get<std::string>(), c.at("b").get<std::string>(), rational_from_json(c.at("fF"))});
    }
    std::vector<Junction> jjs;
    for (const auto &e : j.at("junctions")) {
        Junction jj{e.at("a").get<std::string>(), e.at("b").get<std::string>(), std::nullopt,
                    e.at("name").get<std::string>()};
        if (!e.at("EJ_GHz").is_null()) {
            jj.josephson_energy_ghz = rational_from_json(e.at("EJ_GHz"));
        }
        jjs.push_back(std::move(jj));
    }
    std::vector<DrivePort> drives;
    for (const auto &d : j.at("drives")) {
        drives.push_back({d.at("name").get<std::string>(), d.at("source").get<std::string>()});
    }
    return Netlist(j.at("nodes").get<std::vector<std::string>>(), std::move(caps), std::move(jjs), std::move(drives));
}

json db_json(double db) {
    if (std::isinf(db)) {
        return nullptr;
    }
    return json(std::stod(format_db(db)));
}

}  // namespace

AnalysisReport analyze(const Netlist &n, const AnalyzeOptions &options) {
    AnalysisReport out;
    out.netlist = n;
    out.diagnostics = lint(n);
    auto floating = floating_groups(n);
    if (!floating.empty()) {
        throw FloatingSubcircuitError(floating.front());
    }
    out.capacitance = assemble(n);
    ModeSystem ms = build_modes(n);
    out.transform = ms.transform;
    out.coordinates = ms.coordinates;
    ReducedSystem rs = reduce(transform(out.capacitance, ms), ms);
    out.reduced = rs.c_r;
    out.removed = rs.removed;
    out.impedance_ratio = options.impedance_ratio;
    if (options.impedance_ratio && !(*options.impedance_ratio > 0.0)) {
        throw Error("impedance ratio must be positive");
    }

    for (const auto &d : n.drive_ports()) {
        std::string target = options.target.empty() ? default_target(n, rs, d.source) : options.target;
        if (!rs.c_r.has_label(target)) {
            throw UnknownLabelError(target);
        }
        out.crosstalk.push_back(crosstalk_report(rs, d.source, target));
    }

    if (options.check_asymptotic) {
        AsymptoticSection section;
        auto canonical = recognize_canonical(n);
        if (!canonical) {
            section.note = "topology is not one of the canonical circuits (direct, grounded-bus, floating-bus)";
        } else {
            try {
                section.report = asymptotic_check(rs, *canonical);
            } catch (const TopologyMismatchError &e) {
                section.note = e.what();
            }
        }
        out.asymptotic = std::move(section);
    }
    return out;
}

std::string render_json(const AnalysisReport &r) {
    json root;
    root["netlist"] = netlist_json(r.netlist);
    root["capacitance_matrix"] = matrix_json(r.capacitance);
    json coords = json::array();
    for (const auto &c : r.coordinates) {
        coords.push_back(json{{"label", c.label}, {"kind", std::string(to_string(c.kind))}});
    }
    root["modes"] = json{{"coordinates", coords}, {"transform", matrix_json(r.transform)}, {"removed", r.removed}};
    root["reduced_matrix"] = matrix_json(r.reduced);

    json xt = json::array();
    for (const auto &c : r.crosstalk) {
        json weights = json::array();
        for (const auto &w : c.weights) {
            weights.push_back(json{{"label", w.label}, {"weight", rational_json(w.value)}});
        }
        json entries = json::array();
        for (const auto &e : c.entries) {
            json entry{{"victim", e.victim}, {"R", rational_json(e.ratio)}, {"M_dB", db_json(e.strength_db)}};
            if (r.impedance_ratio) {
                entry["M_dB_impedance_corrected"] = db_json(corrected_db(e.strength_db, *r.impedance_ratio));
            }
            entries.push_back(std::move(entry));
        }
        xt.push_back(json{{"drive", c.drive}, {"target", c.target}, {"weights", weights}, {"entries", entries}});
    }
    root["crosstalk"] = xt;
    root["impedance_ratio"] = r.impedance_ratio ? json(format_double(*r.impedance_ratio)) : json(nullptr);
    root["diagnostics"] = r.diagnostics;

    if (r.asymptotic) {
        json section;
        if (r.asymptotic->report) {
            const auto &a = *r.asymptotic->report;
            json entries = json::array();
            for (const auto &e : a.entries) {
                entries.push_back(json{{"row", e.row},
                                       {"col", e.col},
                                       {"exact", rational_json(e.exact)},
                                       {"approx", rational_json(e.approx)},
                                       {"relative_error", format_double(e.relative_error)}});
            }
            section = json{{"approximation", std::string(to_string(a.which))},
                           {"epsilon", format_double(a.epsilon)},
                           {"tolerance", format_double(a.tolerance)},
                           {"max_error", format_double(a.max_error)},
                           {"applicable", a.applicable},
                           {"passed", a.passed},
                           {"entries", entries}};
        } else {
            section = json{{"note", r.asymptotic->note}};
        }
        root["asymptotic"] = section;
    } else {
        root["asymptotic"] = nullptr;
    }
    return root.dump(2) + "\n";
}

AnalysisReport parse_report_json(const std::string &text) {
    json root = json::parse(text);
    AnalysisReport r;
    r.netlist = netlist_from_json(root.at("netlist"));
    r.capacitance = matrix_from_json(root.at("capacitance_matrix"));
    const json &modes = root.at("modes");
    for (const auto &c : modes.at("coordinates")) {
        r.coordinates.push_back({c.at("label").get<std::string>(), parse_mode_kind(c.at("kind").get<std::string>())});
    }
    r.transform = matrix_from_json(modes.at("transform"));
    r.removed = modes.at("removed").get<std::vector<std::string>>();
    r.reduced = matrix_from_json(root.at("reduced_matrix"));
    for (const auto &c : root.at("crosstalk")) {
        CrosstalkReport x;
        x.drive = c.at("drive").get<std::string>();
        x.target = c.at("target").get<std::string>();
        for (const auto &w : c.at("weights")) {
            x.weights.push_back({w.at("label").get<std::string>(), rational_from_json(w.at("weight"))});
        }
        for (const auto &e : c.at("entries")) {
            Rational ratio = rational_from_json(e.at("R"));
            double db = to_db(ratio);
            x.entries.push_back({e.at("victim").get<std::string>(), std::move(ratio), db});
        }
        r.crosstalk.push_back(std::move(x));
    }
    if (!root.at("impedance_ratio").is_null()) {
        r.impedance_ratio = parse_double(root.at("impedance_ratio"));
    }
    r.diagnostics = root.at("diagnostics").get<std::vector<std::string>>();
    const json &a = root.at("asymptotic");
    if (!a.is_null()) {
        AsymptoticSection section;
        if (a.contains("note")) {
            section.note = a.at("note").get<std::string>();
        } else {
            AsymptoticReport rep;
            std::string which = a.at("approximation").get<std::string>();
            for (auto k : {Approximation::direct, Approximation::grounded_bus, Approximation::floating_bus}) {
                if (to_string(k) == which) {
                    rep.which = k;
                }
            }
            rep.epsilon = parse_double(a.at("epsilon"));
            rep.tolerance = parse_double(a.at("tolerance"));
            rep.max_error = parse_double(a.at("max_error"));
            rep.applicable = a.at("applicable").get<bool>();
            rep.passed = a.at("passed").get<bool>();
            for (const auto &e : a.at("entries")) {
                rep.entries.push_back({e.at("row").get<std::string>(), e.at("col").get<std::string>(),
                                       rational_from_json(e.at("exact")), rational_from_json(e.at("approx")),
                                       parse_double(e.at("relative_error"))});
            }
            section.report = std::move(rep);
        }
        r.asymptotic = std::move(section);
    }
    return r;
}

namespace {

std::string exact_and_decimal(const Rational &v) {
    return v.to_fraction_string() + " [" + v.to_decimal_string(12) + "]";
}

void write_matrix(std::ostringstream &out, const Matrix &m) {
    for (size_t i = 0; i < m.dim(); ++i) {
        for (size_t k = 0; k < m.dim(); ++k) {
            out << "  [" << m.labels()[i] << "," << m.labels()[k] << "] = " << exact_and_decimal(m(i, k)) << "\n";
        }
    }
}

}  // namespace

std::string render_text(const AnalysisReport &r) {
    std::ostringstream out;
    out << "== netlist ==\n" << render_netlist(r.netlist);
    out << "\n== capacitance matrix C' (fF) ==\n";
    write_matrix(out, r.capacitance);
    out << "\n== modes ==\n";
    for (const auto &c : r.coordinates) {
        out << "  " << c.label << ": " << to_string(c.kind) << "\n";
    }
    out << "transform S:\n";
    write_matrix(out, r.transform);
    out << "removed:";
    for (const auto &l : r.removed) {
        out << " " << l;
    }
    out << "\n\n== reduced capacitance matrix C_r (fF) ==\n";
    write_matrix(out, r.reduced);

    for (const auto &c : r.crosstalk) {
        out << "\n== crosstalk from drive " << c.drive << " (target " << c.target << ") ==\n";
        out << "weights:\n";
        for (const auto &w : c.weights) {
            out << "  " << w.label << ": " << exact_and_decimal(w.value) << "\n";
        }
        out << "ratios:\n";
        for (const auto &e : c.entries) {
            out << "  " << e.victim << ": R=";
            if (e.ratio.is_zero()) {
                out << "0";
            } else {
                out << exact_and_decimal(e.ratio);
            }
            out << " (" << format_db(e.strength_db) << " dB)";
            if (r.impedance_ratio) {
                out << " impedance-corrected " << format_db(corrected_db(e.strength_db, *r.impedance_ratio))
                    << " dB";
            }
            out << "\n";
        }
    }
    if (r.impedance_ratio) {
        out << "\nimpedance ratio Z_target/Z_victim = " << format_double(*r.impedance_ratio)
            << " (corrected values go beyond the equal-qubit formula)\n";
    }
    if (!r.diagnostics.empty()) {
        out << "\n== diagnostics ==\n";
        for (const auto &d : r.diagnostics) {
            out << "  " << d << "\n";
        }
    }
    if (r.asymptotic) {
        out << "\n== weak-coupling check ==\n";
        if (!r.asymptotic->report) {
            out << "  skipped: " << r.asymptotic->note << "\n";
        } else {
            const auto &a = *r.asymptotic->report;
            out << "  approximation: " << to_string(a.which) << "\n";
            out << "  epsilon: " << format_double(a.epsilon) << "\n";
            out << "  tolerance: " << format_double(a.tolerance) << "\n";
            out << "  max relative error: " << format_double(a.max_error) << "\n";
            out << "  applicable: " << (a.applicable ? "yes" : "no") << "\n";
            out << "  passed: " << (a.passed ? "yes" : "no") << "\n";
            for (const auto &e : a.entries) {
                out << "  [" << e.row << "," << e.col << "] exact " << exact_and_decimal(e.exact) << " approx "
                    << exact_and_decimal(e.approx) << " rel.err " << format_double(e.relative_error) << "\n";
            }
        }
    }
    return out.str();
}

}  // namespace xtalk
