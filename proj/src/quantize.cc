#include "xtalk/quantize.h"

#include <algorithm>
#include <set>

#include "xtalk/errors.h"

namespace xtalk {

std::string_view to_string(ModeKind kind) {
    switch (kind) {
        case ModeKind::drive:
            return "drive";
        case ModeKind::qubit_minus:
            return "qubit-minus";
        case ModeKind::free_plus:
            return "free-plus";
        case ModeKind::grounded_node:
            return "grounded-node";
    }
    return "?";
}

ModeKind parse_mode_kind(std::string_view text) {
    for (auto k : {ModeKind::drive, ModeKind::qubit_minus, ModeKind::free_plus, ModeKind::grounded_node}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    throw Error("unknown mode kind '" + std::string(text) + "'");
}

namespace {

ModeKind find_kind(const std::vector<Coordinate> &coords, const std::string &label) {
    for (const auto &c : coords) {
        if (c.label == label) {
            return c.kind;
        }
    }
    throw UnknownLabelError(label);
}

}  // namespace

std::vector<std::string> ModeSystem::retained_labels() const {
    std::vector<std::string> out;
    for (const auto &c : coordinates) {
        if (c.kind != ModeKind::free_plus) {
            out.push_back(c.label);
        }
    }
    return out;
}

std::vector<std::string> ModeSystem::free_labels() const {
    std::vector<std::string> out;
    for (const auto &c : coordinates) {
        if (c.kind == ModeKind::free_plus) {
            out.push_back(c.label);
        }
    }
    return out;
}

ModeKind ModeSystem::kind_of(const std::string &label) const {
    return find_kind(coordinates, label);
}

ModeKind ReducedSystem::kind_of(const std::string &label) const {
    return find_kind(retained, label);
}

Matrix assemble(const Netlist &n) {
    Matrix m(n.nodes());
    for (const auto &c : n.capacitors()) {
        bool a_ground = c.a == kGround;
        bool b_ground = c.b == kGround;
        size_t ia = a_ground ? 0 : m.index_of(c.a);
        size_t ib = b_ground ? 0 : m.index_of(c.b);
        if (!a_ground) {
            m(ia, ia) += c.farads_f;
        }
        if (!b_ground) {
            m(ib, ib) += c.farads_f;
        }
        if (!a_ground && !b_ground) {
            m(ia, ib) -= c.farads_f;
            m(ib, ia) -= c.farads_f;
        }
    }
    return m;
}

ModeSystem build_modes(const Netlist &n) {
    const auto &nodes = n.nodes();
    std::vector<Coordinate> coords;
    // Row pattern per coordinate: (column, coefficient).
    std::vector<std::vector<std::pair<size_t, int>>> rows;
    std::vector<std::string> diagnostics;
    auto column = [&](const NodeId &id) {
        return static_cast<size_t>(std::find(nodes.begin(), nodes.end(), id) - nodes.begin());
    };

    for (const auto &d : n.drive_ports()) {
        coords.push_back({d.source, ModeKind::drive});
        rows.push_back({{column(d.source), 1}});
    }
    std::set<NodeId> done;
    for (const auto &d : n.drive_ports()) {
        done.insert(d.source);
    }
    for (const auto &id : nodes) {
        if (done.count(id)) {
            continue;
        }
        const Junction *j = n.junction_of(id);
        if (j != nullptr && j->floating()) {
            std::string stem = n.junction_stem(*j);
            size_t ca = column(j->a);
            size_t cb = column(j->b);
            coords.push_back({stem + "p", ModeKind::free_plus});
            rows.push_back({{ca, 1}, {cb, 1}});
            coords.push_back({stem + "m", ModeKind::qubit_minus});
            rows.push_back({{ca, 1}, {cb, -1}});
            done.insert(j->a);
            done.insert(j->b);
            continue;
        }
        if (j == nullptr) {
            diagnostics.push_back("node '" + id + "' is neither qubit nor drive; retained as grounded-node");
        }
        coords.push_back({id, ModeKind::grounded_node});
        rows.push_back({{column(id), 1}});
        done.insert(id);
    }

    std::vector<std::string> labels;
    for (const auto &c : coords) {
        labels.push_back(c.label);
    }
    std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() != labels.size()) {
        throw NetlistError("coordinate labels collide; rename nodes or junctions");
    }
    Matrix s(labels);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (auto [col, coef] : rows[i]) {
            s(i, col) = Rational(coef);
        }
    }
    return ModeSystem{std::move(s), std::move(coords), std::move(diagnostics)};
}

Matrix transform(const Matrix &c_prime, const ModeSystem &ms) {
    return congruence(c_prime, ms.transform);
}

Matrix reduce_by_inverse(const Matrix &c, const ModeSystem &ms) {
    auto retained = ms.retained_labels();
    if (retained.size() == c.dim()) {
        return c;
    }
    return invert(submatrix(invert(c), retained));
}

Matrix reduce_by_schur(const Matrix &c, const ModeSystem &ms) {
    return schur_complement(c, ms.free_labels());
}

ReducedSystem reduce(const Matrix &c, const ModeSystem &ms) {
    if (c.labels() != ms.transform.labels()) {
        throw DimensionError("reduce: matrix labels do not match the mode system");
    }
    if (determinant(c).is_zero()) {
        throw SingularMatrixError("capacitance matrix is singular (floating subcircuit)");
    }
    Matrix c_r = reduce_by_schur(c, ms);
#ifndef NDEBUG
    if (reduce_by_inverse(c, ms) != c_r) {
        throw std::logic_error("reduce: Schur complement and inverse-restrict-inverse disagree");
    }
#endif
    std::vector<Coordinate> retained;
    for (const auto &coord : ms.coordinates) {
        if (coord.kind != ModeKind::free_plus) {
            retained.push_back(coord);
        }
    }
    return ReducedSystem{std::move(c_r), std::move(retained), ms.free_labels(), c};
}

ReducedSystem quantize(const Netlist &n) {
    auto floating = floating_groups(n);
    if (!floating.empty()) {
        throw FloatingSubcircuitError(floating.front());
    }
    ModeSystem ms = build_modes(n);
    return reduce(transform(assemble(n), ms), ms);
}

}  // namespace xtalk
