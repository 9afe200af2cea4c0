#include "xtalk/crosstalk.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "xtalk/errors.h"

namespace xtalk {

std::vector<Weight> coupling_weights(const ReducedSystem &rs, const std::string &drive) {
    if (!rs.c_r.has_label(drive)) {
        throw UnknownLabelError(drive);
    }
    if (rs.kind_of(drive) != ModeKind::drive) {
        throw Error("'" + drive + "' is not a drive coordinate");
    }
    std::vector<Weight> out;
    size_t row = rs.c_r.index_of(drive);
    for (size_t j = 0; j < rs.retained.size(); ++j) {
        if (rs.retained[j].kind == ModeKind::drive) {
            continue;
        }
        out.push_back({rs.retained[j].label, rs.c_r(row, rs.c_r.index_of(rs.retained[j].label))});
    }
    return out;
}

Rational ratio(const ReducedSystem &rs, const std::string &drive, const std::string &target,
               const std::string &victim) {
    const Rational &t = rs.c_r.at(drive, target);
    const Rational &v = rs.c_r.at(drive, victim);
    if (t.is_zero()) {
        throw ZeroTargetWeightError("drive '" + drive + "' does not couple to target '" + target + "'");
    }
    return abs(v) / abs(t);
}

double to_db(const Rational &r) {
    if (r.is_zero()) {
        return -std::numeric_limits<double>::infinity();
    }
    // log of num and den separately keeps precision for ratios beyond double range.
    double num = mpz_class(r.numerator()).get_d();
    double den = r.denominator().get_d();
    if (std::isfinite(num) && std::isfinite(den) && num > 0 && den > 0) {
        return 20.0 * (std::log10(num) - std::log10(den));
    }
    long num_exp = 0;
    long den_exp = 0;
    double num_m = mpz_get_d_2exp(&num_exp, r.numerator().get_mpz_t());
    double den_m = mpz_get_d_2exp(&den_exp, r.denominator().get_mpz_t());
    return 20.0 * (std::log10(num_m / den_m) + static_cast<double>(num_exp - den_exp) * std::log10(2.0));
}

CrosstalkReport crosstalk_report(const ReducedSystem &rs, const std::string &drive, const std::string &target) {
    CrosstalkReport out;
    out.drive = drive;
    out.target = target;
    out.weights = coupling_weights(rs, drive);
    if (rs.kind_of(target) == ModeKind::drive) {
        throw Error("target '" + target + "' is a drive coordinate");
    }
    for (const auto &w : out.weights) {
        Rational r = ratio(rs, drive, target, w.label);
        double db = to_db(r);
        out.entries.push_back({w.label, std::move(r), db});
    }
    return out;
}

std::string default_target(const Netlist &n, const ReducedSystem &rs, const std::string &drive) {
    auto weights = coupling_weights(rs, drive);
    if (weights.empty()) {
        throw Error("drive '" + drive + "' has no coordinates to reach");
    }
    std::set<std::string> adjacent;
    for (const auto &node : n.neighbours(drive)) {
        const Junction *j = n.junction_of(node);
        if (j != nullptr && j->floating()) {
            adjacent.insert(n.junction_stem(*j) + "m");
        } else {
            adjacent.insert(node);
        }
    }
    const Weight *best = nullptr;
    for (const auto &w : weights) {
        if (!adjacent.count(w.label)) {
            continue;
        }
        if (best == nullptr || abs(w.value) > abs(best->value)) {
            best = &w;
        }
    }
    if (best == nullptr || best->value.is_zero()) {
        for (const auto &w : weights) {
            if (best == nullptr || abs(w.value) > abs(best->value)) {
                best = &w;
            }
        }
    }
    return best->label;
}

Rational closed_form_general(const Rational &c_g2, const Rational &c_g3, const Rational &c_g4, const Rational &c_c1,
                             const Rational &c_c2) {
    Rational num = c_g4 * c_c1 - c_g3 * c_c2;
    Rational den = (c_g3 + c_g4) * (c_c2 + c_g2) + c_g2 * (c_c1 + c_c2);
    return abs(num / den);
}

Rational closed_form_lambda(const Rational &lambda, const Rational &c_g, const Rational &c_c1, const Rational &c_c2) {
    Rational num = lambda * c_c1 - c_c2;
    Rational den = (lambda + 1) * (c_c2 + lambda * c_g) + lambda * (c_c1 + c_c2);
    return abs(num / den);
}

Rational layout_table_value(const LayoutPreset &p) {
    p.validate();
    const Rational &r = p.ratio;
    const Rational &l = p.lambda;
    if (p.side == CouplingSide::same_island) {
        return p.symmetric() ? r / (Rational(2) + r) : r / (l + 1 + r);
    }
    return p.symmetric() ? r / (Rational(2) + Rational(3) * r) : r / (l * (l + 1) + (Rational(2) * l + 1) * r);
}

Rational floating_bus_ratio(const Rational &c_c, const Rational &c_g, const Rational &c_b) {
    return c_c * c_c / (Rational(2) * c_b * (c_c + Rational(2) * c_g) + c_c * (c_c + Rational(4) * c_g));
}

Rational floating_bus_ratio_asymptotic(const Rational &c_c, const Rational &c_g, const Rational &c_b) {
    return c_c * c_c / (Rational(4) * c_b * c_g);
}

Rational grounded_bus_bus_ratio(const Rational &c_c, const Rational &c_g) {
    return c_c / c_g;
}

std::string_view to_string(Approximation a) {
    switch (a) {
        case Approximation::direct:
            return "direct";
        case Approximation::grounded_bus:
            return "grounded-bus";
        case Approximation::floating_bus:
            return "floating-bus";
    }
    return "?";
}

Approximation CanonicalCircuit::approximation() const {
    switch (params.index()) {
        case 0:
            return Approximation::direct;
        case 1:
            return Approximation::grounded_bus;
        default:
            return Approximation::floating_bus;
    }
}

namespace {

// Order-insensitive structural fingerprint used to compare a netlist with a builder's output.
struct Shape {
    std::set<NodeId> nodes;
    std::map<std::pair<NodeId, NodeId>, Rational> caps;
    std::set<std::pair<NodeId, NodeId>> junctions;
    std::set<NodeId> drives;

    bool operator==(const Shape &) const = default;
};

Shape shape_of(const Netlist &n) {
    Shape s;
    s.nodes.insert(n.nodes().begin(), n.nodes().end());
    for (const auto &c : n.capacitors()) {
        auto key = std::minmax(c.a, c.b);
        s.caps[{key.first, key.second}] += c.farads_f;
    }
    for (const auto &j : n.junctions()) {
        s.junctions.insert({j.a, j.b});
    }
    for (const auto &d : n.drive_ports()) {
        s.drives.insert(d.source);
    }
    return s;
}

template <typename Build, typename Params>
bool matches(const Netlist &n, Build build, const Params &p) {
    try {
        return shape_of(build(p)) == shape_of(n);
    } catch (const NetlistError &) {
        return false;
    }
}

std::string minus_label(const Netlist &n, const NodeId &node) {
    const Junction *j = n.junction_of(node);
    return j->floating() ? n.junction_stem(*j) + "m" : node;
}

std::string gnd() {
    return std::string(kGround);
}

}  // namespace

std::optional<CanonicalCircuit> recognize_canonical(const Netlist &n) {
    auto cap = [&](const char *a, const char *b) { return n.capacitance_between(a, b); };
    std::set<NodeId> nodes(n.nodes().begin(), n.nodes().end());
    std::string g = gnd();
    auto island = [&](const char *node) { return n.capacitance_between(node, g); };

    if (nodes == std::set<NodeId>{"d", "1", "2", "3", "4"}) {
        DirectCoupledParams p{cap("d", "1"), cap("1", "2"),
                              {island("1"), island("2"), island("3"), island("4")}, cap("1", "3"), cap("2", "4")};
        if (matches(n, build_direct_coupled, p)) {
            return CanonicalCircuit{p, {"d", minus_label(n, "1"), minus_label(n, "3")}};
        }
    } else if (nodes == std::set<NodeId>{"d", "1", "2", "t", "3", "4"}) {
        GroundedBusParams p{cap("d", "1"),
                            cap("1", "2"),
                            {island("1"), island("2"), island("3"), island("4")},
                            {cap("1", "t"), cap("t", "3")},
                            island("t")};
        if (matches(n, build_grounded_bus, p)) {
            return CanonicalCircuit{p, {"d", minus_label(n, "1"), "t", minus_label(n, "3")}};
        }
    } else if (nodes == std::set<NodeId>{"d", "1", "2", "3", "4", "5", "6"}) {
        FloatingBusParams p{cap("d", "1"),
                            cap("1", "2"),
                            {island("1"), island("2"), island("5"), island("6")},
                            {cap("1", "3"), cap("4", "5")},
                            {island("3"), island("4")},
                            cap("3", "4")};
        if (matches(n, build_floating_bus, p)) {
            return CanonicalCircuit{p, {"d", minus_label(n, "1"), minus_label(n, "3"), minus_label(n, "5")}};
        }
    }
    return std::nullopt;
}

namespace {

void require_uniform(const std::array<Rational, 4> &c_g) {
    if (!(c_g[0] == c_g[1] && c_g[1] == c_g[2] && c_g[2] == c_g[3])) {
        throw TopologyMismatchError("weak-coupling approximation assumes equal island capacitances");
    }
}

Matrix symmetric_from_upper(std::vector<std::string> labels, const std::vector<std::vector<Rational>> &upper) {
    Matrix m(std::move(labels));
    for (size_t i = 0; i < m.dim(); ++i) {
        for (size_t j = i; j < m.dim(); ++j) {
            m(i, j) = upper[i][j - i];
            m(j, i) = upper[i][j - i];
        }
    }
    return m;
}

Rational max_of(std::initializer_list<Rational> v) {
    return *std::max_element(v.begin(), v.end());
}

Rational min_of(std::initializer_list<Rational> v) {
    return *std::min_element(v.begin(), v.end());
}

}  // namespace

Matrix approximate_reduced(const CanonicalCircuit &c) {
    const Rational two(2);
    const Rational four(4);
    const Rational eight(8);
    if (const auto *p = std::get_if<DirectCoupledParams>(&c.params)) {
        require_uniform(p->c_g);
        const Rational &cd = p->c_d;
        const Rational &cg = p->c_g[0];
        Rational qubit = p->c_q + cg / two;
        return symmetric_from_upper(c.labels, {{cd, -cd / two, -cd * (p->c_c1 - p->c_c2) / (four * cg)},
                                               {qubit, -(p->c_c1 + p->c_c2) / four},
                                               {qubit}});
    }
    if (const auto *p = std::get_if<GroundedBusParams>(&c.params)) {
        require_uniform(p->c_g);
        if (p->c_c[0] != p->c_c[1]) {
            throw TopologyMismatchError("grounded-bus approximation assumes equal couplers");
        }
        const Rational &cd = p->c_d;
        const Rational &cg = p->c_g[0];
        const Rational &cc = p->c_c[0];
        Rational qubit = p->c_q + cg / two;
        return symmetric_from_upper(c.labels, {{cd, -cd / two, -cd * cc / (two * cg), Rational(0)},
                                               {qubit, -cc / two, Rational(0)},
                                               {p->c_t, -cc / two},
                                               {qubit}});
    }
    const auto &p = std::get<FloatingBusParams>(c.params);
    require_uniform(p.c_g);
    if (p.c_c[0] != p.c_c[1] || p.c_b[0] != p.c_b[1]) {
        throw TopologyMismatchError("floating-bus approximation assumes equal couplers and bus islands");
    }
    const Rational &cd = p.c_d;
    const Rational &cg = p.c_g[0];
    const Rational &cc = p.c_c[0];
    const Rational &cb = p.c_b[0];
    Rational qubit = p.c_q + cg / two;
    // The bus-to-qubit-2 term is positive: coupler 4-5 sits on the minus side of the bus junction.
    return symmetric_from_upper(
        c.labels, {{cd, -cd / two, -cd * cc / (four * cg), -cc * cc * cd / (eight * cb * cg)},
                   {qubit, -cc / four, -cc * cc / (eight * cb)},
                   {p.c_t + cb / two, cc / four},
                   {qubit}});
}

AsymptoticReport asymptotic_check(const ReducedSystem &exact, const CanonicalCircuit &c) {
    Matrix approx = approximate_reduced(c);
    AsymptoticReport out;
    out.which = c.approximation();
    Rational eps;
    if (const auto *p = std::get_if<DirectCoupledParams>(&c.params)) {
        eps = max_of({p->c_d, p->c_c1, p->c_c2}) / min_of({p->c_g[0], p->c_q});
    } else if (const auto *p = std::get_if<GroundedBusParams>(&c.params)) {
        eps = max_of({p->c_d, p->c_c[0]}) / min_of({p->c_g[0], p->c_q, p->c_t});
    } else {
        const auto &f = std::get<FloatingBusParams>(c.params);
        if (f.c_t.is_zero()) {
            eps = Rational(-1);
        } else {
            eps = max_of({f.c_d, f.c_c[0]}) / min_of({f.c_g[0], f.c_q, f.c_t, f.c_b[0]});
        }
    }
    out.epsilon = eps.sign() < 0 ? std::numeric_limits<double>::infinity() : eps.to_double();
    out.tolerance = kAsymptoticFactor * out.epsilon;
    out.max_error = 0.0;
    for (size_t i = 0; i < approx.dim(); ++i) {
        for (size_t j = i; j < approx.dim(); ++j) {
            const std::string &row = approx.labels()[i];
            const std::string &col = approx.labels()[j];
            Rational e = exact.c_r.at(row, col);
            const Rational &a = approx(i, j);
            double err = 0.0;
            if (e.is_zero()) {
                err = a.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
            } else {
                err = abs((e - a) / e).to_double();
            }
            out.max_error = std::max(out.max_error, err);
            out.entries.push_back({row, col, std::move(e), a, err});
        }
    }
    out.applicable = out.epsilon <= kAsymptoticMaxEpsilon;
    out.passed = out.applicable && out.max_error <= out.tolerance;
    return out;
}

DriveAmplitude drive_amplitude(double c_d_ff, double c_q_ff, double v_d_volt, double inductance_nh,
                               double capacitance_ff) {
    if (!(inductance_nh > 0.0) || !(capacitance_ff > 0.0)) {
        throw Error("drive_amplitude: inductance and capacitance must be positive");
    }
    if (!(c_q_ff > 0.0)) {
        throw Error("drive_amplitude: C_q must be positive");
    }
    DriveAmplitude out{};
    out.impedance_ohm = std::sqrt((inductance_nh * 1e-9) / (capacitance_ff * 1e-15));
    out.charge_zpf_coulomb = std::sqrt(kHbar / (2.0 * out.impedance_ohm));
    out.energy_joule = (c_d_ff / c_q_ff) * out.charge_zpf_coulomb * v_d_volt;
    out.angular_rate_rad_per_s = out.energy_joule / kHbar;
    return out;
}

}  // namespace xtalk
