#include "xtalk/netlist.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "xtalk/errors.h"

namespace xtalk {

namespace {

bool valid_id(std::string_view id) {
    if (id.empty()) {
        return false;
    }
    return std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

bool is_ground(std::string_view id) {
    return id == kGround;
}

// Union-find over node indices; index n stands for ground.
class Components {
   public:
    explicit Components(size_t n) : parent_(n + 1) {
        std::iota(parent_.begin(), parent_.end(), size_t{0});
    }
    size_t find(size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void join(size_t a, size_t b) {
        parent_[find(a)] = find(b);
    }

   private:
    std::vector<size_t> parent_;
};

std::vector<std::vector<NodeId>> groups(const Netlist &n, bool through_ground) {
    const auto &nodes = n.nodes();
    std::map<std::string_view, size_t> index;
    for (size_t i = 0; i < nodes.size(); ++i) {
        index[nodes[i]] = i;
    }
    size_t ground = nodes.size();
    auto idx = [&](const NodeId &id) { return is_ground(id) ? ground : index.at(id); };
    Components c(nodes.size());
    for (const auto &cap : n.capacitors()) {
        if (!through_ground && (is_ground(cap.a) || is_ground(cap.b))) {
            continue;
        }
        c.join(idx(cap.a), idx(cap.b));
    }
    std::map<size_t, std::vector<NodeId>> by_root;
    std::vector<size_t> order;
    for (size_t i = 0; i < nodes.size(); ++i) {
        size_t root = c.find(i);
        if (through_ground && root == c.find(ground)) {
            continue;
        }
        if (!by_root.count(root)) {
            order.push_back(root);
        }
        by_root[root].push_back(nodes[i]);
    }
    std::vector<std::vector<NodeId>> out;
    for (size_t root : order) {
        out.push_back(by_root[root]);
    }
    return out;
}

std::string join(const std::vector<NodeId> &ids, const char *sep = " ") {
    std::string out;
    for (const auto &id : ids) {
        if (!out.empty()) {
            out += sep;
        }
        out += id;
    }
    return out;
}

}  // namespace

Netlist::Netlist(std::vector<NodeId> nodes, std::vector<Capacitor> capacitors, std::vector<Junction> junctions,
                 std::vector<DrivePort> drive_ports)
    : nodes_(std::move(nodes)),
      capacitors_(std::move(capacitors)),
      junctions_(std::move(junctions)),
      drive_ports_(std::move(drive_ports)) {
    std::set<std::string_view> declared;
    for (const auto &id : nodes_) {
        if (!valid_id(id) || is_ground(id)) {
            throw NetlistError("invalid node id '" + id + "'");
        }
        if (!declared.insert(id).second) {
            throw NetlistError("duplicate node '" + id + "'");
        }
    }
    auto check_endpoint = [&](const NodeId &id) {
        if (!is_ground(id) && !declared.count(id)) {
            throw NetlistError("unknown node '" + id + "'");
        }
    };
    for (const auto &c : capacitors_) {
        check_endpoint(c.a);
        check_endpoint(c.b);
        if (c.a == c.b) {
            throw NetlistError("capacitor connects node '" + c.a + "' to itself");
        }
        if (c.farads_f.sign() <= 0) {
            throw NetlistError("non-positive capacitance " + c.farads_f.to_exact_string() + " between '" + c.a +
                               "' and '" + c.b + "'");
        }
    }
    std::set<std::string> in_junction;
    std::set<std::string> stems;
    for (const auto &j : junctions_) {
        check_endpoint(j.a);
        check_endpoint(j.b);
        if (j.a == j.b) {
            throw NetlistError("junction connects node '" + j.a + "' to itself");
        }
        if (is_ground(j.a)) {
            throw NetlistError("junction must list its non-ground node first");
        }
        if (j.josephson_energy_ghz && j.josephson_energy_ghz->sign() <= 0) {
            throw NetlistError("non-positive Josephson energy on junction " + j.a + "-" + j.b);
        }
        for (const auto &id : {j.a, j.b}) {
            if (!is_ground(id) && !in_junction.insert(id).second) {
                throw NetlistError("node '" + id + "' is in more than one junction");
            }
        }
        if (!j.name.empty() && !valid_id(j.name)) {
            throw NetlistError("invalid junction name '" + j.name + "'");
        }
    }
    for (const auto &j : junctions_) {
        if (j.floating() && !stems.insert(junction_stem(j)).second) {
            throw NetlistError("duplicate junction name '" + junction_stem(j) + "'");
        }
    }
    std::set<std::string_view> port_names;
    for (const auto &d : drive_ports_) {
        if (!valid_id(d.name)) {
            throw NetlistError("invalid drive name '" + d.name + "'");
        }
        if (!port_names.insert(d.name).second) {
            throw NetlistError("duplicate drive '" + d.name + "'");
        }
        if (is_ground(d.source) || !declared.count(d.source)) {
            throw NetlistError("drive '" + d.name + "' source '" + d.source + "' is not a declared node");
        }
        if (in_junction.count(d.source)) {
            throw NetlistError("drive source '" + d.source + "' is part of a junction");
        }
        bool coupled = std::any_of(capacitors_.begin(), capacitors_.end(),
                                   [&](const Capacitor &c) { return c.a == d.source || c.b == d.source; });
        if (!coupled) {
            throw NetlistError("drive source '" + d.source + "' has no capacitor");
        }
    }
    for (size_t i = 0; i < drive_ports_.size(); ++i) {
        for (size_t k = i + 1; k < drive_ports_.size(); ++k) {
            if (drive_ports_[i].source == drive_ports_[k].source) {
                throw NetlistError("node '" + drive_ports_[i].source + "' drives two ports");
            }
        }
    }
}

bool Netlist::has_node(std::string_view id) const {
    return std::find(nodes_.begin(), nodes_.end(), id) != nodes_.end();
}

bool Netlist::is_drive_source(std::string_view id) const {
    return std::any_of(drive_ports_.begin(), drive_ports_.end(), [&](const DrivePort &d) { return d.source == id; });
}

const Junction *Netlist::junction_of(std::string_view id) const {
    for (const auto &j : junctions_) {
        if (j.a == id || (j.floating() && j.b == id)) {
            return &j;
        }
    }
    return nullptr;
}

std::string Netlist::junction_stem(const Junction &j) const {
    if (!j.name.empty()) {
        return j.name;
    }
    size_t ordinal = 0;
    for (const auto &other : junctions_) {
        if (other.floating()) {
            ++ordinal;
        }
        if (&other == &j) {
            return std::to_string(ordinal);
        }
    }
    return std::to_string(ordinal);
}

std::vector<NodeId> Netlist::neighbours(std::string_view id) const {
    std::vector<NodeId> out;
    for (const auto &c : capacitors_) {
        const NodeId *other = c.a == id ? &c.b : c.b == id ? &c.a : nullptr;
        if (other && !is_ground(*other) && std::find(out.begin(), out.end(), *other) == out.end()) {
            out.push_back(*other);
        }
    }
    return out;
}

Rational Netlist::capacitance_between(std::string_view a, std::string_view b) const {
    Rational total;
    for (const auto &c : capacitors_) {
        if ((c.a == a && c.b == b) || (c.a == b && c.b == a)) {
            total += c.farads_f;
        }
    }
    return total;
}

namespace {

struct Token {
    std::string_view text;
    size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') {
            break;
        }
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') {
            ++i;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

struct Located {
    size_t line;
    size_t column;
};

}  // namespace

Netlist parse_netlist(std::string_view text) {
    std::vector<NodeId> nodes;
    std::vector<Capacitor> caps;
    std::vector<Junction> junctions;
    std::vector<DrivePort> drives;
    std::map<std::string, Located> declared;
    // Positions of every node reference, checked once all declarations are known.
    std::vector<std::pair<std::string, Located>> references;
    std::map<std::string, Located> junction_nodes;
    size_t drive_line = 0;
    std::vector<size_t> drive_lines;

    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        ++line_no;
        pos = end + 1;

        auto tokens = tokenize(line);
        if (tokens.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        auto fail = [&](const std::string &msg, const Token &t) -> ParseError { return {msg, line_no, t.column}; };
        auto need = [&](size_t min, size_t max, const char *usage) {
            if (tokens.size() < min || tokens.size() > max) {
                const Token &at = tokens.size() < min ? tokens.back() : tokens[max];
                throw fail(std::string("expected: ") + usage, at);
            }
        };
        auto node_ref = [&](const Token &t) {
            if (!valid_id(t.text)) {
                throw fail("invalid node id '" + std::string(t.text) + "'", t);
            }
            if (!is_ground(t.text)) {
                references.emplace_back(std::string(t.text), Located{line_no, t.column});
            }
            return NodeId(t.text);
        };
        auto value = [&](std::string_view literal, const Token &t) {
            try {
                return Rational::parse(literal);
            } catch (const ArithmeticError &e) {
                throw fail(e.what(), t);
            }
        };

        std::string_view keyword = tokens[0].text;
        if (keyword == "node") {
            need(2, SIZE_MAX, "node <id> [<id> ...]");
            for (size_t i = 1; i < tokens.size(); ++i) {
                const Token &t = tokens[i];
                if (!valid_id(t.text) || is_ground(t.text)) {
                    throw fail("invalid node id '" + std::string(t.text) + "'", t);
                }
                if (declared.count(std::string(t.text))) {
                    throw fail("duplicate node '" + std::string(t.text) + "'", t);
                }
                declared[std::string(t.text)] = {line_no, t.column};
                nodes.emplace_back(t.text);
            }
        } else if (keyword == "cap") {
            need(4, 4, "cap <idA> <idB> <value_fF>");
            NodeId a = node_ref(tokens[1]);
            NodeId b = node_ref(tokens[2]);
            if (a == b) {
                throw fail("capacitor connects node '" + a + "' to itself", tokens[2]);
            }
            Rational v = value(tokens[3].text, tokens[3]);
            if (v.sign() <= 0) {
                throw fail("capacitance must be positive", tokens[3]);
            }
            caps.push_back({std::move(a), std::move(b), std::move(v)});
        } else if (keyword == "jj") {
            need(3, 5, "jj <idA> <idB> [EJ=<value_GHz>] [name=<id>]");
            Junction j;
            j.a = node_ref(tokens[1]);
            j.b = node_ref(tokens[2]);
            if (j.a == j.b) {
                throw fail("junction connects node '" + j.a + "' to itself", tokens[2]);
            }
            if (is_ground(j.a)) {
                std::swap(j.a, j.b);
            }
            for (size_t i = 3; i < tokens.size(); ++i) {
                std::string_view kv = tokens[i].text;
                auto eq = kv.find('=');
                std::string_view key = kv.substr(0, eq);
                if (eq == std::string_view::npos) {
                    throw fail("expected key=value", tokens[i]);
                }
                std::string_view val = kv.substr(eq + 1);
                if (key == "EJ") {
                    Rational ej = value(val, tokens[i]);
                    if (ej.sign() <= 0) {
                        throw fail("Josephson energy must be positive", tokens[i]);
                    }
                    j.josephson_energy_ghz = std::move(ej);
                } else if (key == "name") {
                    if (!valid_id(val)) {
                        throw fail("invalid junction name '" + std::string(val) + "'", tokens[i]);
                    }
                    j.name = std::string(val);
                } else {
                    throw fail("unknown junction attribute '" + std::string(key) + "'", tokens[i]);
                }
            }
            for (size_t i = 1; i <= 2; ++i) {
                std::string id(tokens[i].text);
                if (is_ground(id)) {
                    continue;
                }
                if (junction_nodes.count(id)) {
                    throw fail("node '" + id + "' is already in a junction (line " +
                                   std::to_string(junction_nodes[id].line) + ")",
                               tokens[i]);
                }
                junction_nodes[id] = {line_no, tokens[i].column};
            }
            junctions.push_back(std::move(j));
        } else if (keyword == "drive") {
            need(3, 3, "drive <name> <source_node_id>");
            if (!valid_id(tokens[1].text)) {
                throw fail("invalid drive name '" + std::string(tokens[1].text) + "'", tokens[1]);
            }
            if (is_ground(tokens[2].text)) {
                throw fail("drive source cannot be ground", tokens[2]);
            }
            drives.push_back({std::string(tokens[1].text), node_ref(tokens[2])});
            drive_lines.push_back(line_no);
        } else {
            throw fail("unknown statement '" + std::string(keyword) + "'", tokens[0]);
        }
        if (end == text.size()) {
            break;
        }
    }

    for (const auto &[id, at] : references) {
        if (!declared.count(id)) {
            throw ParseError("unknown node '" + id + "'", at.line, at.column);
        }
    }
    try {
        return Netlist(std::move(nodes), std::move(caps), std::move(junctions), std::move(drives));
    } catch (const NetlistError &e) {
        // Remaining checks concern drive ports and junction names; point at the last drive line.
        drive_line = drive_lines.empty() ? line_no : drive_lines.back();
        throw ParseError(e.what(), drive_line, 1);
    }
}

std::string render_netlist(const Netlist &n) {
    std::ostringstream out;
    if (!n.nodes().empty()) {
        out << "node " << join(n.nodes()) << "\n";
    }
    for (const auto &c : n.capacitors()) {
        out << "cap " << c.a << " " << c.b << " " << c.farads_f.to_exact_string() << "\n";
    }
    for (const auto &j : n.junctions()) {
        out << "jj " << j.a << " " << j.b;
        if (j.josephson_energy_ghz) {
            out << " EJ=" << j.josephson_energy_ghz->to_exact_string();
        }
        if (!j.name.empty()) {
            out << " name=" << j.name;
        }
        out << "\n";
    }
    for (const auto &d : n.drive_ports()) {
        out << "drive " << d.name << " " << d.source << "\n";
    }
    return out.str();
}

std::vector<std::vector<NodeId>> floating_groups(const Netlist &n) {
    return groups(n, true);
}

std::vector<std::string> lint(const Netlist &n) {
    std::vector<std::string> out;
    for (const auto &g : floating_groups(n)) {
        out.push_back("no capacitive path to ground from: " + join(g, ", "));
    }
    auto parts = groups(n, false);
    if (parts.size() > 1) {
        std::string msg = "circuit splits into " + std::to_string(parts.size()) + " capacitively decoupled groups:";
        for (const auto &g : parts) {
            msg += " {" + join(g, ", ") + "}";
        }
        out.push_back(msg);
    }
    for (const auto &id : n.nodes()) {
        if (!n.is_drive_source(id) && n.junction_of(id) == nullptr) {
            out.push_back("node '" + id + "' has no junction and no drive; kept as a grounded-node coordinate");
        }
    }
    return out;
}

namespace {

void require_positive(const Rational &v, const char *what) {
    if (v.sign() <= 0) {
        throw NetlistError(std::string(what) + " must be positive, got " + v.to_exact_string());
    }
}

void require_non_negative(const Rational &v, const char *what) {
    if (v.sign() < 0) {
        throw NetlistError(std::string(what) + " must be non-negative, got " + v.to_exact_string());
    }
}

void add_cap(std::vector<Capacitor> &caps, const char *a, const char *b, const Rational &v) {
    if (!v.is_zero()) {
        caps.push_back({a, b, v});
    }
}

const char *kGnd = "gnd";

void add_floating_qubit(std::vector<Capacitor> &caps, const char *a, const char *b, const Rational &c_q,
                        const Rational &g_a, const Rational &g_b) {
    add_cap(caps, a, b, c_q);
    add_cap(caps, a, kGnd, g_a);
    add_cap(caps, b, kGnd, g_b);
}

void check_qubits(const Rational &c_d, const Rational &c_q, const std::array<Rational, 4> &c_g) {
    require_positive(c_d, "C_d");
    require_positive(c_q, "C_q");
    for (const auto &g : c_g) {
        require_positive(g, "island capacitance C_g");
    }
}

}  // namespace

Netlist build_direct_coupled(const DirectCoupledParams &p) {
    check_qubits(p.c_d, p.c_q, p.c_g);
    require_non_negative(p.c_c1, "C_c1");
    require_non_negative(p.c_c2, "C_c2");
    std::vector<Capacitor> caps;
    add_cap(caps, "d", "1", p.c_d);
    add_floating_qubit(caps, "1", "2", p.c_q, p.c_g[0], p.c_g[1]);
    add_floating_qubit(caps, "3", "4", p.c_q, p.c_g[2], p.c_g[3]);
    add_cap(caps, "1", "3", p.c_c1);
    add_cap(caps, "2", "4", p.c_c2);
    return Netlist({"d", "1", "2", "3", "4"}, std::move(caps),
                   {Junction{"1", "2", std::nullopt, "1"}, Junction{"3", "4", std::nullopt, "2"}}, {{"d", "d"}});
}

Netlist build_grounded_bus(const GroundedBusParams &p) {
    check_qubits(p.c_d, p.c_q, p.c_g);
    require_non_negative(p.c_c[0], "C_c");
    require_non_negative(p.c_c[1], "C_c");
    require_positive(p.c_t, "C_t");
    std::vector<Capacitor> caps;
    add_cap(caps, "d", "1", p.c_d);
    add_floating_qubit(caps, "1", "2", p.c_q, p.c_g[0], p.c_g[1]);
    add_cap(caps, "t", kGnd, p.c_t);
    add_floating_qubit(caps, "3", "4", p.c_q, p.c_g[2], p.c_g[3]);
    add_cap(caps, "1", "t", p.c_c[0]);
    add_cap(caps, "t", "3", p.c_c[1]);
    return Netlist({"d", "1", "2", "t", "3", "4"}, std::move(caps),
                   {Junction{"1", "2", std::nullopt, "1"}, Junction{"t", kGnd, std::nullopt, ""},
                    Junction{"3", "4", std::nullopt, "2"}},
                   {{"d", "d"}});
}

Netlist build_floating_bus(const FloatingBusParams &p) {
    check_qubits(p.c_d, p.c_q, p.c_g);
    require_non_negative(p.c_c[0], "C_c");
    require_non_negative(p.c_c[1], "C_c");
    require_positive(p.c_b[0], "C_b");
    require_positive(p.c_b[1], "C_b");
    require_non_negative(p.c_t, "C_t");
    std::vector<Capacitor> caps;
    add_cap(caps, "d", "1", p.c_d);
    add_floating_qubit(caps, "1", "2", p.c_q, p.c_g[0], p.c_g[1]);
    add_floating_qubit(caps, "3", "4", p.c_t, p.c_b[0], p.c_b[1]);
    add_floating_qubit(caps, "5", "6", p.c_q, p.c_g[2], p.c_g[3]);
    add_cap(caps, "1", "3", p.c_c[0]);
    add_cap(caps, "4", "5", p.c_c[1]);
    return Netlist({"d", "1", "2", "3", "4", "5", "6"}, std::move(caps),
                   {Junction{"1", "2", std::nullopt, "1"}, Junction{"3", "4", std::nullopt, "t"},
                    Junction{"5", "6", std::nullopt, "2"}},
                   {{"d", "d"}});
}

std::string_view to_string(CouplingSide side) {
    return side == CouplingSide::same_island ? "same" : "opposite";
}

CouplingSide parse_coupling_side(std::string_view text) {
    if (text == "same" || text == "same-island") {
        return CouplingSide::same_island;
    }
    if (text == "opposite" || text == "opposite-island") {
        return CouplingSide::opposite_island;
    }
    throw NetlistError("unknown layout '" + std::string(text) + "' (expected same or opposite)");
}

void LayoutPreset::validate() const {
    require_positive(island_cap, "island capacitance C_g");
    require_non_negative(ratio, "capacitance ratio r");
    if (lambda < Rational(1)) {
        throw NetlistError("island asymmetry lambda must be >= 1, got " + lambda.to_exact_string());
    }
}

DirectCoupledParams preset_params(const LayoutPreset &p, const DriveBase &base) {
    p.validate();
    Rational big = p.lambda * p.island_cap;
    Rational coupler = p.ratio * p.island_cap;
    DirectCoupledParams out{base.c_d, base.c_q, {p.island_cap, big, p.island_cap, big}, Rational(0), Rational(0)};
    (p.side == CouplingSide::same_island ? out.c_c1 : out.c_c2) = coupler;
    return out;
}

Netlist from_preset(const LayoutPreset &p, const DriveBase &base) {
    return build_direct_coupled(preset_params(p, base));
}

}  // namespace xtalk
