#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xtalk/rational.h"

namespace xtalk {

using NodeId = std::string;

inline constexpr std::string_view kGround = "gnd";

struct Capacitor {
    NodeId a;
    NodeId b;
    Rational farads_f;  // femtofarads, > 0

    friend bool operator==(const Capacitor &, const Capacitor &) = default;
};

/// Josephson junction between two nodes; floating unless `b` is ground.
struct Junction {
    NodeId a;
    NodeId b;
    std::optional<Rational> josephson_energy_ghz;
    /// Coordinate stem for floating junctions ("1" gives 1p/1m). Empty means the ordinal.
    std::string name;

    bool floating() const {
        return b != kGround;
    }
    friend bool operator==(const Junction &, const Junction &) = default;
};

struct DrivePort {
    std::string name;
    NodeId source;

    friend bool operator==(const DrivePort &, const DrivePort &) = default;
};

/// Validated lumped circuit: nodes, capacitors, junctions and drive ports.
class Netlist {
   public:
    Netlist() = default;
    /// Validates every invariant; throws NetlistError on the first violation.
    Netlist(std::vector<NodeId> nodes, std::vector<Capacitor> capacitors, std::vector<Junction> junctions,
            std::vector<DrivePort> drive_ports);

    const std::vector<NodeId> &nodes() const {
        return nodes_;
    }
    const std::vector<Capacitor> &capacitors() const {
        return capacitors_;
    }
    const std::vector<Junction> &junctions() const {
        return junctions_;
    }
    const std::vector<DrivePort> &drive_ports() const {
        return drive_ports_;
    }

    bool has_node(std::string_view id) const;
    bool is_drive_source(std::string_view id) const;
    /// The junction touching `id`, if any.
    const Junction *junction_of(std::string_view id) const;
    /// Stem used for the coordinates of a floating junction (its name, else its 1-based ordinal).
    std::string junction_stem(const Junction &j) const;
    /// Nodes sharing a capacitor with `id` (ground excluded), in capacitor order without repeats.
    std::vector<NodeId> neighbours(std::string_view id) const;
    /// Sum of capacitance between `a` and `b` (either may be ground).
    Rational capacitance_between(std::string_view a, std::string_view b) const;

    friend bool operator==(const Netlist &, const Netlist &) = default;

   private:
    std::vector<NodeId> nodes_;
    std::vector<Capacitor> capacitors_;
    std::vector<Junction> junctions_;
    std::vector<DrivePort> drive_ports_;
};

/// Parses the line-oriented netlist format. Throws ParseError with 1-based line/column.
///
///   node <id> [<id> ...]
///   cap <idA> <idB> <value_fF>
///   jj <idA> <idB> [EJ=<value_GHz>] [name=<stem>]
///   drive <name> <source_node_id>
Netlist parse_netlist(std::string_view text);

/// Canonical text form; parse_netlist(render_netlist(n)) == n.
std::string render_netlist(const Netlist &n);

/// Non-fatal observations: decoupled device groups, spectator nodes.
std::vector<std::string> lint(const Netlist &n);

/// Groups of nodes with no capacitive path to ground (each group sorted by declaration order).
std::vector<std::vector<NodeId>> floating_groups(const Netlist &n);

// ---------------------------------------------------------------------------
// Canonical circuits. Zero-valued coupling capacitances are omitted.

/// Two floating transmons coupled directly. Nodes d,1,2,3,4; junctions (1,2) "1" and (3,4) "2";
/// drive "d" into node 1; C_c1 couples 1-3 and C_c2 couples 2-4.
struct DirectCoupledParams {
    Rational c_d;
    Rational c_q;
    std::array<Rational, 4> c_g;  // islands 1..4 to ground
    Rational c_c1;
    Rational c_c2;
};
Netlist build_direct_coupled(const DirectCoupledParams &p);

/// Two floating transmons coupled through a grounded bus "t" (junction t-gnd, shunt C_t).
/// Nodes d,1,2,t,3,4; couplers 1-t and t-3.
struct GroundedBusParams {
    Rational c_d;
    Rational c_q;
    std::array<Rational, 4> c_g;
    std::array<Rational, 2> c_c;  // qubit 1 to bus, bus to qubit 2
    Rational c_t;
};
Netlist build_grounded_bus(const GroundedBusParams &p);

/// Two floating transmons coupled through a floating bus on nodes 3,4 (junction "t", shunt C_t,
/// each bus island to ground through C_b). Nodes d,1..6; couplers 1-3 and 4-5.
struct FloatingBusParams {
    Rational c_d;
    Rational c_q;
    std::array<Rational, 4> c_g;
    std::array<Rational, 2> c_c;
    std::array<Rational, 2> c_b;  // bus islands to ground
    Rational c_t;                 // across the bus junction
};
Netlist build_floating_bus(const FloatingBusParams &p);

enum class CouplingSide { same_island, opposite_island };

std::string_view to_string(CouplingSide side);
/// Accepts "same", "same-island", "opposite", "opposite-island".
CouplingSide parse_coupling_side(std::string_view text);

/// One cell of the layout table: island caps C_g, lambda*C_g and coupler r*C_g.
struct LayoutPreset {
    CouplingSide side = CouplingSide::same_island;
    Rational island_cap{50};
    Rational ratio{1};
    Rational lambda{1};

    bool symmetric() const {
        return lambda == Rational(1);
    }
    /// Throws NetlistError unless C_g > 0, r >= 0, lambda >= 1.
    void validate() const;
};

struct DriveBase {
    Rational c_d{1, 10};
    Rational c_q{70};
};

DirectCoupledParams preset_params(const LayoutPreset &p, const DriveBase &base = {});
Netlist from_preset(const LayoutPreset &p, const DriveBase &base = {});

}  // namespace xtalk
