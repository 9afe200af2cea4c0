#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xtalk/matrix.h"
#include "xtalk/netlist.h"

namespace xtalk {

enum class ModeKind { drive, qubit_minus, free_plus, grounded_node };

std::string_view to_string(ModeKind kind);
ModeKind parse_mode_kind(std::string_view text);

struct Coordinate {
    std::string label;
    ModeKind kind;

    friend bool operator==(const Coordinate &, const Coordinate &) = default;
};

/// Change of variables Phi = S Phi' from node fluxes to device coordinates. Every floating
/// junction (a, b) contributes a plus row Phi_a + Phi_b and a minus row Phi_a - Phi_b; every
/// other node keeps its own flux.
struct ModeSystem {
    Matrix transform;  // labels are coordinate labels; columns follow the netlist node order
    std::vector<Coordinate> coordinates;
    std::vector<std::string> diagnostics;

    std::vector<std::string> retained_labels() const;
    std::vector<std::string> free_labels() const;
    ModeKind kind_of(const std::string &label) const;
};

struct ReducedSystem {
    Matrix c_r;
    std::vector<Coordinate> retained;
    std::vector<std::string> removed;
    Matrix original;  // full matrix in transformed coordinates

    ModeKind kind_of(const std::string &label) const;
};

/// Maxwell capacitance matrix over the non-ground nodes, in declaration order.
Matrix assemble(const Netlist &n);

ModeSystem build_modes(const Netlist &n);

/// Capacitance matrix in mode coordinates (congruence by the mode transform).
Matrix transform(const Matrix &c_prime, const ModeSystem &ms);

/// Eliminates the free-plus coordinates via the Schur complement over the free block.
ReducedSystem reduce(const Matrix &c, const ModeSystem &ms);

/// (submatrix(invert(c), retained))^{-1}.
Matrix reduce_by_inverse(const Matrix &c, const ModeSystem &ms);

/// c_RR - c_RF c_FF^{-1} c_FR.
Matrix reduce_by_schur(const Matrix &c, const ModeSystem &ms);

/// assemble -> build_modes -> transform -> reduce. Throws FloatingSubcircuitError when some
/// nodes have no capacitive path to ground.
ReducedSystem quantize(const Netlist &n);

}  // namespace xtalk
