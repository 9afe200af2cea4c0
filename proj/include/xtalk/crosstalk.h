#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xtalk/netlist.h"
#include "xtalk/quantize.h"

namespace xtalk {

struct Weight {
    std::string label;
    Rational value;

    friend bool operator==(const Weight &, const Weight &) = default;
};

struct CrosstalkEntry {
    std::string victim;
    Rational ratio;     // |w(victim) / w(target)|
    double strength_db;  // 20 log10(ratio); -inf when ratio == 0

    friend bool operator==(const CrosstalkEntry &, const CrosstalkEntry &) = default;
};

/// How strongly one drive port reaches every retained coordinate, relative to its target.
struct CrosstalkReport {
    std::string drive;
    std::vector<Weight> weights;
    std::string target;
    std::vector<CrosstalkEntry> entries;

    friend bool operator==(const CrosstalkReport &, const CrosstalkReport &) = default;
};

/// Drive row of C_r restricted to the non-drive coordinates, in C_r order.
std::vector<Weight> coupling_weights(const ReducedSystem &rs, const std::string &drive);

/// |[C_r]_{drive,victim}| / |[C_r]_{drive,target}|. Throws ZeroTargetWeightError.
Rational ratio(const ReducedSystem &rs, const std::string &drive, const std::string &target,
               const std::string &victim);

/// 20 log10(r); -infinity for r == 0.
double to_db(const Rational &r);

CrosstalkReport crosstalk_report(const ReducedSystem &rs, const std::string &drive, const std::string &target);

/// Among coordinates of devices capacitively adjacent to the drive node, the one with the largest
/// |weight| (declaration order breaks ties); falls back to the largest weight overall.
std::string default_target(const Netlist &n, const ReducedSystem &rs, const std::string &drive);

// ---------------------------------------------------------------------------
// Closed forms for the direct-coupled pair with drive on island 1.

/// |C_g4 C_c1 - C_g3 C_c2| / ((C_g3 + C_g4)(C_c2 + C_g2) + C_g2 (C_c1 + C_c2)).
Rational closed_form_general(const Rational &c_g2, const Rational &c_g3, const Rational &c_g4, const Rational &c_c1,
                             const Rational &c_c2);

/// Island caps C_g, lambda C_g, C_g, lambda C_g.
Rational closed_form_lambda(const Rational &lambda, const Rational &c_g, const Rational &c_c1, const Rational &c_c2);

/// The layout-table cell for a preset: r/(2+r), r/(2+3r), r/(lambda+1+r) or
/// r/(lambda(lambda+1)+(2 lambda+1) r).
Rational layout_table_value(const LayoutPreset &p);

/// Qubit-to-qubit ratio through a floating bus with equal islands:
/// C_c^2 / (2 C_b (C_c + 2 C_g) + C_c (C_c + 4 C_g)).
Rational floating_bus_ratio(const Rational &c_c, const Rational &c_g, const Rational &c_b);

/// Leading-order floating-bus ratio C_c^2 / (4 C_b C_g).
Rational floating_bus_ratio_asymptotic(const Rational &c_c, const Rational &c_g, const Rational &c_b);

/// Qubit-to-bus ratio through a grounded bus: C_c / C_g.
Rational grounded_bus_bus_ratio(const Rational &c_c, const Rational &c_g);

// ---------------------------------------------------------------------------
// Weak-coupling approximations of C_r.

enum class Approximation { direct, grounded_bus, floating_bus };

std::string_view to_string(Approximation a);

using CanonicalParams = std::variant<DirectCoupledParams, GroundedBusParams, FloatingBusParams>;

/// A netlist recognised as one of the canonical builders. `labels` are the netlist's own names
/// for the retained coordinates in the order drive, qubit 1, [bus], qubit 2.
struct CanonicalCircuit {
    CanonicalParams params;
    std::vector<std::string> labels;

    Approximation approximation() const;
};

/// Matches `n` against the canonical builders (node names, wiring, junction orientation).
std::optional<CanonicalCircuit> recognize_canonical(const Netlist &n);

struct EntryError {
    std::string row;
    std::string col;
    Rational exact;
    Rational approx;
    double relative_error;
};

struct AsymptoticReport {
    Approximation which;
    double epsilon;  // max(coupling caps) / min(island and shunt caps)
    double tolerance;  // kAsymptoticFactor * epsilon
    double max_error;
    bool applicable;  // epsilon <= kAsymptoticMaxEpsilon
    bool passed;      // applicable && max_error <= tolerance
    std::vector<EntryError> entries;
};

inline constexpr double kAsymptoticFactor = 5.0;
inline constexpr double kAsymptoticMaxEpsilon = 0.02;

/// Leading-order C_r for a canonical circuit. Throws TopologyMismatchError if the circuit's
/// islands (and couplers, buses) are not uniform as the approximation assumes.
Matrix approximate_reduced(const CanonicalCircuit &c);

/// Compares every entry of `exact` with approximate_reduced(c).
AsymptoticReport asymptotic_check(const ReducedSystem &exact, const CanonicalCircuit &c);

// ---------------------------------------------------------------------------

/// Drive magnitude Omega = C_d Q_zpf V_d / C_q with Q_zpf = sqrt(hbar / 2 Z_q), Z_q = sqrt(L/C).
/// C is an explicit input: the bare shunt C_q or the reduced diagonal C_q + C_g/2 are both common.
struct DriveAmplitude {
    double impedance_ohm;
    double charge_zpf_coulomb;
    double energy_joule;           // Omega as C_d Q_zpf V_d / C_q
    double angular_rate_rad_per_s;  // Omega / hbar
};

inline constexpr double kHbar = 1.054571817e-34;  // J s

DriveAmplitude drive_amplitude(double c_d_ff, double c_q_ff, double v_d_volt, double inductance_nh,
                               double capacitance_ff);

}  // namespace xtalk
