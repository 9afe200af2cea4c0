#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xtalk/crosstalk.h"

namespace xtalk {

struct AnalyzeOptions {
    /// Denominator coordinate for every drive port; empty selects default_target().
    std::string target;
    bool check_asymptotic = false;
    /// Z_target / Z_victim when the two qubits have different impedances. Ratios are then also
    /// reported multiplied by sqrt of this factor, which goes beyond the equal-qubit formula.
    std::optional<double> impedance_ratio;
};

struct AsymptoticSection {
    std::optional<AsymptoticReport> report;
    std::string note;  // why the check was skipped, when `report` is empty
};

/// Everything `xtalk analyze` prints. JSON and text renderings carry the same numbers.
struct AnalysisReport {
    Netlist netlist;
    Matrix capacitance;  // Maxwell matrix over nodes
    Matrix transform;    // S, rows = coordinates
    std::vector<Coordinate> coordinates;
    Matrix reduced;
    std::vector<std::string> removed;
    std::vector<CrosstalkReport> crosstalk;
    std::vector<std::string> diagnostics;
    std::optional<double> impedance_ratio;
    std::optional<AsymptoticSection> asymptotic;
};

/// Runs the full pipeline. Throws FloatingSubcircuitError, UnknownLabelError, ZeroTargetWeightError.
AnalysisReport analyze(const Netlist &n, const AnalyzeOptions &options = {});

std::string render_json(const AnalysisReport &r);
std::string render_text(const AnalysisReport &r);

/// Inverse of render_json: render_json(parse_report_json(render_json(r))) == render_json(r).
AnalysisReport parse_report_json(const std::string &text);

/// dB with two decimals, or "-inf".
std::string format_db(double db);

}  // namespace xtalk
