#include "xtalk/cli.h"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "xtalk/errors.h"
#include "xtalk/report.h"
#include "xtalk/sweep.h"

namespace xtalk {

namespace {

struct AnalyzeFlags {
    std::string format = "text";
    std::string target;
    bool check_asymptotic = false;
    std::optional<double> impedance_ratio;
};

void add_analyze_flags(CLI::App *cmd, AnalyzeFlags &f) {
    cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--target", f.target, "Target coordinate label for every drive port");
    cmd->add_flag("--check-asymptotic", f.check_asymptotic, "Compare C_r with the weak-coupling closed form");
    cmd->add_option("--impedance-ratio", f.impedance_ratio,
                    "Z_target/Z_victim; adds impedance-corrected strengths beyond the equal-qubit formula");
}

int emit_analysis(const Netlist &n, const AnalyzeFlags &f, std::ostream &out) {
    AnalyzeOptions options;
    options.target = f.target;
    options.check_asymptotic = f.check_asymptotic;
    options.impedance_ratio = f.impedance_ratio;
    AnalysisReport report = analyze(n, options);
    out << (f.format == "json" ? render_json(report) : render_text(report));
    return kExitOk;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw NetlistError("cannot read " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

unsigned threads_from_env() {
    const char *value = std::getenv("XTALK_THREADS");
    if (value == nullptr || *value == '\0') {
        return 0;
    }
    char *end = nullptr;
    long n = std::strtol(value, &end, 10);
    if (*end != '\0' || n < 0) {
        throw Error(std::string("XTALK_THREADS must be a non-negative integer, got '") + value + "'");
    }
    return static_cast<unsigned>(n);
}

struct BuiltinFlags {
    std::string kind;
    std::map<std::string, std::string> values;
    std::string emit;
};

Rational value_or(const BuiltinFlags &b, const std::string &key, std::optional<std::string> fallback) {
    auto it = b.values.find(key);
    if (it != b.values.end() && !it->second.empty()) {
        return Rational::parse(it->second);
    }
    if (!fallback) {
        throw Error("builtin " + b.kind + " requires --" + key);
    }
    return Rational::parse(*fallback);
}

Netlist build_builtin(const BuiltinFlags &b) {
    Rational c_d = value_or(b, "Cd", "0.1");
    Rational c_q = value_or(b, "Cq", "70");
    Rational c_g = value_or(b, "Cg", std::nullopt);
    Rational lambda = value_or(b, "lambda", "1");
    std::array<Rational, 4> islands{c_g, lambda * c_g, c_g, lambda * c_g};
    if (b.kind == "direct") {
        if (b.values.at("Cc1").empty() && b.values.at("Cc2").empty()) {
            throw Error("builtin direct requires --Cc1 or --Cc2");
        }
        return build_direct_coupled({c_d, c_q, islands, value_or(b, "Cc1", "0"), value_or(b, "Cc2", "0")});
    }
    Rational c_c = value_or(b, "Cc", std::nullopt);
    Rational c_t = value_or(b, "Ct", "70");
    if (b.kind == "grounded-bus") {
        return build_grounded_bus({c_d, c_q, islands, {c_c, c_c}, c_t});
    }
    Rational c_b = value_or(b, "Cb", std::nullopt);
    return build_floating_bus({c_d, c_q, islands, {c_c, c_c}, {c_b, c_b}, c_t});
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact capacitive drive-crosstalk analysis for superconducting circuits", "xtalk"};
    app.require_subcommand(1);

    AnalyzeFlags analyze_flags;
    std::string netlist_path;
    auto *analyze_cmd = app.add_subcommand("analyze", "Analyse a netlist file");
    analyze_cmd->add_option("file", netlist_path, "Netlist file")->required();
    add_analyze_flags(analyze_cmd, analyze_flags);

    std::string layout;
    std::vector<std::string> lambda_text{"1"};
    double r_min = 0.001;
    double r_max = 10.0;
    int points = 200;
    std::string sweep_out;
    auto *sweep_cmd = app.add_subcommand("sweep", "Tabulate the layout table over a log grid of r");
    sweep_cmd->add_option("--layout", layout, "same or opposite")->required();
    sweep_cmd->add_option("--lambda", lambda_text, "Comma-separated island ratios")->delimiter(',');
    sweep_cmd->add_option("--r-min", r_min);
    sweep_cmd->add_option("--r-max", r_max);
    sweep_cmd->add_option("--points", points);
    sweep_cmd->add_option("--out", sweep_out, "CSV path (default stdout)");

    BuiltinFlags builtin;
    AnalyzeFlags builtin_analyze;
    auto *builtin_cmd = app.add_subcommand("builtin", "Build and analyse a canonical circuit");
    builtin_cmd->add_option("kind", builtin.kind)->required()->check(
        CLI::IsMember({"direct", "grounded-bus", "floating-bus"}));
    const std::pair<const char *, const char *> params[] = {
        {"Cd", "Drive coupling, fF (default 0.1)"},
        {"Cq", "Junction shunt, fF (default 70)"},
        {"Cg", "Island to ground, fF (required)"},
        {"Cc1", "Coupler between islands 1 and 3, fF (direct)"},
        {"Cc2", "Coupler between islands 2 and 4, fF (direct)"},
        {"Cc", "Qubit-bus coupler, fF (required for buses)"},
        {"Ct", "Bus shunt, fF (default 70)"},
        {"Cb", "Bus island to ground, fF (required for floating-bus)"},
        {"lambda", "Island asymmetry: islands 2 and 4 get lambda*Cg (default 1)"},
    };
    for (const auto &[key, help] : params) {
        builtin_cmd->add_option(std::string("--") + key, builtin.values[key], help);
    }
    builtin_cmd->add_option("--emit", builtin.emit, "Write the netlist to PATH ('-' for stdout) and stop");
    add_analyze_flags(builtin_cmd, builtin_analyze);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (analyze_cmd->parsed()) {
            Netlist n = parse_netlist(read_file(netlist_path));
            return emit_analysis(n, analyze_flags, out);
        }
        if (sweep_cmd->parsed()) {
            CouplingSide side;
            std::vector<Rational> lambdas;
            std::vector<Rational> grid;
            try {
                side = parse_coupling_side(layout);
                for (const auto &l : lambda_text) {
                    lambdas.push_back(Rational::parse(l));
                    if (lambdas.back() < Rational(1)) {
                        throw Error("lambda must be >= 1, got " + l);
                    }
                }
                grid = log_grid(r_min, r_max, points);
            } catch (const Error &e) {
                err << "error: " << e.what() << "\n";
                return kExitUsage;
            }
            SweepOptions options;
            options.threads = threads_from_env();
            auto rows = sweep(side, lambdas, grid, options);
            if (sweep_out.empty() || sweep_out == "-") {
                write_sweep_csv(out, rows);
            } else {
                std::ofstream file(sweep_out, std::ios::binary);
                if (!file) {
                    err << "error: cannot write " << sweep_out << "\n";
                    return kExitFailure;
                }
                write_sweep_csv(file, rows);
            }
            return kExitOk;
        }
        Netlist n;
        try {
            n = build_builtin(builtin);
        } catch (const NetlistError &) {
            throw;
        } catch (const Error &e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        if (!builtin.emit.empty()) {
            if (builtin.emit == "-") {
                out << render_netlist(n);
            } else {
                std::ofstream file(builtin.emit, std::ios::binary);
                if (!file) {
                    err << "error: cannot write " << builtin.emit << "\n";
                    return kExitFailure;
                }
                file << render_netlist(n);
            }
            return kExitOk;
        }
        return emit_analysis(n, builtin_analyze, out);
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FloatingSubcircuitError &e) {
        err << "error: " << e.what() << "\n";
        return kExitSingular;
    } catch (const SingularMatrixError &e) {
        err << "error: " << e.what() << "\n";
        return kExitSingular;
    } catch (const ZeroTargetWeightError &e) {
        err << "error: " << e.what() << "\n";
        return kExitZeroTarget;
    } catch (const UnknownLabelError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NetlistError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArithmeticError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace xtalk
