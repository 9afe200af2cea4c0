#pragma once

#include <iosfwd>
#include <vector>

#include "xtalk/crosstalk.h"

namespace xtalk {

struct SweepRow {
    CouplingSide side;
    Rational lambda;
    Rational r;
    Rational ratio;
    double strength_db;
};

struct SweepOptions {
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 1;
    Rational island_cap{50};
    DriveBase base;
    /// Re-derive every grid point through the full netlist pipeline and require exact agreement.
    bool cross_check = true;
};

/// `points` values log-spaced over [r_min, r_max], each rounded to 12 significant digits and
/// read back exactly. Throws Error unless 0 < r_min <= r_max and points >= 1.
std::vector<Rational> log_grid(double r_min, double r_max, int points);

/// One row per (lambda, r) in lambda-major order. Grid points are independent and may be evaluated
/// concurrently; output order never depends on scheduling. Throws std::logic_error if the
/// pipeline disagrees with the table formula.
std::vector<SweepRow> sweep(CouplingSide side, const std::vector<Rational> &lambdas, const std::vector<Rational> &r_grid,
                            const SweepOptions &options = {});

/// header "layout,lambda,r,R_num,R_den,M_dB".
void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);

}  // namespace xtalk
