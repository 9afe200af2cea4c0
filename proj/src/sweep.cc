#include "xtalk/sweep.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "xtalk/errors.h"

namespace xtalk {

std::vector<Rational> log_grid(double r_min, double r_max, int points) {
    if (!(r_min > 0.0) || !(r_max >= r_min) || !std::isfinite(r_max)) {
        throw Error("r grid needs 0 < r-min <= r-max");
    }
    if (points < 1) {
        throw Error("r grid needs at least one point");
    }
    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(points));
    double lo = std::log10(r_min);
    double hi = std::log10(r_max);
    for (int i = 0; i < points; ++i) {
        double r = points == 1 ? r_min : std::pow(10.0, lo + (hi - lo) * i / (points - 1));
        if (i == points - 1 && points > 1) {
            r = r_max;
        }
        char buffer[64];
        std::snprintf(buffer, sizeof(buffer), "%.12g", r);
        out.push_back(rational_from_decimal(buffer));
    }
    return out;
}

namespace {

SweepRow evaluate(CouplingSide side, const Rational &lambda, const Rational &r, const SweepOptions &options) {
    LayoutPreset preset{side, options.island_cap, r, lambda};
    Rational value = layout_table_value(preset);
    if (options.cross_check) {
        ReducedSystem rs = quantize(from_preset(preset, options.base));
        Rational pipeline = rs.c_r.at("d", "1m").is_zero() ? Rational(0) : ratio(rs, "d", "1m", "2m");
        if (pipeline != value) {
            throw std::logic_error("sweep: pipeline ratio " + pipeline.to_fraction_string() +
                                   " differs from closed-form value " + value.to_fraction_string() + " at lambda=" +
                                   lambda.to_exact_string() + " r=" + r.to_exact_string());
        }
    }
    double db = to_db(value);
    return {side, lambda, r, std::move(value), db};
}

}  // namespace

std::vector<SweepRow> sweep(CouplingSide side, const std::vector<Rational> &lambdas, const std::vector<Rational> &r_grid,
                            const SweepOptions &options) {
    for (const auto &l : lambdas) {
        LayoutPreset{side, options.island_cap, Rational(0), l}.validate();
    }
    for (const auto &r : r_grid) {
        if (r.sign() <= 0) {
            throw Error("r grid values must be positive");
        }
    }
    size_t total = lambdas.size() * r_grid.size();
    std::vector<SweepRow> rows(total);
    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(total, 1)));

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (size_t i = next++; i < total; i = next++) {
            try {
                rows[i] = evaluate(side, lambdas[i / r_grid.size()], r_grid[i % r_grid.size()], options);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << "layout,lambda,r,R_num,R_den,M_dB\n";
    char db[64];
    for (const auto &row : rows) {
        std::snprintf(db, sizeof(db), "%.6f", row.strength_db);
        out << to_string(row.side) << "," << row.lambda.to_exact_string() << "," << row.r.to_exact_string() << ","
            << row.ratio.numerator().get_str() << "," << row.ratio.denominator().get_str() << "," << db << "\n";
    }
}

}  // namespace xtalk
