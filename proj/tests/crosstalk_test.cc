#include <gtest/gtest.h>

#include <cmath>

#include "support.h"
#include "xtalk/crosstalk.h"
#include "xtalk/errors.h"

using namespace xtalk;

namespace {

const Rational kCd(1, 10);
const Rational kCq(70);

Rational pair_ratio(const Netlist &n) {
    return ratio(quantize(n), "d", "1m", "2m");
}

}  // namespace

TEST(Crosstalk, SpotValueOfDirectPair) {
    Netlist n = build_direct_coupled({kCd, kCq, {50, 50, 50, 50}, 6, 2});
    EXPECT_EQ(pair_ratio(n), Rational(1, 28));
    EXPECT_NEAR(to_db(Rational(1, 28)), -28.943, 1e-3);
}

TEST(Crosstalk, GeneralClosedFormMatchesPipeline) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        auto p = [&] { return fixtures::random_positive(rng, 150, 40); };
        std::array<Rational, 4> cg{p(), p(), p(), p()};
        Rational cc1 = p(), cc2 = p();
        Netlist n = build_direct_coupled({p(), p(), cg, cc1, cc2});
        ASSERT_EQ(pair_ratio(n), closed_form_general(cg[1], cg[2], cg[3], cc1, cc2)) << i;
    }
}

TEST(Crosstalk, DriveAndShuntDoNotEnterRatio) {
    std::array<Rational, 4> cg{40, 55, 61, 47};
    Rational base = pair_ratio(build_direct_coupled({kCd, kCq, cg, 5, 2}));
    EXPECT_EQ(pair_ratio(build_direct_coupled({Rational(7), kCq, cg, 5, 2})), base);
    EXPECT_EQ(pair_ratio(build_direct_coupled({kCd, Rational(3), cg, 5, 2})), base);
    cg[0] = 1000;
    EXPECT_EQ(pair_ratio(build_direct_coupled({kCd, kCq, cg, 5, 2})), base);
}

TEST(Crosstalk, LambdaFormAgreesWithGeneral) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        Rational lambda = Rational(1) + fixtures::random_rational(rng, 0, 10, 9);
        Rational cg = fixtures::random_positive(rng, 100);
        Rational cc1 = fixtures::random_positive(rng, 10);
        Rational cc2 = fixtures::random_rational(rng, 0, 10);
        EXPECT_EQ(closed_form_lambda(lambda, cg, cc1, cc2), closed_form_general(lambda * cg, cg, lambda * cg, cc1, cc2));
    }
}

TEST(Crosstalk, LayoutTableCells) {
    Rational r(1, 10);
    EXPECT_EQ(layout_table_value({CouplingSide::same_island, 50, r, 1}), r / (2 + r));
    EXPECT_EQ(layout_table_value({CouplingSide::opposite_island, 50, r, 1}), r / (2 + 3 * r));
    EXPECT_EQ(layout_table_value({CouplingSide::opposite_island, 50, r, 10}), Rational(1, 1121));
    EXPECT_EQ(layout_table_value({CouplingSide::opposite_island, 50, 1, 4}), Rational(1, 29));
    EXPECT_EQ(layout_table_value({CouplingSide::same_island, 50, 1, 4}), Rational(1, 6));
    for (auto side : {CouplingSide::same_island, CouplingSide::opposite_island}) {
        for (int lambda : {1, 2, 5, 10}) {
            for (Rational rr : {Rational(1, 100), Rational(1, 3), Rational(2), Rational(10)}) {
                LayoutPreset p{side, 50, rr, lambda};
                EXPECT_EQ(pair_ratio(from_preset(p)), layout_table_value(p));
            }
        }
    }
}

TEST(Crosstalk, StrengthThresholds) {
    EXPECT_NEAR(to_db(layout_table_value({CouplingSide::same_island, 50, Rational(1, 20), 1})), -32.26, 0.01);
    // Opposite-island symmetric ratio approaches 1/3 from below.
    EXPECT_NEAR(to_db(Rational(1, 3)), -9.54, 0.01);
    EXPECT_LT(layout_table_value({CouplingSide::opposite_island, 50, 1000000, 1}), Rational(1, 3));
    EXPECT_EQ(to_db(Rational(0)), -std::numeric_limits<double>::infinity());
    EXPECT_DOUBLE_EQ(to_db(Rational(1)), 0.0);
    EXPECT_DOUBLE_EQ(to_db(Rational(1, 100)), -40.0);
}

TEST(Crosstalk, ToDbHandlesHugeOperands) {
    mpq_class tiny(1);
    tiny /= mpq_class(mpz_class(1) << 4000);
    double db = to_db(Rational(tiny));
    EXPECT_NEAR(db, -20.0 * 4000 * std::log10(2.0), 1e-6);
}

TEST(Crosstalk, GroundedBusIsolatesQubits) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        auto p = [&] { return fixtures::random_positive(rng, 150, 30); };
        Netlist n = build_grounded_bus({p(), p(), {p(), p(), p(), p()}, {p(), p()}, p()});
        EXPECT_TRUE(pair_ratio(n).is_zero());
    }
    Rational cg(50), cc(3, 2);
    ReducedSystem rs = quantize(build_grounded_bus({kCd, kCq, {cg, cg, cg, cg}, {cc, cc}, 70}));
    EXPECT_EQ(ratio(rs, "d", "1m", "t"), grounded_bus_bus_ratio(cc, cg));
}

TEST(Crosstalk, FloatingBusRatio) {
    EXPECT_EQ(floating_bus_ratio(4, 50, 100), Rational(1, 1351));
    EXPECT_EQ(floating_bus_ratio_asymptotic(4, 50, 100), Rational(1, 1250));
    std::mt19937_64 rng(14);
    for (int i = 0; i < 50; ++i) {
        Rational cg = fixtures::random_positive(rng, 150);
        Rational cc = fixtures::random_positive(rng, 20);
        Rational cb = fixtures::random_positive(rng, 150);
        Rational ct = fixtures::random_positive(rng, 150);
        Netlist n = build_floating_bus({kCd, kCq, {cg, cg, cg, cg}, {cc, cc}, {cb, cb}, ct});
        EXPECT_EQ(pair_ratio(n), floating_bus_ratio(cc, cg, cb));
    }
}

TEST(Crosstalk, ReportEntriesAndTargets) {
    Netlist n = build_grounded_bus({kCd, kCq, {50, 50, 50, 50}, {1, 1}, 70});
    ReducedSystem rs = quantize(n);
    EXPECT_EQ(default_target(n, rs, "d"), "1m");
    CrosstalkReport r = crosstalk_report(rs, "d", "1m");
    ASSERT_EQ(r.entries.size(), 3u);
    EXPECT_EQ(r.entries[0].ratio, Rational(1));
    EXPECT_EQ(r.entries[1].victim, "t");
    EXPECT_EQ(r.entries[1].ratio, Rational(1, 50));
    EXPECT_TRUE(std::isinf(r.entries[2].strength_db));
    EXPECT_THROW(crosstalk_report(rs, "d", "d"), Error);
    EXPECT_THROW(ratio(rs, "d", "2m", "1m"), ZeroTargetWeightError);
    EXPECT_THROW(ratio(rs, "d", "9m", "1m"), UnknownLabelError);
}

TEST(Crosstalk, RecognisesCanonicalCircuits) {
    auto direct = recognize_canonical(build_direct_coupled({kCd, kCq, {50, 60, 50, 60}, 3, 1}));
    ASSERT_TRUE(direct);
    EXPECT_EQ(direct->approximation(), Approximation::direct);
    EXPECT_EQ(std::get<DirectCoupledParams>(direct->params).c_c1, Rational(3));
    auto bus = recognize_canonical(
        parse_netlist(render_netlist(build_floating_bus({kCd, kCq, {50, 50, 50, 50}, {2, 2}, {90, 90}, 40}))));
    ASSERT_TRUE(bus);
    EXPECT_EQ(bus->approximation(), Approximation::floating_bus);
    EXPECT_FALSE(recognize_canonical(parse_netlist("node a\ncap a gnd 1\njj a gnd\n")));
}

TEST(Crosstalk, WeakCouplingCheckPassesAndErrorsShrink) {
    double previous = 0;
    for (int scale : {1, 10, 100}) {
        Rational cc1 = Rational(1, 2) / scale, cc2 = Rational(1, 5) / scale, cd = Rational(1, 2) / scale;
        Netlist n = build_direct_coupled({cd, kCq, {50, 50, 50, 50}, cc1, cc2});
        auto report = asymptotic_check(quantize(n), *recognize_canonical(n));
        EXPECT_TRUE(report.applicable);
        EXPECT_TRUE(report.passed) << report.max_error << " vs " << report.tolerance;
        if (previous > 0) {
            EXPECT_NEAR(previous / report.max_error, 10.0, 1.0);
        }
        previous = report.max_error;
    }
}

TEST(Crosstalk, WeakCouplingNeedsUniformIslands) {
    Netlist n = build_direct_coupled({kCd, kCq, {50, 60, 50, 60}, 1, 1});
    EXPECT_THROW(asymptotic_check(quantize(n), *recognize_canonical(n)), TopologyMismatchError);
}

TEST(Crosstalk, DriveAmplitudeMatchesHandValues) {
    DriveAmplitude a = drive_amplitude(0.1, 70, 1e-6, 10, 70);
    EXPECT_NEAR(a.impedance_ohm, 377.9644730092272, 1e-9);
    EXPECT_NEAR(a.charge_zpf_coulomb / 3.7350600848175906e-19, 1.0, 1e-12);
    EXPECT_NEAR(a.energy_joule / 5.335800121167986e-28, 1.0, 1e-12);
    EXPECT_NEAR(a.angular_rate_rad_per_s, 5059683.973299266, 1e-3);
    EXPECT_THROW(drive_amplitude(0.1, 70, 1e-6, 0, 70), Error);
    EXPECT_THROW(drive_amplitude(0.1, 0, 1e-6, 10, 70), Error);
}
