#include <gtest/gtest.h>

#include <json.hpp>

#include "xtalk/errors.h"
#include "xtalk/report.h"

using namespace xtalk;

namespace {

Netlist direct_pair() {
    return build_direct_coupled({Rational(1, 10), 70, {50, 50, 50, 50}, 6, 2});
}

}  // namespace

TEST(Report, JsonRoundTripIsByteIdentical) {
    AnalyzeOptions options;
    options.check_asymptotic = true;
    options.impedance_ratio = 1.2;
    for (const Netlist &n :
         {direct_pair(), build_grounded_bus({Rational(1, 10), 70, {50, 50, 50, 50}, {1, 1}, 70}),
          build_floating_bus({Rational(1, 10), 70, {50, 50, 50, 50}, {4, 4}, {100, 100}, 70})}) {
        std::string first = render_json(analyze(n, options));
        EXPECT_EQ(render_json(parse_report_json(first)), first);
    }
}

TEST(Report, RenderingIsDeterministic) {
    EXPECT_EQ(render_text(analyze(direct_pair())), render_text(analyze(direct_pair())));
    EXPECT_EQ(render_json(analyze(direct_pair())), render_json(analyze(direct_pair())));
}

TEST(Report, JsonCarriesExactRatios) {
    auto doc = nlohmann::json::parse(render_json(analyze(direct_pair())));
    const auto &entries = doc["crosstalk"][0]["entries"];
    EXPECT_EQ(entries[1]["victim"], "2m");
    EXPECT_EQ(entries[1]["R"]["exact"], "1/28");
    EXPECT_EQ(entries[1]["R"]["decimal"], "0.0357142857143");
    EXPECT_DOUBLE_EQ(entries[1]["M_dB"].get<double>(), -28.94);
    EXPECT_EQ(doc["reduced_matrix"]["labels"], (std::vector<std::string>{"d", "1m", "2m"}));
    EXPECT_TRUE(doc["asymptotic"].is_null());
}

TEST(Report, TextShowsZeroRatio) {
    std::string text = render_text(analyze(build_grounded_bus({Rational(1, 10), 70, {50, 50, 50, 50}, {1, 1}, 70})));
    EXPECT_NE(text.find("2m: R=0 (-inf dB)"), std::string::npos) << text;
    auto doc = nlohmann::json::parse(
        render_json(analyze(build_grounded_bus({Rational(1, 10), 70, {50, 50, 50, 50}, {1, 1}, 70}))));
    EXPECT_TRUE(doc["crosstalk"][0]["entries"][2]["M_dB"].is_null());
}

TEST(Report, ExplicitTarget) {
    AnalyzeOptions options;
    options.target = "2m";
    AnalysisReport r = analyze(direct_pair(), options);
    EXPECT_EQ(r.crosstalk[0].target, "2m");
    EXPECT_EQ(r.crosstalk[0].entries[0].ratio, Rational(28));
    options.target = "zz";
    EXPECT_THROW(analyze(direct_pair(), options), UnknownLabelError);
}

TEST(Report, AsymptoticSectionNotesUnsupportedCircuits) {
    AnalyzeOptions options;
    options.check_asymptotic = true;
    Netlist n = parse_netlist("node d a\ncap d a 1\ncap a gnd 50\njj a gnd\ndrive d d\n");
    AnalysisReport r = analyze(n, options);
    ASSERT_TRUE(r.asymptotic);
    EXPECT_FALSE(r.asymptotic->report);
    EXPECT_NE(render_text(r).find("skipped"), std::string::npos);
}

TEST(Report, ImpedanceCorrectionIsLabelled) {
    AnalyzeOptions options;
    options.impedance_ratio = 4.0;
    std::string text = render_text(analyze(direct_pair(), options));
    EXPECT_NE(text.find("impedance-corrected -22.92 dB"), std::string::npos) << text;
    EXPECT_NE(text.find("beyond the equal-qubit formula"), std::string::npos);
    options.impedance_ratio = -1.0;
    EXPECT_THROW(analyze(direct_pair(), options), Error);
}

TEST(Report, FloatingCircuitThrows) {
    Netlist n = parse_netlist("node d a b\ncap d a 1\ncap a b 5\njj a b\ndrive x d\n");
    EXPECT_THROW(analyze(n), FloatingSubcircuitError);
}

TEST(Report, FormatDb) {
    EXPECT_EQ(format_db(-9.5424), "-9.54");
    EXPECT_EQ(format_db(-std::numeric_limits<double>::infinity()), "-inf");
}
