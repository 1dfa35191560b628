#include <gtest/gtest.h>

#include "chaoslab/config.hpp"
#include "chaoslab/presets.hpp"

using namespace chaoslab;

namespace {

std::vector<ConfigIssue> issues_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.issues();
    }
    return {};
}

bool mentions(const std::vector<ConfigIssue>& issues, int line, const std::string& fragment) {
    for (const auto& i : issues)
        if (i.line == line && i.message.find(fragment) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST(Config, MinimalTorusConfigGetsDefaults) {
    const auto c = parse_config("[model]\nkind = 2d\n[sweep]\nvalues = 1\n[measures]\nlist = gamma\n");
    EXPECT_EQ(c.kind, ModelKind::torus2d);
    EXPECT_EQ(c.lx, 3);
    EXPECT_EQ(c.ly, 3);
    EXPECT_DOUBLE_EQ(c.delta0, 1.0);
    EXPECT_DOUBLE_EQ(c.delta, 0.09);
    EXPECT_EQ(c.realizations, 200);
    EXPECT_EQ(c.units, CouplingUnits::native);
}

TEST(Config, MinimalChainConfigGetsDefaults) {
    const auto c = parse_config("[model]\nkind = 1d\n[sweep]\nunits = J_over_Jc\nvalues = 1\n[measures]\nlist = pn\n");
    EXPECT_EQ(c.lengths, std::vector<int>{12});
    EXPECT_EQ(c.realizations, 10);
    EXPECT_EQ(to_plans(c).front().model.chain.range, 11);
}

TEST(Config, RangeEqualToLengthIsRejected) {
    const auto issues = issues_of("[model]\nkind = 1d\nlength = 8\nrange = 8\n[sweep]\nvalues = 1\n[measures]\nlist = pn\n");
    ASSERT_EQ(issues.size(), 1u);
    EXPECT_TRUE(mentions(issues, 4, "l_c = 8 outside [1, 7]"));
}

TEST(Config, ReportsEveryProblemWithItsLine) {
    const std::string text =
        "[model]\n"          // 1
        "kind = 1d\n"        // 2
        "lx = 3\n"           // 3: torus key on a chain
        "colour = red\n"     // 4: unknown key
        "[sweep]\n"          // 5
        "values = 1, x\n"    // 6: bad number
        "nonsense\n"         // 7: syntax
        "[extras]\n"         // 8: unknown section
        "[measures]\n"       // 9
        "list = pn, foo\n";  // 10: unknown measure
    const auto issues = issues_of(text);
    EXPECT_TRUE(mentions(issues, 3, "does not apply"));
    EXPECT_TRUE(mentions(issues, 4, "unknown key 'colour'"));
    EXPECT_TRUE(mentions(issues, 6, "expected a number"));
    EXPECT_TRUE(mentions(issues, 7, "expected 'key = value'"));
    EXPECT_TRUE(mentions(issues, 8, "unknown section"));
    EXPECT_TRUE(mentions(issues, 10, "unknown measure 'foo'"));
}

TEST(Config, EmptyMeasureSelectionIsRefused) {
    const auto issues = issues_of("[model]\nkind = 2d\n[sweep]\nvalues = 1\n[measures]\nlist =\n");
    EXPECT_TRUE(mentions(issues, 6, "no measures selected"));
}

TEST(Config, ConstraintViolations) {
    EXPECT_TRUE(mentions(issues_of("[model]\nkind = 1d\nrabi = 5\n[sweep]\nvalues = 1\n[measures]\nlist = pn\n"), 3, "rabi"));
    EXPECT_TRUE(mentions(issues_of("[model]\nkind = 1d\nlength = 20\n[sweep]\nvalues = 1\n[measures]\nlist = pn\n"), 3,
                         "outside [2, 16]"));
    EXPECT_TRUE(mentions(issues_of("[model]\nkind = 2d\n[sweep]\nunits = J_over_Jc\nvalues = 1\n[measures]\nlist = pn\n"),
                         4, "1d model only"));
    EXPECT_TRUE(mentions(issues_of("[model]\nkind = 2d\n[sweep]\nlog_from = 1\nlog_to = 10\n[measures]\nlist = pn\n"), 4,
                         "together"));
    EXPECT_TRUE(mentions(issues_of("[model]\nkind = 2d\n[sweep]\nvalues = 1\n[measures]\nlist = C_3\n"), 6,
                         "distance"));
    EXPECT_TRUE(mentions(issues_of("[model]\nkind = 2d\n[sweep]\nvalues = 1\n[measures]\nlist = pn\nscope.C_1 = central\n"),
                         7, "not in the measure list"));
    EXPECT_TRUE(mentions(issues_of("[model]\nkind = 2d\nkind = 1d\n[sweep]\nvalues = 1\n[measures]\nlist = pn\n"), 3,
                         "duplicate"));
}

TEST(Config, ScopeOverridesApplyToNamedMeasures) {
    const auto c = parse_config(
        "[model]\nkind = 2d\n[sweep]\nvalues = 1\n[measures]\nlist = pn, C_1, C_2\nscope.pn = central\nscope.C_1 = third\n");
    EXPECT_EQ(c.measures[0].scope, Scope::central);
    EXPECT_EQ(c.measures[1].scope, Scope::central_third);
    EXPECT_EQ(c.measures[2].scope, Scope::band);
}

TEST(Config, RoundTrip) {
    const std::string text =
        "# comment\n[model]\nkind = 1d\nlength = 6, 8\nrange = 1, half, all\ngradient = 0.5\nrabi = 37.25\nband = 2\n"
        "[sweep]\nunits = J_over_Jc\nlog_from = 0.01\nlog_to = 300\npoints = 7\n"
        "[ensemble]\nrealizations = 4\nbase_seed = 18446744073709551615\nthreads = 2\n"
        "[measures]\nlist = gamma, C_1:third, S_block_2, clambda\nscope.S_block_2 = central\nband_rule = window\nunfolding = global\nunfolding_degree = 5\n"
        "pds_bin_width = 0.2\n[output]\ndirectory = somewhere/else\nname = trial\nformats = csv\ndump_eigenvalues = yes\n";
    const ExperimentConfig c = parse_config(text);
    EXPECT_EQ(c.base_seed, 18446744073709551615ull);
    EXPECT_EQ(to_plans(c).size(), 6u);
    EXPECT_EQ(to_plans(c).front().unfolding, Unfolding::global);
    EXPECT_EQ(to_plans(c).front().unfolding_degree, 5);
    const ExperimentConfig again = parse_config(serialize(c));
    EXPECT_EQ(again, c);
    EXPECT_EQ(serialize(again), serialize(c));
}

TEST(Config, LogGridEndpointsAreExact) {
    ExperimentConfig c;
    c.log_grid = LogGrid{0.01, 100.0, 5};
    const auto g = c.grid();
    ASSERT_EQ(g.size(), 5u);
    EXPECT_EQ(g.front(), 0.01);
    EXPECT_EQ(g.back(), 100.0);
    EXPECT_NEAR(g[2], 1.0, 1e-14);
}

TEST(Presets, EveryPresetValidatesAndRoundTrips) {
    ASSERT_EQ(preset_catalog().size(), 14u);
    for (const auto& info : preset_catalog()) {
        for (bool full : {false, true}) {
            const ExperimentConfig c = preset(info.name, full);
            EXPECT_TRUE(check(c).empty()) << info.name;
            EXPECT_EQ(parse_config(serialize(c)), c) << info.name;
        }
    }
    EXPECT_THROW(preset("fig-nonexistent"), ArgumentError);
}

TEST(Presets, ReferenceParameters) {
    const auto distance = preset("fig-c-distance", true);
    EXPECT_EQ(distance.kind, ModelKind::chain1d);
    EXPECT_EQ(distance.lengths, std::vector<int>{10});
    EXPECT_EQ(distance.ranges.front().resolve(10), 5);
    EXPECT_EQ(distance.realizations, 30);
    ASSERT_EQ(distance.measures.size(), 5u);
    EXPECT_EQ(distance.measures[4].label(), "C_5");

    const auto shalf = preset("fig-shalf", true);
    EXPECT_EQ(shalf.lengths, (std::vector<int>{6, 8, 10, 12}));
    EXPECT_EQ(shalf.ranges.front().kind, RangeSpec::Kind::all);
    EXPECT_EQ(shalf.realizations, 10);

    const auto weak = preset("fig-weakchaos", true);
    const auto plans = to_plans(weak);
    ASSERT_EQ(plans.size(), 2u);
    EXPECT_EQ(plans[0].model.chain.range, 1);
    EXPECT_EQ(plans[1].model.chain.range, 5);
    EXPECT_EQ(weak.realizations, 30);

    const auto gamma2d = preset("fig-2d-gamma", true);
    EXPECT_EQ(gamma2d.realizations, 2000);
    EXPECT_EQ(gamma2d.units, CouplingUnits::jl_over_delta);
    EXPECT_LT(preset("fig-2d-gamma").realizations, 2000);

    const auto pds = preset("fig-1d-pds", true);
    EXPECT_EQ(pds.values, (std::vector<double>{0.35, 15.0}));
    EXPECT_EQ(pds.realizations, 10);
}
