#include <gtest/gtest.h>

#include <json.hpp>

#include "compactor/report.hpp"
#include "support/test_support.hpp"

using namespace compactor;
using compactor::testkit::seg;

TEST(Report, ratios)
{
    EXPECT_DOUBLE_EQ(ratio_percent(9, 12), 75.00);
    EXPECT_DOUBLE_EQ(ratio_percent(48, 84), 57.14);
    EXPECT_DOUBLE_EQ(ratio_percent(41, 84), 48.81);
    EXPECT_DOUBLE_EQ(ratio_percent(0, 0), 0.0);
}

TEST(Report, nine_byte_example)
{
    const auto doc = testkit::load_fixture("nutshell.json");
    const auto r = run_pipeline(doc.arrays, {}, doc.platform, doc.options);
    const auto rep = make_report(doc.arrays, r, doc.platform, doc.options);
    EXPECT_EQ(rep.input_bytes, 12u);
    EXPECT_EQ(rep.output_bytes, 9u);
    EXPECT_DOUBLE_EQ(rep.ratio_percent, 75.00);
    EXPECT_EQ(rep.pointer_overhead_bytes, 12u);
    EXPECT_EQ(rep.net_bytes, 21u);
}

TEST(Report, example_a_scalars_excluded)
{
    const auto doc = testkit::load_fixture("example_a.json");
    EXPECT_EQ(input_size(doc.arrays, doc.platform), 84u);
}

TEST(Report, json_keys_and_reproducibility)
{
    const auto doc = testkit::load_fixture("nutshell.json");
    const auto r = run_pipeline(doc.arrays, {}, doc.platform, doc.options);
    auto rep = make_report(doc.arrays, r, doc.platform, doc.options);
    rep.comparisons = {{"zlib", 72.62}};
    const auto j = nlohmann::json::parse(report_json(rep));
    for (const char* key : {"input_bytes", "output_bytes", "ratio_percent", "pointer_overhead_bytes", "net_bytes",
                            "phase_times_ms", "method_list", "tie_strategy", "seed", "lossy_merges", "comparisons"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_DOUBLE_EQ(j["comparisons"]["zlib"].get<double>(), 72.62);
    EXPECT_EQ(j["method_list"], nlohmann::json({"remove_subarrays", "greedy"}));

    const auto again = run_pipeline(doc.arrays, {}, doc.platform, doc.options);
    auto rep2 = make_report(doc.arrays, again, doc.platform, doc.options);
    rep2.comparisons = rep.comparisons;
    EXPECT_EQ(report_json(rep, false), report_json(rep2, false));
    EXPECT_FALSE(nlohmann::json::parse(report_json(rep, false)).contains("phase_times_ms"));
}

TEST(ProbeSplit, pieces_deduplicate)
{
    const auto probe = probe_split({seg({1, 2, 3, 4}, "a"), seg({3, 4, 1, 2}, "b")}, 2);
    EXPECT_EQ(probe.split_bytes, 4u);
    EXPECT_EQ(probe.pieces, 4u);
    EXPECT_EQ(probe.unsplit_bytes, 6u);
}

TEST(ProbeSplit, minimal_single_segment_unchanged)
{
    const auto probe = probe_split({seg({1, 2}, "a")}, 2);
    EXPECT_EQ(probe.split_bytes, 2u);
    EXPECT_EQ(probe.unsplit_bytes, 2u);
}

TEST(ProbeSplit, min_piece_limits_cuts)
{
    const auto probe = probe_split({seg({1, 2, 3, 4, 5}, "a")}, 5, 2);
    EXPECT_EQ(probe.pieces, 2u);
    EXPECT_EQ(probe.split_bytes, 5u);
}
