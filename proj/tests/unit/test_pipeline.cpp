#include <gtest/gtest.h>

#include "compactor/codegen.hpp"
#include "compactor/compact.hpp"
#include "support/test_support.hpp"

using namespace compactor;
using compactor::testkit::bytes;

namespace {

CompactionOptions with(MethodSet methods, TieStrategy s = TieStrategy::First, std::uint64_t seed = 0)
{
    CompactionOptions o;
    o.methods = std::move(methods);
    o.tie_strategy = s;
    o.seed = seed;
    return o;
}

}  // namespace

TEST(Pipeline, nine_byte_example)
{
    const auto doc = testkit::load_fixture("nutshell.json");
    const auto r = run_pipeline(doc.arrays, doc.mappings, doc.platform, doc.options);
    EXPECT_EQ(r.compacted, bytes({0, 128, 255, 255, 0, 0, 255, 127, 16}));
    EXPECT_EQ(r.find(RowPath{"iA", {0}})->offset, 0u);
    EXPECT_EQ(r.find(RowPath{"iA", {1}})->offset, 4u);
    EXPECT_EQ(r.find(RowPath{"ucA", {}})->offset, 5u);
    EXPECT_NO_THROW(verify_placements(r, doc.arrays, doc.platform));
}

TEST(Pipeline, example_a_sizes)
{
    const auto doc = testkit::load_fixture("example_a.json");
    const auto sub = run_pipeline(doc.arrays, {}, doc.platform, with({Method::RemoveSubarrays}));
    EXPECT_EQ(sub.compacted.size(), 48u);
    verify_placements(sub, doc.arrays, doc.platform);

    bool exact = false;
    for (auto s : {TieStrategy::First, TieStrategy::Last})
        for (std::uint64_t seed : {0u, 1u}) {
            const auto r = run_pipeline(doc.arrays, {}, doc.platform,
                                        with({Method::RemoveSubarrays, Method::Greedy}, s, seed));
            EXPECT_LE(r.compacted.size(), 41u);
            exact = exact || r.compacted.size() == 41u;
            verify_placements(r, doc.arrays, doc.platform);
        }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = run_pipeline(doc.arrays, {}, doc.platform,
                                    with({Method::RemoveSubarrays, Method::Greedy}, TieStrategy::Random, seed));
        EXPECT_LE(r.compacted.size(), 41u) << seed;
    }
    EXPECT_TRUE(exact);
}

TEST(Pipeline, greedy_off_concatenates_survivors)
{
    const auto doc = testkit::load_fixture("nutshell.json");
    const auto r = run_pipeline(doc.arrays, {}, doc.platform, with({Method::RemoveSubarrays}));
    EXPECT_EQ(r.compacted.size(), 12u);
}

TEST(Pipeline, null_rows_get_null_placements)
{
    const auto doc = testkit::load_fixture("null_example.json");
    const auto r = run_pipeline(doc.arrays, {}, doc.platform, doc.options);
    EXPECT_EQ(r.compacted, bytes({8, 16}));
    ASSERT_EQ(r.placements.size(), 4u);
    EXPECT_EQ(r.placements[0].kind, PlacementEntry::Kind::Null);
    EXPECT_EQ(r.placements[1].kind, PlacementEntry::Kind::Stored);
    EXPECT_EQ(r.placements[2].kind, PlacementEntry::Kind::Null);
    EXPECT_EQ(r.placements[3].kind, PlacementEntry::Kind::Null);
    verify_placements(r, doc.arrays, doc.platform);
}

TEST(Pipeline, scalars_only_document)
{
    const auto r = run_pipeline({}, {}, PlatformConfig{}, CompactionOptions{});
    EXPECT_TRUE(r.compacted.empty());
    EXPECT_TRUE(r.placements.empty());
}

TEST(Pipeline, lossy_requires_threshold)
{
    CompactionOptions o = with({Method::Lossy});
    EXPECT_THROW(run_pipeline({}, {}, PlatformConfig{}, o), Error);
}

TEST(Pipeline, lossy_rows_verify_against_post_merge_model)
{
    std::vector<ArraySpec> arrays{ArraySpec{"a", ElementType::UChar, {3}, {Row{0, 16, 32}}, {}},
                                  ArraySpec{"b", ElementType::UChar, {2}, {Row{0, 14}}, {}}};
    CompactionOptions o = with({Method::Lossy, Method::RemoveSubarrays, Method::Greedy});
    o.lossy_threshold = 10.0;
    const auto r = run_pipeline(arrays, {}, PlatformConfig{}, o);
    EXPECT_EQ(r.compacted, bytes({0, 15, 32}));
    EXPECT_NO_THROW(verify_placements(r, arrays, PlatformConfig{}));
    const auto merged = post_merge_model(r, arrays, PlatformConfig{});
    EXPECT_EQ(*merged[1].rows[0], (Row{0, 15}));
}

TEST(Pipeline, property_lossless_every_combination)
{
    testkit::RandomSpecs gen(2024);
    const auto combos = testkit::lossless_method_combinations();
    for (int i = 0; i < 120; ++i) {
        const auto doc = gen.next();
        std::size_t distinct = 0;
        for (const auto& s : flatten(doc.arrays, doc.platform)) distinct += s.bytes.size();
        for (const auto& m : combos) {
            for (auto s : {TieStrategy::First, TieStrategy::Last, TieStrategy::Random}) {
                const auto r = run_pipeline(doc.arrays, doc.mappings, doc.platform, with(m, s, 17));
                ASSERT_NO_THROW(verify_placements(r, doc.arrays, doc.platform)) << serialize_spec(doc);
                ASSERT_LE(r.compacted.size(), distinct);
            }
        }
    }
}

TEST(Pipeline, fault_injection_detects_off_by_one)
{
    const auto doc = testkit::load_fixture("nutshell.json");
    auto r = run_pipeline(doc.arrays, {}, doc.platform, doc.options);
    for (auto& e : r.placements)
        if (e.row == RowPath{"ucA", {}}) e.offset += 1;
    try {
        verify_placements(r, doc.arrays, doc.platform);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Verification);
        EXPECT_NE(std::string(e.what()).find("element 0"), std::string::npos) << e.what();
    }
}
