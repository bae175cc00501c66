#include <gtest/gtest.h>

#include "compactor/compact.hpp"
#include "support/test_support.hpp"

using namespace compactor;
using compactor::testkit::bytes;
using compactor::testkit::seg;

TEST(OverlapLen, combination_table)
{
    EXPECT_EQ(overlap_len(bytes({0, 16, 155}), bytes({155, 17, 0, 16})), 1u);
    EXPECT_EQ(overlap_len(bytes({155, 17, 0, 16}), bytes({0, 16, 155})), 2u);
    EXPECT_EQ(overlap_len(bytes({155, 233, 0}), bytes({155, 17, 0, 16})), 0u);
}

TEST(OverlapLen, capped_at_shorter_and_full_match)
{
    EXPECT_EQ(overlap_len(bytes({1, 2}), bytes({1, 2})), 2u);
    EXPECT_EQ(overlap_len(bytes({7, 7, 7}), bytes({7})), 1u);
}

TEST(Greedy, two_step_worked_example)
{
    const std::vector<Segment> in{seg({0, 16, 155}, "a"), seg({155, 17, 0, 16}, "b"), seg({155, 233, 0}, "c")};
    const Segment out = greedy_compact(in, {});
    EXPECT_EQ(out.bytes, bytes({155, 17, 0, 16, 155, 233, 0}));
    for (const auto& c : out.consumers) {
        const auto idx = static_cast<std::size_t>(c.row.array[0] - 'a');
        EXPECT_TRUE(testkit::serves(out.bytes, c, in[idx].bytes)) << c.row.array;
    }
}

TEST(Greedy, single_segment_identity)
{
    const Segment out = greedy_compact({seg({7}, "s")}, {});
    EXPECT_EQ(out.bytes, bytes({7}));
    ASSERT_EQ(out.consumers.size(), 1u);
    EXPECT_EQ(out.consumers[0].offset, 0u);
}

TEST(Greedy, no_overlap_concatenates_in_order)
{
    const Segment out = greedy_compact({seg({1, 2}, "x"), seg({3, 4}, "y")}, {});
    EXPECT_EQ(out.bytes, bytes({1, 2, 3, 4}));
    EXPECT_EQ(out.consumers[0].offset, 0u);
    EXPECT_EQ(out.consumers[1].offset, 2u);
}

TEST(Greedy, empty_list_is_error)
{
    EXPECT_THROW(greedy_compact({}, {}), Error);
}

TEST(Reversal, worked_example)
{
    std::vector<Segment> in{seg({0, 16, 32}, "a"), seg({32, 16, 0}, "b"), seg({0, 17}, "c")};
    auto segs = remove_subarrays(in, Orientation::Both);
    GreedyOptions g;
    g.orientation = Orientation::Both;
    const Segment out = greedy_compact(segs, g);
    EXPECT_EQ(out.bytes, bytes({32, 16, 0, 17}));
    for (const auto& c : out.consumers) {
        const auto idx = static_cast<std::size_t>(c.row.array[0] - 'a');
        EXPECT_TRUE(testkit::serves(out.bytes, c, in[idx].bytes)) << c.row.array;
    }
}

TEST(Reversal, palindrome_needs_no_flag)
{
    std::vector<ArraySpec> arrays{ArraySpec{"p", ElementType::UChar, {3}, {Row{1, 2, 1}}, {}},
                                  ArraySpec{"q", ElementType::UChar, {2}, {Row{2, 1}}, {}}};
    CompactionOptions o;
    o.methods = {Method::RemoveSubarrays, Method::Greedy, Method::Reverse};
    const auto r = run_pipeline(arrays, {}, PlatformConfig{}, o);
    EXPECT_EQ(r.compacted, bytes({1, 2, 1}));
    for (const auto& e : r.placements) EXPECT_FALSE(e.reversed) << e.row.to_string();
}

TEST(Reversal, not_chosen_when_it_does_not_help)
{
    GreedyOptions g;
    g.orientation = Orientation::Both;
    const Segment out = greedy_compact({seg({1, 2}, "x"), seg({9, 9}, "y")}, g);
    EXPECT_EQ(out.bytes, bytes({1, 2, 9, 9}));
    for (const auto& c : out.consumers) EXPECT_FALSE(c.reversed);
}

TEST(TieBreaker, first_last_random)
{
    TieBreaker first(TieStrategy::First, 0), last(TieStrategy::Last, 0);
    EXPECT_EQ(first.pick(5), 0u);
    EXPECT_EQ(last.pick(5), 4u);
    TieBreaker r1(TieStrategy::Random, 42), r2(TieStrategy::Random, 42);
    for (int i = 0; i < 50; ++i) {
        const auto a = r1.pick(7);
        EXPECT_LT(a, 7u);
        EXPECT_EQ(a, r2.pick(7));
    }
}

TEST(Greedy, property_superstring_bound_and_parallel_agreement)
{
    std::mt19937_64 rng(5);
    for (int round = 0; round < 150; ++round) {
        std::vector<Segment> in;
        const std::size_t n = 1 + rng() % 90;
        std::size_t total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Segment s;
            const std::size_t len = 1 + rng() % 6;
            for (std::size_t k = 0; k < len; ++k) s.bytes.push_back(static_cast<std::uint8_t>(rng() % 4));
            s.consumers.push_back(Consumer{RowPath{"s" + std::to_string(i), {}}, ElementType::UChar, 0, len, false});
            total += len;
            in.push_back(s);
        }
        for (auto strategy : {TieStrategy::First, TieStrategy::Last, TieStrategy::Random})
            for (auto orientation : {Orientation::Forward, Orientation::Both}) {
                GreedyOptions g{strategy, 99, orientation, false};
                const Segment seq = greedy_compact(in, g);
                g.parallel = true;
                const Segment par = greedy_compact(in, g);
                ASSERT_EQ(seq.bytes, par.bytes);
                ASSERT_LE(seq.bytes.size(), total);
                ASSERT_EQ(seq.consumers.size(), n);
                for (const auto& c : seq.consumers) {
                    const std::size_t idx = std::stoul(c.row.array.substr(1));
                    ASSERT_TRUE(testkit::serves(seq.bytes, c, in[idx].bytes));
                }
            }
    }
}
