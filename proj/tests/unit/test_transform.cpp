#include <gtest/gtest.h>

#include "compactor/transform.hpp"
#include "support/test_support.hpp"

using namespace compactor;
using compactor::testkit::bytes;

namespace {

PlatformConfig platform(int int_bytes, Endianness e)
{
    PlatformConfig p;
    p.int_bytes = int_bytes;
    p.endianness = e;
    return p;
}

}  // namespace

TEST(EncodeScalar, minus_one_is_all_ones_in_either_order)
{
    for (auto e : {Endianness::Little, Endianness::Big})
        EXPECT_EQ(encode_scalar(-1, ElementType::Int, platform(2, e)), bytes({255, 255}));
}

TEST(EncodeScalar, byte_listings_are_little_endian)
{
    const auto le = platform(2, Endianness::Little);
    EXPECT_EQ(encode_scalar(-32768, ElementType::Int, le), bytes({0, 128}));
    EXPECT_EQ(encode_scalar(-4096, ElementType::Int, le), bytes({0, 240}));
    EXPECT_EQ(encode_scalar(4, ElementType::UInt, le), bytes({4, 0}));
    EXPECT_EQ(encode_scalar(0, ElementType::UChar, le), bytes({0}));
}

TEST(EncodeScalar, big_endian_and_wide_ints)
{
    EXPECT_EQ(encode_scalar(-32768, ElementType::Int, platform(2, Endianness::Big)), bytes({128, 0}));
    EXPECT_EQ(encode_scalar(0x01020304, ElementType::Int, platform(4, Endianness::Big)), bytes({1, 2, 3, 4}));
    EXPECT_EQ(encode_scalar(-2, ElementType::Int, platform(4, Endianness::Little)), bytes({254, 255, 255, 255}));
    EXPECT_EQ(encode_scalar(-128, ElementType::SChar, platform(4, Endianness::Big)), bytes({128}));
}

TEST(EncodeScalar, out_of_range_is_internal_error)
{
    EXPECT_THROW(encode_scalar(256, ElementType::UChar, platform(2, Endianness::Little)), Error);
    EXPECT_THROW(encode_scalar(32768, ElementType::Int, platform(2, Endianness::Little)), Error);
}

TEST(DecodeScalar, inverts_listed_cases)
{
    const auto le = platform(2, Endianness::Little);
    EXPECT_EQ(decode_scalar(bytes({255, 255}), ElementType::Int, le), -1);
    EXPECT_EQ(decode_scalar(bytes({0, 128}), ElementType::Int, le), -32768);
    EXPECT_EQ(decode_scalar(bytes({127}), ElementType::SChar, le), 127);
    EXPECT_EQ(decode_scalar(bytes({255, 255}), ElementType::UInt, le), 65535);
    EXPECT_THROW(decode_scalar(bytes({1}), ElementType::Int, le), Error);
}

TEST(DecodeScalar, round_trips_every_value_against_longhand_encoder)
{
    std::mt19937_64 rng(7);
    for (int int_bytes : {2, 4})
        for (auto e : {Endianness::Little, Endianness::Big})
            for (auto t : {ElementType::UChar, ElementType::SChar, ElementType::UInt, ElementType::Int}) {
                const auto p = platform(int_bytes, e);
                const auto [lo, hi] = value_range(t, p);
                const auto width = element_width(t, p);
                std::vector<std::int64_t> values{lo, hi, 0};
                for (int k = 0; k < 500; ++k)
                    values.push_back(lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
                for (auto v : values) {
                    const auto enc = encode_scalar(v, t, p);
                    ASSERT_EQ(enc, testkit::reference_encode(v, width, e == Endianness::Little)) << v;
                    ASSERT_EQ(decode_scalar(enc, t, p), v);
                }
            }
}

TEST(Flatten, two_dimensional_int_rows)
{
    auto doc = testkit::load_fixture("nutshell.json");
    const auto segs = flatten(doc.arrays, doc.platform);
    ASSERT_EQ(segs.size(), 3u);
    EXPECT_EQ(segs[0].bytes, bytes({0, 128, 255, 255}));
    EXPECT_EQ(segs[1].bytes, bytes({0, 0, 255, 127}));
    EXPECT_EQ(segs[2].bytes, bytes({0, 255, 127, 16}));
    EXPECT_EQ(segs[0].consumers[0].row, (RowPath{"iA", {0}}));
    EXPECT_EQ(segs[1].consumers[0].row, (RowPath{"iA", {1}}));
    EXPECT_EQ(segs[2].consumers[0].row, (RowPath{"ucA", {}}));
}

TEST(Flatten, null_rows_produce_no_segments)
{
    auto doc = testkit::load_fixture("null_example.json");
    const auto segs = flatten(doc.arrays, doc.platform);
    ASSERT_EQ(segs.size(), 1u);
    EXPECT_EQ(segs[0].bytes, bytes({8, 16}));
    ASSERT_EQ(segs[0].consumers.size(), 1u);
    EXPECT_EQ(segs[0].consumers[0].row, (RowPath{"uchar3DarrWithNull", {0, 1}}));
}

TEST(Flatten, identical_rows_share_a_segment)
{
    std::vector<ArraySpec> arrays{
        ArraySpec{"x", ElementType::UChar, {2}, {Row{2, 4}}, {}},
        ArraySpec{"y", ElementType::UChar, {2, 2}, {Row{1, 1}, Row{2, 4}}, {}},
    };
    const auto segs = flatten(arrays, PlatformConfig{});
    ASSERT_EQ(segs.size(), 2u);
    EXPECT_EQ(segs[0].bytes, bytes({2, 4}));
    ASSERT_EQ(segs[0].consumers.size(), 2u);
    EXPECT_EQ(segs[0].consumers[1].row, (RowPath{"y", {1}}));
}

TEST(Flatten, byte_total_and_lossless_decode_on_random_specs)
{
    testkit::RandomSpecs gen(99);
    for (int i = 0; i < 200; ++i) {
        const auto doc = gen.next();
        const auto segs = flatten(doc.arrays, doc.platform);
        std::size_t total = 0, expected = 0, consumers = 0;
        for (const auto& a : doc.arrays) expected += a.element_count() * element_width(a.type, doc.platform);
        for (const auto& s : segs) {
            for (const auto& c : s.consumers) {
                total += c.length;
                ++consumers;
                const ArraySpec* a = find_array(doc.arrays, c.row.array);
                std::size_t linear = 0;
                for (std::size_t k = 0; k < c.row.indices.size(); ++k) linear = linear * a->dims[k] + c.row.indices[k];
                ASSERT_EQ(decode_row(s.bytes, a->type, doc.platform), *a->rows[linear]);
            }
        }
        EXPECT_EQ(total, expected);
        std::size_t rows = 0;
        for (const auto& a : doc.arrays)
            for (const auto& r : a.rows) rows += r ? 1 : 0;
        EXPECT_EQ(consumers, rows);
    }
}
