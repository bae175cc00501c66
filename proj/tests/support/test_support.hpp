#pragma once

// Shared helpers for the unit, acceptance and harness suites.

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "compactor/compact.hpp"
#include "compactor/error.hpp"
#include "compactor/model.hpp"
#include "compactor/transform.hpp"

namespace compactor::testkit {

inline std::string fixture_path(const std::string& name)
{
    return std::string(COMPACTOR_FIXTURES) + "/" + name;
}

inline std::string read_fixture(const std::string& name)
{
    std::ifstream in(fixture_path(name), std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline SpecDocument load_fixture(const std::string& name)
{
    return parse_spec(read_fixture(name));
}

/// A segment holding one 1-D unsigned char row named `name`.
inline Segment seg(std::initializer_list<int> values, const std::string& name)
{
    Segment s;
    for (int v : values) s.bytes.push_back(static_cast<std::uint8_t>(v));
    s.consumers.push_back(Consumer{RowPath{name, {}}, ElementType::UChar, 0, s.bytes.size(), false});
    return s;
}

inline Bytes bytes(std::initializer_list<int> values)
{
    Bytes b;
    for (int v : values) b.push_back(static_cast<std::uint8_t>(v));
    return b;
}

/// Checks a consumer's bytes against the string it came from, independently
/// of the library's bookkeeping.
inline bool serves(const Bytes& compacted, const Consumer& c, const Bytes& row)
{
    if (c.offset + c.length > compacted.size() || c.length != row.size()) return false;
    Bytes got(compacted.begin() + static_cast<std::ptrdiff_t>(c.offset),
              compacted.begin() + static_cast<std::ptrdiff_t>(c.offset + c.length));
    if (c.reversed) std::reverse(got.begin(), got.end());
    return got == row;
}

/// Little/big endian two's complement encoding written out longhand, kept
/// apart from the library encoder.
inline Bytes reference_encode(std::int64_t v, std::size_t width, bool little)
{
    std::uint64_t u = static_cast<std::uint64_t>(v);
    if (width < 8) u &= (std::uint64_t{1} << (8 * width)) - 1;
    Bytes out;
    for (std::size_t k = 0; k < width; ++k) out.push_back(static_cast<std::uint8_t>((u >> (8 * k)) & 0xff));
    if (!little) std::reverse(out.begin(), out.end());
    return out;
}

struct RandomSpecLimits {
    std::size_t max_arrays = 20;
    std::size_t max_extent = 4;
    bool allow_mappings = true;
};

/// Seeded generator of valid specification documents: mixed element types,
/// both byte orders and int widths, NULLs wherever they are legal, values
/// drawn from a small pool so rows overlap often.
class RandomSpecs {
public:
    explicit RandomSpecs(std::uint64_t seed) : rng_(seed) {}

    SpecDocument next(const RandomSpecLimits& limits = {})
    {
        SpecDocument doc;
        doc.platform.int_bytes = coin() ? 2 : 4;
        doc.platform.endianness = coin() ? Endianness::Little : Endianness::Big;
        doc.platform.pointer_bytes = coin() ? 2 : 4;

        const std::size_t count = uniform(1, limits.max_arrays);
        // The trailing letter keeps generated plane names like "a1x0" clear of
        // other array names.
        for (std::size_t i = 0; i < count; ++i)
            doc.arrays.push_back(array("a" + std::to_string(i) + "x", doc.platform, limits));
        if (coin()) doc.scalars.push_back(Scalar{"len", ElementType::UChar, static_cast<std::int64_t>(uniform(0, 255))});

        if (limits.allow_mappings && coin()) add_mapping(doc);
        return doc;
    }

    std::size_t uniform(std::size_t lo, std::size_t hi)
    {
        return lo + static_cast<std::size_t>(rng_() % (hi - lo + 1));
    }
    bool coin() { return (rng_() & 1u) != 0; }

private:
    std::int64_t value(ElementType t, const PlatformConfig& p)
    {
        const auto [lo, hi] = value_range(t, p);
        // Mostly a small shared pool, sometimes anything in range.
        static constexpr std::int64_t pool[] = {0, 1, 2, 4, 16, 127, 128, 255, -1, -128, 256, 4096, -4096};
        if (uniform(0, 4) != 0) {
            const auto v = pool[uniform(0, std::size(pool) - 1)];
            if (v >= lo && v <= hi) return v;
        }
        const auto span = static_cast<std::uint64_t>(hi - lo);
        return lo + static_cast<std::int64_t>(rng_() % (span + 1));
    }

    ArraySpec array(const std::string& name, const PlatformConfig& p, const RandomSpecLimits& limits)
    {
        static constexpr ElementType types[] = {ElementType::UChar, ElementType::SChar, ElementType::UInt,
                                                ElementType::Int};
        ArraySpec a;
        a.name = name;
        a.type = types[uniform(0, 3)];
        const std::size_t rank = uniform(1, 3);
        for (std::size_t k = 0; k < rank; ++k) a.dims.push_back(uniform(1, limits.max_extent));
        if (rank == 3)
            for (std::size_t pl = 0; pl < a.dims[0]; ++pl) a.null_planes.push_back(uniform(0, 5) == 0);
        for (std::size_t r = 0; r < a.row_count(); ++r) {
            const bool plane_null = rank == 3 && a.null_planes[r / a.dims[1]];
            const bool row_null = rank >= 2 && uniform(0, 6) == 0;
            if (plane_null || row_null) {
                a.rows.emplace_back(std::nullopt);
                continue;
            }
            Row row;
            for (std::size_t e = 0; e < a.row_length(); ++e) row.push_back(value(a.type, p));
            a.rows.emplace_back(std::move(row));
        }
        return a;
    }

    void add_mapping(SpecDocument& doc)
    {
        std::vector<const ArraySpec*> sources;
        for (const auto& a : doc.arrays)
            if (a.rank() == 1) sources.push_back(&a);
        if (sources.empty()) return;
        const ArraySpec src = *sources[uniform(0, sources.size() - 1)];
        const Row& s = *src.rows.front();
        MappingDecl m{src.name, "mapped", static_cast<std::int64_t>(uniform(1, 3)),
                      static_cast<std::int64_t>(uniform(1, 3)), static_cast<std::int64_t>(uniform(0, 2))};
        const std::size_t len = uniform(1, s.size());
        const std::size_t window = uniform(0, s.size() - len);
        ArraySpec target;
        target.name = m.target;
        target.type = src.type;
        target.dims = {len};
        Row row;
        const auto [lo, hi] = value_range(src.type, doc.platform);
        for (std::size_t i = 0; i < len; ++i) {
            const auto v = m.apply(s[window + i]);
            if (v < lo || v > hi) return;
            row.push_back(v);
        }
        target.rows.emplace_back(std::move(row));
        doc.arrays.push_back(std::move(target));
        doc.mappings.push_back(m);
    }

    std::mt19937_64 rng_;
};

/// Every non-empty method subset of {mapping, remove_subarrays, greedy, reverse}.
inline std::vector<MethodSet> lossless_method_combinations()
{
    const Method pool[] = {Method::Mapping, Method::RemoveSubarrays, Method::Greedy, Method::Reverse};
    std::vector<MethodSet> out;
    for (unsigned mask = 1; mask < 16; ++mask) {
        MethodSet set;
        for (unsigned k = 0; k < 4; ++k)
            if (mask & (1u << k)) set.insert(pool[k]);
        out.push_back(set);
    }
    return out;
}

}  // namespace compactor::testkit
