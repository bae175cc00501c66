#include <algorithm>
#include <numeric>

#include "compactor/compact.hpp"

namespace compactor {

namespace {

struct Hit {
    std::size_t offset;
    bool reversed;
};

std::optional<Hit> locate(const Bytes& haystack, const Bytes& needle, const Bytes& needle_rev,
                          Orientation orientation)
{
    if (auto at = find_bytes(haystack, needle)) return Hit{*at, false};
    if (orientation == Orientation::Both)
        if (auto at = find_bytes(haystack, needle_rev)) return Hit{*at, true};
    return std::nullopt;
}

}  // namespace

std::vector<Segment> remove_subarrays(std::vector<Segment> segments, Orientation orientation)
{
    const std::size_t n = segments.size();
    std::vector<Bytes> reversed(n);
    if (orientation == Orientation::Both)
        for (std::size_t i = 0; i < n; ++i)
            reversed[i].assign(segments[i].bytes.rbegin(), segments[i].bytes.rend());

    // Longest first; among equal lengths the earlier segment dominates.
    std::vector<std::size_t> by_length(n);
    std::iota(by_length.begin(), by_length.end(), std::size_t{0});
    std::stable_sort(by_length.begin(), by_length.end(), [&](std::size_t a, std::size_t b) {
        return segments[a].bytes.size() > segments[b].bytes.size();
    });

    std::vector<bool> survives(n, true);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t i = by_length[pos];
        for (std::size_t q = 0; q < pos; ++q) {
            const std::size_t j = by_length[q];
            if (locate(segments[j].bytes, segments[i].bytes, reversed[i], orientation)) {
                survives[i] = false;
                break;
            }
        }
    }

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i)
        if (survives[i]) kept.push_back(i);

    for (std::size_t i = 0; i < n; ++i) {
        if (survives[i]) continue;
        // Containment is transitive, so some survivor holds this segment.
        std::optional<std::pair<std::size_t, Hit>> home;
        for (std::size_t j : kept)
            if (auto at = find_bytes(segments[j].bytes, segments[i].bytes)) {
                home = {j, Hit{*at, false}};
                break;
            }
        if (!home && orientation == Orientation::Both)
            for (std::size_t j : kept)
                if (auto at = find_bytes(segments[j].bytes, reversed[i])) {
                    home = {j, Hit{*at, true}};
                    break;
                }
        auto& target = segments[home->first];
        embed_consumers(target.consumers, segments[i].consumers, segments[i].bytes.size(),
                        home->second.offset, home->second.reversed);
    }

    std::vector<Segment> out;
    out.reserve(kept.size());
    for (std::size_t i : kept) out.push_back(std::move(segments[i]));
    return out;
}

}  // namespace compactor
