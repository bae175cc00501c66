#include <algorithm>
#include <functional>

#include "compactor/compact.hpp"

namespace compactor {

std::size_t overlap_len(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b)
{
    for (std::size_t k = std::min(a.size(), b.size()); k > 0; --k)
        if (std::equal(a.end() - static_cast<std::ptrdiff_t>(k), a.end(), b.begin())) return k;
    return 0;
}

std::optional<std::size_t> find_bytes(std::span<const std::uint8_t> haystack,
                                      std::span<const std::uint8_t> needle)
{
    if (needle.size() > haystack.size()) return std::nullopt;
    auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end());
    if (it == haystack.end() && !needle.empty()) return std::nullopt;
    return static_cast<std::size_t>(it - haystack.begin());
}

Segment concatenate(std::vector<Segment> segments)
{
    Segment out;
    for (auto& s : segments) {
        embed_consumers(out.consumers, s.consumers, s.bytes.size(), out.bytes.size(), false);
        out.bytes.insert(out.bytes.end(), s.bytes.begin(), s.bytes.end());
    }
    return out;
}

std::size_t TieBreaker::pick(std::size_t count)
{
    switch (strategy_) {
    case TieStrategy::First: return 0;
    case TieStrategy::Last: return count - 1;
    case TieStrategy::Random: return static_cast<std::size_t>(engine_() % count);
    }
    return 0;
}

}  // namespace compactor
