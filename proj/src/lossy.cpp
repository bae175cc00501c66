#include <algorithm>
#include <cstdlib>

#include "compactor/compact.hpp"

namespace compactor {

namespace {

// Element type shared by all consumers of a segment, if it is a 1-byte type.
std::optional<ElementType> byte_type(const Segment& s, const std::vector<std::string>& protected_arrays)
{
    if (s.consumers.empty()) return std::nullopt;
    const ElementType t = s.consumers.front().type;
    if (t != ElementType::UChar && t != ElementType::SChar) return std::nullopt;
    for (const auto& c : s.consumers) {
        if (c.type != t) return std::nullopt;
        if (std::find(protected_arrays.begin(), protected_arrays.end(), c.row.array) !=
            protected_arrays.end())
            return std::nullopt;
    }
    return t;
}

std::int64_t value_of(std::uint8_t b, ElementType t)
{
    return t == ElementType::SChar ? static_cast<std::int64_t>(static_cast<std::int8_t>(b)) : b;
}

std::uint8_t byte_of(std::int64_t v)
{
    return static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) & 0xffu);
}

// Arithmetic mean of two integers, halves rounded away from zero.
std::int64_t mean_round(std::int64_t x, std::int64_t y)
{
    const std::int64_t s = x + y;
    return s >= 0 ? (s + 1) / 2 : -((-s + 1) / 2);
}

struct Alignment {
    std::size_t offset = 0;
    std::int64_t total = 0;  // sum of absolute differences
};

Alignment best_alignment(const Bytes& longer, const Bytes& shorter, ElementType t)
{
    Alignment best{0, -1};
    for (std::size_t o = 0; o + shorter.size() <= longer.size(); ++o) {
        std::int64_t total = 0;
        for (std::size_t k = 0; k < shorter.size(); ++k)
            total += std::llabs(value_of(longer[o + k], t) - value_of(shorter[k], t));
        if (best.total < 0 || total < best.total) best = {o, total};
    }
    return best;
}

}  // namespace

LossyOutcome lossy_merge(std::vector<Segment> segments, double threshold,
                         const std::vector<std::string>& protected_arrays)
{
    LossyOutcome out;
    std::vector<bool> modified(segments.size(), false);

    bool merged_any = true;
    while (merged_any) {
        merged_any = false;
        for (std::size_t i = 0; i < segments.size() && !merged_any; ++i) {
            const auto ti = byte_type(segments[i], protected_arrays);
            if (!ti) continue;
            for (std::size_t j = i + 1; j < segments.size(); ++j) {
                const auto tj = byte_type(segments[j], protected_arrays);
                if (!tj || *tj != *ti) continue;

                const bool i_keeps = segments[i].bytes.size() >= segments[j].bytes.size();
                const std::size_t keep = i_keeps ? i : j;
                const std::size_t gone = i_keeps ? j : i;
                Segment& host = segments[keep];
                const Segment& guest = segments[gone];

                const Alignment a = best_alignment(host.bytes, guest.bytes, *ti);
                const auto n = static_cast<double>(guest.bytes.size());
                const double distance = static_cast<double>(a.total) / n;
                if (!(distance < threshold)) continue;

                LossyMergeRecord rec;
                rec.kept_length = host.bytes.size();
                rec.merged_length = guest.bytes.size();
                rec.offset = a.offset;
                rec.distance = distance;
                std::int64_t drift_host = 0, drift_guest = 0;
                for (std::size_t k = 0; k < guest.bytes.size(); ++k) {
                    const std::int64_t x = value_of(host.bytes[a.offset + k], *ti);
                    const std::int64_t y = value_of(guest.bytes[k], *ti);
                    const std::int64_t m = mean_round(x, y);
                    const std::int64_t dx = std::llabs(m - x), dy = std::llabs(m - y);
                    const std::int64_t bound = (std::llabs(x - y) + 1) / 2;
                    if (dx > bound || dy > bound) rec.bytewise_bound_holds = false;
                    rec.max_drift = std::max({rec.max_drift, dx, dy});
                    drift_host += dx;
                    drift_guest += dy;
                    host.bytes[a.offset + k] = byte_of(m);
                }
                rec.mean_drift = static_cast<double>(std::max(drift_host, drift_guest)) / n;
                out.merges.push_back(rec);

                embed_consumers(host.consumers, guest.consumers, guest.bytes.size(), a.offset, false);
                modified[keep] = true;
                segments.erase(segments.begin() + static_cast<std::ptrdiff_t>(gone));
                modified.erase(modified.begin() + static_cast<std::ptrdiff_t>(gone));
                merged_any = true;
                break;
            }
        }
    }

    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (!modified[s]) continue;
        for (const auto& c : segments[s].consumers) {
            Bytes row(segments[s].bytes.begin() + static_cast<std::ptrdiff_t>(c.offset),
                      segments[s].bytes.begin() + static_cast<std::ptrdiff_t>(c.offset + c.length));
            if (c.reversed) std::reverse(row.begin(), row.end());
            out.rewritten_rows[c.row] = std::move(row);
        }
    }
    out.segments = std::move(segments);
    return out;
}

}  // namespace compactor
