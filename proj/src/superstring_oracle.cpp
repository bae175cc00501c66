// Exhaustive shortest-superstring search. Shares no code with the greedy path
// so it can serve as an independent reference.

#include <algorithm>
#include <numeric>

#include "compactor/compact.hpp"
#include "compactor/error.hpp"

namespace compactor {

namespace {

bool occurs_in(const Bytes& needle, const Bytes& hay)
{
    if (needle.size() > hay.size()) return false;
    for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
        bool same = true;
        for (std::size_t k = 0; k < needle.size() && same; ++k) same = hay[i + k] == needle[k];
        if (same) return true;
    }
    return false;
}

std::size_t max_overlap(const Bytes& a, const Bytes& b)
{
    const std::size_t limit = std::min(a.size(), b.size());
    for (std::size_t k = limit; k > 0; --k) {
        bool same = true;
        for (std::size_t t = 0; t < k && same; ++t) same = a[a.size() - k + t] == b[t];
        if (same) return k;
    }
    return 0;
}

}  // namespace

Bytes brute_force_superstring(const std::vector<Bytes>& segments, OracleLimits limits)
{
    if (segments.size() > limits.max_segments)
        throw Error(ErrorKind::TooLarge, "oracle: " + std::to_string(segments.size()) +
                                             " segments exceed the limit of " +
                                             std::to_string(limits.max_segments));
    for (const auto& s : segments)
        if (s.size() > limits.max_length)
            throw Error(ErrorKind::TooLarge, "oracle: segment of " + std::to_string(s.size()) +
                                                 " bytes exceeds the limit of " +
                                                 std::to_string(limits.max_length));

    // Keep only strings not contained in another (first of equal copies wins).
    std::vector<Bytes> core;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        bool contained = false;
        for (std::size_t j = 0; j < segments.size() && !contained; ++j) {
            if (i == j) continue;
            if (segments[j] == segments[i]) contained = j < i;
            else contained = occurs_in(segments[i], segments[j]);
        }
        if (!contained) core.push_back(segments[i]);
    }
    if (core.empty()) return {};

    std::vector<std::size_t> order(core.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Bytes best;
    bool have = false;
    do {
        Bytes s = core[order[0]];
        for (std::size_t k = 1; k < order.size(); ++k) {
            const Bytes& next = core[order[k]];
            const std::size_t o = max_overlap(s, next);
            s.insert(s.end(), next.begin() + static_cast<std::ptrdiff_t>(o), next.end());
        }
        if (!have || s.size() < best.size()) {
            best = std::move(s);
            have = true;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

}  // namespace compactor
