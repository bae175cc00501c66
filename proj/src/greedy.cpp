#include <algorithm>
#include <thread>

#include "compactor/compact.hpp"
#include "compactor/error.hpp"

namespace compactor {

namespace {

// How the second segment of an ordered pair joins the first.
enum class Join : std::uint8_t {
    Forward,       // a + b
    ReverseRight,  // a + reverse(b)
    ReverseLeft,   // reverse(a) + b
};

struct Candidate {
    std::uint32_t overlap = 0;
    Join join = Join::Forward;
};

template <typename Fn>
void for_each_index(std::size_t count, bool parallel, Fn&& fn)
{
    const std::size_t workers = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1;
    if (workers == 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t begin = 0; begin < count; begin += chunk) {
        const std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
}

class GreedyState {
public:
    GreedyState(std::vector<Segment> segments, const GreedyOptions& options)
        : segs_(std::move(segments)), options_(options), n_(segs_.size()),
          alive_(n_, true), matrix_(n_ * n_), reversed_(n_)
    {
        for (std::size_t i = 0; i < n_; ++i) refresh_reverse(i);
        for_each_index(n_, options_.parallel, [this](std::size_t i) {
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j) at(i, j) = evaluate(i, j);
        });
    }

    Segment run()
    {
        TieBreaker ties(options_.strategy, options_.seed);
        while (true) {
            auto live = live_indices();
            if (live.size() < 2) break;

            // Maximum overlap and how many ordered pairs reach it.
            std::uint32_t best = 0;
            std::size_t count = 0;
            for (std::size_t i : live)
                for (std::size_t j : live) {
                    if (i == j) continue;
                    const auto o = at(i, j).overlap;
                    if (o > best) {
                        best = o;
                        count = 1;
                    } else if (o == best) {
                        ++count;
                    }
                }
            if (best == 0) break;

            std::size_t wanted = ties.pick(count);
            std::size_t pick_i = 0, pick_j = 0;
            for (std::size_t i : live)
                for (std::size_t j : live) {
                    if (i == j || at(i, j).overlap != best) continue;
                    if (wanted-- == 0) {
                        pick_i = i;
                        pick_j = j;
                        goto chosen;
                    }
                }
        chosen:
            merge(pick_i, pick_j);
        }

        std::vector<Segment> rest;
        for (std::size_t i : live_indices()) rest.push_back(std::move(segs_[i]));
        return concatenate(std::move(rest));
    }

private:
    Candidate& at(std::size_t i, std::size_t j) { return matrix_[i * n_ + j]; }

    void refresh_reverse(std::size_t i)
    {
        if (options_.orientation == Orientation::Both)
            reversed_[i].assign(segs_[i].bytes.rbegin(), segs_[i].bytes.rend());
    }

    Candidate evaluate(std::size_t i, std::size_t j) const
    {
        const Bytes& a = segs_[i].bytes;
        const Bytes& b = segs_[j].bytes;
        Candidate best{static_cast<std::uint32_t>(overlap_len(a, b)), Join::Forward};
        if (options_.orientation == Orientation::Both) {
            // A reversed orientation is only taken when strictly better.
            const auto right = static_cast<std::uint32_t>(overlap_len(a, reversed_[j]));
            if (right > best.overlap) best = {right, Join::ReverseRight};
            const auto left = static_cast<std::uint32_t>(overlap_len(reversed_[i], b));
            if (left > best.overlap) best = {left, Join::ReverseLeft};
        }
        return best;
    }

    std::vector<std::size_t> live_indices() const
    {
        std::vector<std::size_t> live;
        for (std::size_t i = 0; i < n_; ++i)
            if (alive_[i]) live.push_back(i);
        return live;
    }

    void merge(std::size_t i, std::size_t j)
    {
        const Candidate c = at(i, j);
        Segment& a = segs_[i];
        Segment& b = segs_[j];
        const std::size_t a_len = a.bytes.size();
        const std::size_t b_len = b.bytes.size();

        Segment merged;
        switch (c.join) {
        case Join::Forward:
            merged.bytes = a.bytes;
            merged.bytes.insert(merged.bytes.end(), b.bytes.begin() + c.overlap, b.bytes.end());
            merged.consumers = a.consumers;
            embed_consumers(merged.consumers, b.consumers, b_len, a_len - c.overlap, false);
            break;
        case Join::ReverseRight:
            merged.bytes = a.bytes;
            merged.bytes.insert(merged.bytes.end(), reversed_[j].begin() + c.overlap, reversed_[j].end());
            merged.consumers = a.consumers;
            embed_consumers(merged.consumers, b.consumers, b_len, a_len - c.overlap, true);
            break;
        case Join::ReverseLeft:
            merged.bytes = reversed_[i];
            merged.bytes.insert(merged.bytes.end(), b.bytes.begin() + c.overlap, b.bytes.end());
            embed_consumers(merged.consumers, a.consumers, a_len, 0, true);
            embed_consumers(merged.consumers, b.consumers, b_len, a_len - c.overlap, false);
            break;
        }

        const std::size_t keep = std::min(i, j);
        const std::size_t drop = std::max(i, j);
        alive_[drop] = false;
        segs_[drop] = Segment{};
        segs_[keep] = std::move(merged);
        refresh_reverse(keep);
        absorb_contained(keep);

        auto live = live_indices();
        for_each_index(live.size(), options_.parallel, [&](std::size_t k) {
            const std::size_t other = live[k];
            if (other == keep) return;
            at(keep, other) = evaluate(keep, other);
            at(other, keep) = evaluate(other, keep);
        });
    }

    // Any remaining segment now inside `host` costs nothing more.
    void absorb_contained(std::size_t host)
    {
        Segment& h = segs_[host];
        for (std::size_t k = 0; k < n_; ++k) {
            if (k == host || !alive_[k]) continue;
            const Segment& s = segs_[k];
            std::optional<std::size_t> pos = find_bytes(h.bytes, s.bytes);
            bool rev = false;
            if (!pos && options_.orientation == Orientation::Both) {
                pos = find_bytes(h.bytes, reversed_[k]);
                rev = pos.has_value();
            }
            if (!pos) continue;
            embed_consumers(h.consumers, s.consumers, s.bytes.size(), *pos, rev);
            alive_[k] = false;
            segs_[k] = Segment{};
        }
    }

    std::vector<Segment> segs_;
    GreedyOptions options_;
    std::size_t n_;
    std::vector<bool> alive_;
    std::vector<Candidate> matrix_;
    std::vector<Bytes> reversed_;
};

}  // namespace

Segment greedy_compact(std::vector<Segment> segments, const GreedyOptions& options)
{
    if (segments.empty()) throw Error(ErrorKind::Internal, "greedy_compact: empty segment list");
    return GreedyState(std::move(segments), options).run();
}

}  // namespace compactor
