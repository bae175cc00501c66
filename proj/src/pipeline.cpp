#include <algorithm>
#include <chrono>
#include <iterator>

#include "compactor/compact.hpp"
#include "compactor/error.hpp"

namespace compactor {

namespace {

class PhaseClock {
public:
    explicit PhaseClock(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

    void lap(const std::string& phase)
    {
        const auto now = std::chrono::steady_clock::now();
        sink_.emplace_back(phase, std::chrono::duration<double, std::milli>(now - start_).count());
        start_ = now;
    }

private:
    std::vector<std::pair<std::string, double>>& sink_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

const PlacementEntry* CompactionResult::find(const RowPath& row) const
{
    for (const auto& p : placements)
        if (p.row == row) return &p;
    return nullptr;
}

const MappingAccessor* CompactionResult::find_accessor(std::string_view target) const
{
    for (const auto& a : mapping_accessors)
        if (a.decl.target == target) return &a;
    return nullptr;
}

CompactionResult compact_segments(std::vector<Segment> segments,
                                  const std::vector<ArraySpec>& arrays,
                                  const std::vector<MappingDecl>& mappings,
                                  const PlatformConfig& p, const CompactionOptions& options)
{
    validate_options(options);
    CompactionResult result;
    PhaseClock clock(result.phase_ms);
    const MethodSet& methods = options.methods;

    if (methods.contains(Method::Mapping) && !mappings.empty()) {
        auto mapped = apply_mappings(std::move(segments), mappings, arrays, p);
        segments = std::move(mapped.segments);
        result.mapping_accessors = std::move(mapped.accessors);
        clock.lap("mapping");
    }

    if (methods.contains(Method::Lossy)) {
        // Mapping sources must keep their exact values.
        std::vector<std::string> sources;
        for (const auto& a : result.mapping_accessors) sources.push_back(a.decl.source);
        auto lossy = lossy_merge(std::move(segments), *options.lossy_threshold, sources);
        segments = std::move(lossy.segments);
        result.lossy_merges = std::move(lossy.merges);
        result.lossy_rows = std::move(lossy.rewritten_rows);
        clock.lap("lossy");
    }

    const Orientation orientation =
        methods.contains(Method::Reverse) ? Orientation::Both : Orientation::Forward;

    if (methods.contains(Method::RemoveSubarrays) && !segments.empty()) {
        segments = remove_subarrays(std::move(segments), orientation);
        clock.lap("remove_subarrays");
    }

    Segment final;
    if (!segments.empty()) {
        if (methods.contains(Method::Greedy)) {
            GreedyOptions g{options.tie_strategy, options.seed.value_or(0), orientation, options.parallel};
            final = greedy_compact(std::move(segments), g);
            clock.lap("greedy");
        } else {
            final = concatenate(std::move(segments));
        }
    }

    // A palindromic row reads the same either way; keep it pointer-addressable.
    for (auto& c : final.consumers) {
        if (!c.reversed) continue;
        auto first = final.bytes.begin() + static_cast<std::ptrdiff_t>(c.offset);
        auto last = first + static_cast<std::ptrdiff_t>(c.length);
        if (std::equal(first, last, std::make_reverse_iterator(last))) c.reversed = false;
    }

    result.compacted = std::move(final.bytes);
    std::map<RowPath, const Consumer*> homes;
    for (const auto& c : final.consumers) homes.emplace(c.row, &c);

    for (const auto& a : arrays) {
        const bool mapped = result.find_accessor(a.name) != nullptr;
        for (std::size_t r = 0; r < a.rows.size(); ++r) {
            PlacementEntry e{RowPath{a.name, a.row_indices(r)}, PlacementEntry::Kind::Null, 0, false};
            if (a.rows[r] && mapped) {
                e.kind = PlacementEntry::Kind::Mapped;
            } else if (a.rows[r]) {
                auto it = homes.find(e.row);
                if (it == homes.end())
                    throw Error(ErrorKind::Internal, "row " + e.row.to_string() + " lost during compaction");
                e.kind = PlacementEntry::Kind::Stored;
                e.offset = it->second->offset;
                e.reversed = it->second->reversed;
            }
            result.placements.push_back(std::move(e));
        }
    }
    return result;
}

CompactionResult run_pipeline(const std::vector<ArraySpec>& arrays,
                              const std::vector<MappingDecl>& mappings, const PlatformConfig& p,
                              const CompactionOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    auto segments = flatten(arrays, p);
    const double transform_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    auto result = compact_segments(std::move(segments), arrays, mappings, p, options);
    result.phase_ms.insert(result.phase_ms.begin(), {"transform", transform_ms});
    return result;
}

}  // namespace compactor
