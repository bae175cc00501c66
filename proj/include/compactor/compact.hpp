#pragma once

// Step 2: reduce a set of byte segments to a single byte array that contains
// every row, tracking where each row lands.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "compactor/model.hpp"
#include "compactor/transform.hpp"

namespace compactor {

/// Which orientations of a segment the containment and overlap scans may use.
enum class Orientation { Forward, Both };

/// Length of the longest suffix of `a` that equals a prefix of `b`, capped at
/// min(|a|, |b|).
std::size_t overlap_len(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Offset of the first occurrence of `needle` in `haystack`.
std::optional<std::size_t> find_bytes(std::span<const std::uint8_t> haystack,
                                      std::span<const std::uint8_t> needle);

/// Drops every segment that occurs inside another one and re-attaches its
/// consumers to a surviving container. Of two equal segments the earlier
/// survives. With Orientation::Both a reversed occurrence also counts.
std::vector<Segment> remove_subarrays(std::vector<Segment> segments,
                                      Orientation orientation = Orientation::Forward);

/// Seeded generator for the random tie strategy. Draws are
/// `mt19937_64() % n`, so a seed reproduces the same picks everywhere.
class TieBreaker {
public:
    TieBreaker(TieStrategy strategy, std::uint64_t seed) : strategy_(strategy), engine_(seed) {}

    /// Picks an index in [0, count).
    std::size_t pick(std::size_t count);

private:
    TieStrategy strategy_;
    std::mt19937_64 engine_;
};

struct GreedyOptions {
    TieStrategy strategy = TieStrategy::First;
    std::uint64_t seed = 0;
    Orientation orientation = Orientation::Forward;
    bool parallel = false;
};

/// Repeatedly merges the ordered pair with the largest overlap until one
/// segment is left or no overlap remains; leftovers are concatenated in list
/// order. The merged segment takes the lower of the two list positions.
Segment greedy_compact(std::vector<Segment> segments, const GreedyOptions& options);

/// Concatenates segments in order into one segment.
Segment concatenate(std::vector<Segment> segments);

/// One lossy merge step, with the drift it introduced.
struct LossyMergeRecord {
    std::size_t kept_length = 0;     // length of the segment that absorbed the other
    std::size_t merged_length = 0;   // length of the absorbed segment
    std::size_t offset = 0;          // alignment of the absorbed segment
    double distance = 0;             // mean absolute difference at that alignment
    std::int64_t max_drift = 0;      // largest |merged - original| over both inputs
    double mean_drift = 0;           // largest per-input mean |merged - original|
    bool bytewise_bound_holds = true;  // |merged - x| <= ceil(|x - y| / 2) everywhere
};

struct LossyOutcome {
    std::vector<Segment> segments;
    std::vector<LossyMergeRecord> merges;
    /// Post-merge bytes of every row served by a merged segment.
    std::map<RowPath, Bytes> rewritten_rows;
};

/// Merges segments whose mean absolute element distance, minimised over all
/// alignments of the shorter inside the longer, is strictly below
/// `threshold`. Only segments whose consumers all share one 1-byte element
/// type take part; rows of arrays in `protected_arrays` never do.
LossyOutcome lossy_merge(std::vector<Segment> segments, double threshold,
                         const std::vector<std::string>& protected_arrays = {});

/// A mapped array served through its source: target[i] = f(source[window + i]).
struct MappingAccessor {
    MappingDecl decl;
    std::size_t window = 0;  // element offset into the source row

    bool operator==(const MappingAccessor&) const = default;
};

struct MappingOutcome {
    std::vector<Segment> segments;
    std::vector<MappingAccessor> accessors;
};

/// Removes each mapping target's row from the segment set. Throws
/// Error(Mapping) naming the first mismatching index when no window of the
/// source satisfies the declaration.
MappingOutcome apply_mappings(std::vector<Segment> segments, const std::vector<MappingDecl>& mappings,
                              const std::vector<ArraySpec>& arrays, const PlatformConfig& p);

struct PlacementEntry {
    enum class Kind { Stored, Null, Mapped };

    RowPath row;
    Kind kind = Kind::Stored;
    std::size_t offset = 0;
    bool reversed = false;

    bool operator==(const PlacementEntry&) const = default;
};

struct CompactionResult {
    Bytes compacted;
    std::vector<PlacementEntry> placements;  // one per row of every array, declaration order
    std::vector<MappingAccessor> mapping_accessors;
    std::vector<LossyMergeRecord> lossy_merges;
    std::map<RowPath, Bytes> lossy_rows;
    std::vector<std::pair<std::string, double>> phase_ms;  // stage -> wall time

    const PlacementEntry* find(const RowPath& row) const;
    const MappingAccessor* find_accessor(std::string_view target) const;
};

/// Runs the enabled methods in the order mapping, lossy, remove_subarrays,
/// greedy (reverse widens the candidate scans of the last two).
CompactionResult run_pipeline(const std::vector<ArraySpec>& arrays,
                              const std::vector<MappingDecl>& mappings, const PlatformConfig& p,
                              const CompactionOptions& options);

/// Same as run_pipeline, from already flattened segments.
CompactionResult compact_segments(std::vector<Segment> segments,
                                  const std::vector<ArraySpec>& arrays,
                                  const std::vector<MappingDecl>& mappings,
                                  const PlatformConfig& p, const CompactionOptions& options);

struct OracleLimits {
    std::size_t max_segments = 6;
    std::size_t max_length = 8;
};

/// Exact shortest common superstring by exhaustive search. Throws
/// Error(TooLarge) beyond `limits`.
Bytes brute_force_superstring(const std::vector<Bytes>& segments, OracleLimits limits = {});

}  // namespace compactor
