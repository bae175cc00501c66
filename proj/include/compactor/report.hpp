#pragma once

// Compaction statistics in the "compressed to percent" sense: output size as
// a percentage of input size.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compactor/compact.hpp"
#include "compactor/model.hpp"

namespace compactor {

struct CompactionReport {
    std::size_t input_bytes = 0;   // scalars excluded
    std::size_t output_bytes = 0;  // compacted byte array only
    double ratio_percent = 0;      // output / input * 100, rounded to 2 decimals
    std::size_t pointer_overhead_bytes = 0;
    std::size_t net_bytes = 0;     // output + pointer overhead
    std::vector<std::pair<std::string, double>> phase_times_ms;
    std::vector<std::string> method_list;
    std::string tie_strategy;
    std::optional<std::uint64_t> seed;
    std::size_t lossy_merges = 0;
    /// User-supplied figures for other compressors, e.g. {"zlib", 72.62}.
    std::vector<std::pair<std::string, double>> comparisons;
};

/// Bytes occupied by all stored elements in the target representation.
std::size_t input_size(const std::vector<ArraySpec>& arrays, const PlatformConfig& p);

/// output / input * 100 rounded half away from zero to two decimals; 0 for
/// empty input.
double ratio_percent(std::size_t output_bytes, std::size_t input_bytes);

CompactionReport make_report(const std::vector<ArraySpec>& arrays, const CompactionResult& result,
                             const PlatformConfig& p, const CompactionOptions& options);

/// JSON rendering with snake_case keys. Without timings the text is
/// reproducible byte for byte.
std::string report_json(const CompactionReport& report, bool include_timings = true);

/// Human-readable summary table.
std::string report_text(const CompactionReport& report);

struct SplitProbe {
    std::size_t unsplit_bytes = 0;
    std::size_t split_bytes = 0;
    std::size_t pieces = 0;
};

/// Estimates the compacted size if long segments were cut into `parts`
/// near-equal pieces. A segment is cut only when longer than 2 * min_piece
/// bytes, and never into pieces shorter than min_piece. Both sizes use
/// remove_subarrays followed by greedy.
SplitProbe probe_split(const std::vector<Segment>& segments, std::size_t parts,
                       std::size_t min_piece = 1, const GreedyOptions& greedy = {});

}  // namespace compactor
