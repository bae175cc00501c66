#include "compactor/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "compactor/codegen.hpp"

namespace compactor {

std::size_t input_size(const std::vector<ArraySpec>& arrays, const PlatformConfig& p)
{
    std::size_t total = 0;
    for (const auto& a : arrays) total += a.element_count() * element_width(a.type, p);
    return total;
}

double ratio_percent(std::size_t output_bytes, std::size_t input_bytes)
{
    if (input_bytes == 0) return 0;
    const double scaled = static_cast<double>(output_bytes) * 10000.0 / static_cast<double>(input_bytes);
    return std::round(scaled) / 100.0;
}

CompactionReport make_report(const std::vector<ArraySpec>& arrays, const CompactionResult& result,
                             const PlatformConfig& p, const CompactionOptions& options)
{
    CompactionReport r;
    r.input_bytes = input_size(arrays, p);
    r.output_bytes = result.compacted.size();
    r.ratio_percent = ratio_percent(r.output_bytes, r.input_bytes);
    r.pointer_overhead_bytes = pointer_slot_count(result, arrays) * static_cast<std::size_t>(p.pointer_bytes);
    r.net_bytes = r.output_bytes + r.pointer_overhead_bytes;
    r.phase_times_ms = result.phase_ms;
    for (Method m : options.methods.list()) r.method_list.emplace_back(method_name(m));
    r.tie_strategy = strategy_name(options.tie_strategy);
    r.seed = options.seed;
    r.lossy_merges = result.lossy_merges.size();
    return r;
}

namespace {

double two_decimals(double v)
{
    return std::round(v * 100.0) / 100.0;
}

}  // namespace

std::string report_json(const CompactionReport& r, bool include_timings)
{
    nlohmann::ordered_json j;
    j["input_bytes"] = r.input_bytes;
    j["output_bytes"] = r.output_bytes;
    j["ratio_percent"] = r.ratio_percent;
    j["pointer_overhead_bytes"] = r.pointer_overhead_bytes;
    j["net_bytes"] = r.net_bytes;
    if (include_timings) {
        nlohmann::ordered_json times = nlohmann::ordered_json::object();
        for (const auto& [phase, ms] : r.phase_times_ms) times[phase] = two_decimals(ms);
        j["phase_times_ms"] = std::move(times);
    }
    j["method_list"] = r.method_list;
    j["tie_strategy"] = r.tie_strategy;
    j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
    j["lossy_merges"] = r.lossy_merges;
    nlohmann::ordered_json cmp = nlohmann::ordered_json::object();
    for (const auto& [name, pct] : r.comparisons) cmp[name] = pct;
    j["comparisons"] = std::move(cmp);
    return j.dump(2) + "\n";
}

std::string report_text(const CompactionReport& r)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "input size        " << r.input_bytes << " bytes\n";
    os << "compacted size    " << r.output_bytes << " bytes\n";
    os << "compressed to     " << r.ratio_percent << " %\n";
    os << "pointer overhead  " << r.pointer_overhead_bytes << " bytes\n";
    os << "net size          " << r.net_bytes << " bytes\n";
    for (const auto& [name, pct] : r.comparisons) os << name << " compressed to " << pct << " %\n";
    double total = 0;
    for (const auto& [phase, ms] : r.phase_times_ms) {
        os << "time " << phase << ": " << ms << " ms\n";
        total += ms;
    }
    os << "time total: " << total << " ms\n";
    return os.str();
}

namespace {

std::size_t compacted_length(std::vector<Segment> segments, const GreedyOptions& greedy)
{
    if (segments.empty()) return 0;
    segments = remove_subarrays(std::move(segments), greedy.orientation);
    return greedy_compact(std::move(segments), greedy).bytes.size();
}

}  // namespace

SplitProbe probe_split(const std::vector<Segment>& segments, std::size_t parts, std::size_t min_piece,
                       const GreedyOptions& greedy)
{
    if (parts < 2) parts = 2;
    if (min_piece < 1) min_piece = 1;

    std::vector<Segment> bare, split;
    for (const auto& s : segments) {
        bare.push_back(Segment{s.bytes, {}});
        const std::size_t len = s.bytes.size();
        if (len <= 2 * min_piece) {
            split.push_back(Segment{s.bytes, {}});
            continue;
        }
        const std::size_t k = std::min(parts, len / min_piece);
        std::size_t at = 0;
        for (std::size_t piece = 0; piece < k; ++piece) {
            const std::size_t size = len / k + (piece < len % k ? 1 : 0);
            split.push_back(Segment{Bytes(s.bytes.begin() + static_cast<std::ptrdiff_t>(at),
                                          s.bytes.begin() + static_cast<std::ptrdiff_t>(at + size)),
                                    {}});
            at += size;
        }
    }

    SplitProbe probe;
    probe.pieces = split.size();
    probe.unsplit_bytes = compacted_length(std::move(bare), greedy);
    probe.split_bytes = compacted_length(std::move(split), greedy);
    return probe;
}

}  // namespace compactor
