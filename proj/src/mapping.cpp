#include <algorithm>

#include "compactor/compact.hpp"
#include "compactor/error.hpp"

namespace compactor {

MappingOutcome apply_mappings(std::vector<Segment> segments, const std::vector<MappingDecl>& mappings,
                              const std::vector<ArraySpec>& arrays, const PlatformConfig&)
{
    validate_mapping_decls(arrays, mappings);
    MappingOutcome out;
    for (const auto& m : mappings) {
        const Row& source = *find_array(arrays, m.source)->rows.front();
        const Row& target = *find_array(arrays, m.target)->rows.front();

        // Longest matching prefix over all windows, for the diagnostic.
        std::optional<std::size_t> window;
        std::size_t best_prefix = 0;
        for (std::size_t w = 0; w + target.size() <= source.size(); ++w) {
            std::size_t k = 0;
            while (k < target.size() && m.apply(source[w + k]) == target[k]) ++k;
            if (k == target.size()) {
                window = w;
                break;
            }
            best_prefix = std::max(best_prefix, k);
        }
        if (!window)
            throw Error(ErrorKind::Mapping, "mapping " + m.source + " -> " + m.target +
                                                ": mapping does not hold at index " +
                                                std::to_string(best_prefix));

        const RowPath row{m.target, {}};
        for (auto& s : segments)
            std::erase_if(s.consumers, [&](const Consumer& c) { return c.row == row; });
        out.accessors.push_back(MappingAccessor{m, *window});
    }
    std::erase_if(segments, [](const Segment& s) { return s.consumers.empty(); });
    out.segments = std::move(segments);
    return out;
}

}  // namespace compactor
