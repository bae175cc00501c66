#include <algorithm>
#include <sstream>

#include "compactor/codegen.hpp"
#include "compactor/error.hpp"

namespace compactor {

namespace {

[[noreturn]] void mismatch(const RowPath& row, std::size_t element, const std::string& what)
{
    std::ostringstream os;
    os << "array '" << row.array << "' row " << row.to_string() << " element " << element << ": " << what;
    throw Error(ErrorKind::Verification, os.str());
}

Row stored_row(const CompactionResult& result, const PlacementEntry& e, const ArraySpec& a,
               const PlatformConfig& p)
{
    const std::size_t len = a.row_length() * element_width(a.type, p);
    if (e.offset + len > result.compacted.size())
        mismatch(e.row, 0, "placement lies outside the compacted array");
    Bytes bytes(result.compacted.begin() + static_cast<std::ptrdiff_t>(e.offset),
                result.compacted.begin() + static_cast<std::ptrdiff_t>(e.offset + len));
    if (e.reversed) std::reverse(bytes.begin(), bytes.end());
    return decode_row(bytes, a.type, p);
}

const PlacementEntry& entry_for(const CompactionResult& result, const RowPath& row)
{
    const PlacementEntry* e = result.find(row);
    if (!e) mismatch(row, 0, "no placement recorded");
    return *e;
}

}  // namespace

std::vector<ArraySpec> post_merge_model(const CompactionResult& result,
                                        const std::vector<ArraySpec>& arrays,
                                        const PlatformConfig& p)
{
    std::vector<ArraySpec> out = arrays;
    for (auto& a : out)
        for (std::size_t r = 0; r < a.rows.size(); ++r) {
            auto it = result.lossy_rows.find(RowPath{a.name, a.row_indices(r)});
            if (it != result.lossy_rows.end()) a.rows[r] = decode_row(it->second, a.type, p);
        }
    return out;
}

void verify_placements(const CompactionResult& result, const std::vector<ArraySpec>& arrays,
                       const PlatformConfig& p)
{
    const auto model = post_merge_model(result, arrays, p);
    for (const auto& a : model) {
        for (std::size_t r = 0; r < a.rows.size(); ++r) {
            const RowPath path{a.name, a.row_indices(r)};
            const auto& e = entry_for(result, path);
            if (!a.rows[r]) {
                if (e.kind != PlacementEntry::Kind::Null) mismatch(path, 0, "NULL row has a placement");
                continue;
            }
            const Row& want = *a.rows[r];

            if (e.kind == PlacementEntry::Kind::Null) mismatch(path, 0, "row marked NULL");
            if (e.kind == PlacementEntry::Kind::Mapped) {
                const MappingAccessor* m = result.find_accessor(a.name);
                if (!m) mismatch(path, 0, "mapped row without accessor");
                const ArraySpec* src = find_array(model, m->decl.source);
                const auto& se = entry_for(result, RowPath{src->name, {}});
                if (se.kind != PlacementEntry::Kind::Stored) mismatch(path, 0, "mapping source is not stored");
                const Row source = stored_row(result, se, *src, p);
                for (std::size_t i = 0; i < want.size(); ++i) {
                    if (m->window + i >= source.size()) mismatch(path, i, "mapping window exceeds source");
                    const auto got = m->decl.apply(source[m->window + i]);
                    if (got != want[i])
                        mismatch(path, i, "expected " + std::to_string(want[i]) + ", mapping yields " +
                                              std::to_string(got));
                }
                continue;
            }

            const Row got = stored_row(result, e, a, p);
            for (std::size_t i = 0; i < want.size(); ++i)
                if (got[i] != want[i])
                    mismatch(path, i, "expected " + std::to_string(want[i]) + ", decoded " +
                                          std::to_string(got[i]));
        }
    }
}

}  // namespace compactor
