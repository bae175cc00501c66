#include "compactor/transform.hpp"

#include <map>

#include "compactor/error.hpp"

namespace compactor {

Bytes encode_scalar(std::int64_t value, ElementType type, const PlatformConfig& p)
{
    const auto [lo, hi] = value_range(type, p);
    if (value < lo || value > hi)
        throw Error(ErrorKind::Internal, "encode_scalar: value " + std::to_string(value) +
                                             " out of range for " + std::string(ctype_name(type)));
    const std::size_t width = element_width(type, p);
    // Two's complement is the low `width` bytes of the 64-bit representation.
    auto bits = static_cast<std::uint64_t>(value);
    Bytes out(width);
    for (std::size_t k = 0; k < width; ++k) {
        const auto byte = static_cast<std::uint8_t>(bits >> (8 * k));
        const std::size_t pos = p.endianness == Endianness::Little ? k : width - 1 - k;
        out[pos] = byte;
    }
    return out;
}

std::int64_t decode_scalar(std::span<const std::uint8_t> bytes, ElementType type,
                           const PlatformConfig& p)
{
    const std::size_t width = element_width(type, p);
    if (bytes.size() != width)
        throw Error(ErrorKind::Internal, "decode_scalar: expected " + std::to_string(width) +
                                             " bytes, got " + std::to_string(bytes.size()));
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < width; ++k) {
        const std::size_t pos = p.endianness == Endianness::Little ? k : width - 1 - k;
        bits |= std::uint64_t{bytes[pos]} << (8 * k);
    }
    const std::uint64_t sign = std::uint64_t{1} << (8 * width - 1);
    if (is_signed(type) && (bits & sign))
        return static_cast<std::int64_t>(bits) - static_cast<std::int64_t>(sign << 1);
    return static_cast<std::int64_t>(bits);
}

Bytes encode_row(const Row& row, ElementType type, const PlatformConfig& p)
{
    Bytes out;
    out.reserve(row.size() * element_width(type, p));
    for (auto v : row) {
        const auto b = encode_scalar(v, type, p);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

Row decode_row(std::span<const std::uint8_t> bytes, ElementType type, const PlatformConfig& p)
{
    const std::size_t width = element_width(type, p);
    if (bytes.size() % width != 0)
        throw Error(ErrorKind::Internal, "decode_row: byte count is not a multiple of the element width");
    Row row;
    for (std::size_t i = 0; i < bytes.size(); i += width)
        row.push_back(decode_scalar(bytes.subspan(i, width), type, p));
    return row;
}

void embed_consumers(std::vector<Consumer>& out, const std::vector<Consumer>& consumers,
                     std::size_t source_length, std::size_t at, bool reversed)
{
    for (Consumer c : consumers) {
        if (reversed) {
            c.offset = at + source_length - c.offset - c.length;
            c.reversed = !c.reversed;
        } else {
            c.offset += at;
        }
        out.push_back(std::move(c));
    }
}

std::vector<Segment> flatten(const std::vector<ArraySpec>& arrays, const PlatformConfig& p)
{
    std::vector<Segment> segments;
    std::map<Bytes, std::size_t> seen;
    for (const auto& a : arrays) {
        for (std::size_t r = 0; r < a.rows.size(); ++r) {
            if (!a.rows[r]) continue;
            Bytes bytes = encode_row(*a.rows[r], a.type, p);
            Consumer c{RowPath{a.name, a.row_indices(r)}, a.type, 0, bytes.size(), false};
            auto [it, fresh] = seen.try_emplace(bytes, segments.size());
            if (fresh) segments.push_back(Segment{std::move(bytes), {}});
            segments[it->second].consumers.push_back(std::move(c));
        }
    }
    return segments;
}

}  // namespace compactor
