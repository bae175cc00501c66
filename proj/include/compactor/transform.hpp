#pragma once

// Step 1: typed, possibly multi-dimensional arrays to one-dimensional byte
// segments in the target platform's representation.

#include <cstdint>
#include <span>
#include <vector>

#include "compactor/model.hpp"

namespace compactor {

using Bytes = std::vector<std::uint8_t>;

/// Encodes one value as width(type) bytes, two's complement, platform byte order.
Bytes encode_scalar(std::int64_t value, ElementType type, const PlatformConfig& p);

std::int64_t decode_scalar(std::span<const std::uint8_t> bytes, ElementType type,
                           const PlatformConfig& p);

Bytes encode_row(const Row& row, ElementType type, const PlatformConfig& p);
Row decode_row(std::span<const std::uint8_t> bytes, ElementType type, const PlatformConfig& p);

/// One row served by a segment. The row's bytes are
/// segment[offset, offset + length), byte-reversed when `reversed` is set.
struct Consumer {
    RowPath row;
    ElementType type = ElementType::UChar;
    std::size_t offset = 0;
    std::size_t length = 0;
    bool reversed = false;

    bool operator==(const Consumer&) const = default;
};

struct Segment {
    Bytes bytes;
    std::vector<Consumer> consumers;
};

/// Re-homes `consumers` of a string of length `source_length` that now sits
/// at `at` inside a larger string, optionally byte-reversed.
void embed_consumers(std::vector<Consumer>& out, const std::vector<Consumer>& consumers,
                     std::size_t source_length, std::size_t at, bool reversed);

/// Decomposes every non-NULL row into a segment. Byte-identical rows share
/// one segment. Order: declaration order, rows row-major.
std::vector<Segment> flatten(const std::vector<ArraySpec>& arrays, const PlatformConfig& p);

}  // namespace compactor
