#pragma once

// Input data model: declared read-only arrays, scalars, mapping declarations,
// the target platform description and the compaction options.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace compactor {

enum class ElementType { UChar, SChar, UInt, Int };

std::string_view ctype_name(ElementType type);
std::optional<ElementType> parse_ctype(std::string_view name);
bool is_signed(ElementType type);

enum class Endianness { Little, Big };
enum class NegativeRepr { TwosComplement };

struct PlatformConfig {
    int int_bytes = 2;  // 2 or 4
    Endianness endianness = Endianness::Little;
    NegativeRepr negative_repr = NegativeRepr::TwosComplement;
    int pointer_bytes = 4;  // only used for overhead reporting

    bool operator==(const PlatformConfig&) const = default;
};

/// Byte width of one element of `type` on platform `p`.
std::size_t element_width(ElementType type, const PlatformConfig& p);

/// Inclusive value range of `type` on platform `p`.
std::pair<std::int64_t, std::int64_t> value_range(ElementType type, const PlatformConfig& p);

using Row = std::vector<std::int64_t>;

/// A declared read-only array of one to three dimensions.
///
/// Data is kept as the list of its innermost one-dimensional runs ("rows") in
/// row-major order over all but the last dimension. A row may be absent
/// (NULL). For three-dimensional arrays a whole plane may additionally be
/// NULL, in which case all of its rows are absent too.
struct ArraySpec {
    std::string name;
    ElementType type = ElementType::UChar;
    std::vector<std::size_t> dims;
    std::vector<std::optional<Row>> rows;
    std::vector<bool> null_planes;  // size dims[0] for 3-D arrays, empty otherwise

    std::size_t rank() const { return dims.size(); }
    std::size_t row_length() const { return dims.back(); }
    std::size_t row_count() const;
    /// Leading indices of the row with linear index `row`.
    std::vector<std::size_t> row_indices(std::size_t row) const;
    bool plane_is_null(std::size_t plane) const;
    /// Number of stored (non-NULL) elements.
    std::size_t element_count() const;
    bool has_null() const;

    bool operator==(const ArraySpec&) const = default;
};

struct Scalar {
    std::string name;
    ElementType type = ElementType::UChar;
    std::int64_t value = 0;

    bool operator==(const Scalar&) const = default;
};

/// Declares target[i] == (source[window + i] * num) / den + add, with
/// division truncating toward zero.
struct MappingDecl {
    std::string source;
    std::string target;
    std::int64_t num = 1;
    std::int64_t den = 1;
    std::int64_t add = 0;

    std::int64_t apply(std::int64_t x) const { return (x * num) / den + add; }

    bool operator==(const MappingDecl&) const = default;
};

enum class Method { Mapping, Lossy, RemoveSubarrays, Greedy, Reverse };
enum class TieStrategy { First, Last, Random };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
std::string_view strategy_name(TieStrategy s);
std::optional<TieStrategy> parse_strategy(std::string_view name);

class MethodSet {
public:
    MethodSet() = default;
    MethodSet(std::initializer_list<Method> methods)
    {
        for (Method m : methods) insert(m);
    }

    void insert(Method m) { bits_ |= bit(m); }
    void erase(Method m) { bits_ &= ~bit(m); }
    bool contains(Method m) const { return (bits_ & bit(m)) != 0; }
    bool empty() const { return bits_ == 0; }
    /// Enabled methods in canonical order.
    std::vector<Method> list() const;

    bool operator==(const MethodSet&) const = default;

private:
    static unsigned bit(Method m) { return 1u << static_cast<unsigned>(m); }
    unsigned bits_ = 0;
};

struct CompactionOptions {
    MethodSet methods{Method::RemoveSubarrays, Method::Greedy};
    TieStrategy tie_strategy = TieStrategy::First;
    std::optional<std::uint64_t> seed;
    std::optional<double> lossy_threshold;
    std::string var_name = "c";
    bool emit_static = false;
    bool emit_const = true;
    bool parallel = false;  // runtime only, never serialized

    bool operator==(const CompactionOptions&) const = default;
};

/// Throws Error(Validation) unless the method/strategy/threshold combination
/// is usable.
void validate_options(const CompactionOptions& options);

struct SpecDocument {
    PlatformConfig platform;
    CompactionOptions options;
    std::vector<Scalar> scalars;
    std::vector<ArraySpec> arrays;
    std::vector<MappingDecl> mappings;

    bool operator==(const SpecDocument&) const = default;
};

/// Identifies one innermost row of a declared array.
struct RowPath {
    std::string array;
    std::vector<std::size_t> indices;

    std::string to_string() const;
    auto operator<=>(const RowPath&) const = default;
    bool operator==(const RowPath&) const = default;
};

bool is_c_identifier(std::string_view name);

const ArraySpec* find_array(const std::vector<ArraySpec>& arrays, std::string_view name);

/// Parses and validates a JSON specification document.
SpecDocument parse_spec(std::string_view text);

/// Renders a document in the same JSON schema parse_spec accepts.
std::string serialize_spec(const SpecDocument& doc);

/// Checks array invariants (shape, NULL placement, value ranges, names).
void validate_arrays(const std::vector<ArraySpec>& arrays, const std::vector<Scalar>& scalars,
                     const PlatformConfig& p);

void validate_mapping_decls(const std::vector<ArraySpec>& arrays,
                            const std::vector<MappingDecl>& mappings);

}  // namespace compactor
