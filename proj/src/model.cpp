#include "compactor/model.hpp"

#include <set>
#include <sstream>

#include "compactor/error.hpp"

namespace compactor {

std::string_view ctype_name(ElementType type)
{
    switch (type) {
    case ElementType::UChar: return "unsigned char";
    case ElementType::SChar: return "signed char";
    case ElementType::UInt: return "unsigned int";
    case ElementType::Int: return "int";
    }
    return "?";
}

std::optional<ElementType> parse_ctype(std::string_view name)
{
    if (name == "unsigned char") return ElementType::UChar;
    if (name == "signed char") return ElementType::SChar;
    if (name == "unsigned int") return ElementType::UInt;
    if (name == "int") return ElementType::Int;
    return std::nullopt;
}

bool is_signed(ElementType type)
{
    return type == ElementType::SChar || type == ElementType::Int;
}

std::size_t element_width(ElementType type, const PlatformConfig& p)
{
    if (type == ElementType::UChar || type == ElementType::SChar) return 1;
    return static_cast<std::size_t>(p.int_bytes);
}

std::pair<std::int64_t, std::int64_t> value_range(ElementType type, const PlatformConfig& p)
{
    const auto bits = 8 * element_width(type, p);
    if (is_signed(type)) {
        const std::int64_t half = std::int64_t{1} << (bits - 1);
        return {-half, half - 1};
    }
    return {0, (std::int64_t{1} << bits) - 1};
}

std::size_t ArraySpec::row_count() const
{
    std::size_t n = 1;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) n *= dims[i];
    return n;
}

std::vector<std::size_t> ArraySpec::row_indices(std::size_t row) const
{
    std::vector<std::size_t> idx(dims.size() - 1);
    for (std::size_t k = idx.size(); k-- > 0;) {
        idx[k] = row % dims[k];
        row /= dims[k];
    }
    return idx;
}

bool ArraySpec::plane_is_null(std::size_t plane) const
{
    return plane < null_planes.size() && null_planes[plane];
}

std::size_t ArraySpec::element_count() const
{
    std::size_t n = 0;
    for (const auto& r : rows)
        if (r) n += r->size();
    return n;
}

bool ArraySpec::has_null() const
{
    for (const auto& r : rows)
        if (!r) return true;
    return false;
}

std::string_view method_name(Method m)
{
    switch (m) {
    case Method::Mapping: return "mapping";
    case Method::Lossy: return "lossy";
    case Method::RemoveSubarrays: return "remove_subarrays";
    case Method::Greedy: return "greedy";
    case Method::Reverse: return "reverse";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name)
{
    for (Method m : {Method::Mapping, Method::Lossy, Method::RemoveSubarrays, Method::Greedy,
                     Method::Reverse})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

std::string_view strategy_name(TieStrategy s)
{
    switch (s) {
    case TieStrategy::First: return "first";
    case TieStrategy::Last: return "last";
    case TieStrategy::Random: return "random";
    }
    return "?";
}

std::optional<TieStrategy> parse_strategy(std::string_view name)
{
    for (TieStrategy s : {TieStrategy::First, TieStrategy::Last, TieStrategy::Random})
        if (strategy_name(s) == name) return s;
    return std::nullopt;
}

std::vector<Method> MethodSet::list() const
{
    std::vector<Method> out;
    for (Method m : {Method::Mapping, Method::Lossy, Method::RemoveSubarrays, Method::Greedy,
                     Method::Reverse})
        if (contains(m)) out.push_back(m);
    return out;
}

void validate_options(const CompactionOptions& options)
{
    if (options.methods.empty())
        throw Error(ErrorKind::Validation, "options: at least one compaction method is required");
    if (options.methods.contains(Method::Lossy)) {
        if (!options.lossy_threshold)
            throw Error(ErrorKind::Validation, "options: lossy method requires lossy_threshold");
        if (*options.lossy_threshold < 0)
            throw Error(ErrorKind::Validation, "options: lossy_threshold must be nonnegative");
    }
    if (options.tie_strategy == TieStrategy::Random && !options.seed)
        throw Error(ErrorKind::Validation, "options: random tie strategy requires a seed");
    if (!is_c_identifier(options.var_name))
        throw Error(ErrorKind::Validation,
                    "options: var_name '" + options.var_name + "' is not a C identifier");
}

std::string RowPath::to_string() const
{
    std::ostringstream os;
    os << array;
    for (auto i : indices) os << '[' << i << ']';
    return os.str();
}

bool is_c_identifier(std::string_view name)
{
    if (name.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front())) return false;
    for (char c : name)
        if (!alpha(c) && !digit(c)) return false;
    static const std::set<std::string_view> keywords = {
        "auto", "break", "case", "char", "const", "continue", "default", "do", "double",
        "else", "enum", "extern", "float", "for", "goto", "if", "int", "long", "register",
        "return", "short", "signed", "sizeof", "static", "struct", "switch", "typedef",
        "union", "unsigned", "void", "volatile", "while", "NULL"};
    return !keywords.contains(name);
}

const ArraySpec* find_array(const std::vector<ArraySpec>& arrays, std::string_view name)
{
    for (const auto& a : arrays)
        if (a.name == name) return &a;
    return nullptr;
}

namespace {

[[noreturn]] void invalid(const std::string& name, const std::string& what)
{
    throw Error(ErrorKind::Validation, "array '" + name + "': " + what);
}

void check_range(const std::string& name, std::int64_t v, ElementType type, const PlatformConfig& p)
{
    const auto [lo, hi] = value_range(type, p);
    if (v < lo || v > hi) {
        std::ostringstream os;
        os << "value out of range: " << v << " does not fit " << ctype_name(type) << " ["
           << lo << ", " << hi << "]";
        invalid(name, os.str());
    }
}

}  // namespace

void validate_arrays(const std::vector<ArraySpec>& arrays, const std::vector<Scalar>& scalars,
                     const PlatformConfig& p)
{
    if (p.int_bytes != 2 && p.int_bytes != 4)
        throw Error(ErrorKind::Validation, "platform: int_bytes must be 2 or 4");
    if (p.pointer_bytes < 1)
        throw Error(ErrorKind::Validation, "platform: pointer_bytes must be positive");

    std::set<std::string> names;
    auto claim = [&](const std::string& name) {
        if (!is_c_identifier(name)) invalid(name, "name is not a valid C identifier");
        if (!names.insert(name).second) invalid(name, "duplicate array name");
    };

    for (const auto& s : scalars) {
        claim(s.name);
        check_range(s.name, s.value, s.type, p);
    }

    for (const auto& a : arrays) {
        claim(a.name);
        if (a.dims.empty() || a.dims.size() > 3) invalid(a.name, "dimension count must be 1 to 3");
        for (auto d : a.dims)
            if (d == 0) invalid(a.name, "dimension extents must be positive");
        if (a.rows.size() != a.row_count()) invalid(a.name, "dimension/data mismatch");
        if (a.rank() == 1 && !a.rows.front()) invalid(a.name, "array data must not be NULL");
        if (a.rank() == 3) {
            if (a.null_planes.size() != a.dims[0]) invalid(a.name, "dimension/data mismatch");
        } else if (!a.null_planes.empty()) {
            invalid(a.name, "NULL planes are only meaningful for 3-dimensional arrays");
        }
        for (std::size_t r = 0; r < a.rows.size(); ++r) {
            const auto& row = a.rows[r];
            if (a.rank() == 3 && a.plane_is_null(r / a.dims[1]) && row)
                invalid(a.name, "row inside a NULL plane carries data");
            if (!row) continue;
            if (row->size() != a.row_length()) invalid(a.name, "dimension/data mismatch");
            for (auto v : *row) check_range(a.name, v, a.type, p);
        }
    }
}

void validate_mapping_decls(const std::vector<ArraySpec>& arrays,
                            const std::vector<MappingDecl>& mappings)
{
    std::set<std::string> targets;
    for (const auto& m : mappings) {
        const std::string label = "mapping " + m.source + " -> " + m.target + ": ";
        const ArraySpec* src = find_array(arrays, m.source);
        const ArraySpec* dst = find_array(arrays, m.target);
        if (!src) throw Error(ErrorKind::Validation, label + "dangling name '" + m.source + "'");
        if (!dst) throw Error(ErrorKind::Validation, label + "dangling name '" + m.target + "'");
        if (m.source == m.target)
            throw Error(ErrorKind::Validation, label + "source and target must differ");
        if (src->rank() != 1 || dst->rank() != 1)
            throw Error(ErrorKind::Validation, label + "dimension mismatch (both must be 1-D)");
        if (src->type != dst->type)
            throw Error(ErrorKind::Validation, label + "type mismatch");
        if (m.den == 0) throw Error(ErrorKind::Validation, label + "den must be nonzero");
        if (!targets.insert(m.target).second)
            throw Error(ErrorKind::Validation, label + "target is mapped more than once");
    }
    for (const auto& m : mappings)
        if (targets.contains(m.source))
            throw Error(ErrorKind::Validation, "mapping " + m.source + " -> " + m.target +
                                                   ": source is itself a mapping target");
}

}  // namespace compactor
