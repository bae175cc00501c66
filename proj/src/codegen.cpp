#include "compactor/codegen.hpp"

#include <set>
#include <sstream>

#include "compactor/error.hpp"

namespace compactor {

EmitOptions emit_options(const CompactionOptions& options)
{
    return EmitOptions{options.var_name, options.emit_static, options.emit_const, true};
}

AccessForm access_form(const ArraySpec& array, const CompactionResult& result)
{
    if (result.find_accessor(array.name)) return AccessForm::Accessor;
    for (const auto& e : result.placements)
        if (e.row.array == array.name && e.kind == PlacementEntry::Kind::Stored && e.reversed)
            return AccessForm::Accessor;
    return AccessForm::Pointer;
}

std::size_t pointer_slot_count(const CompactionResult& result, const std::vector<ArraySpec>& arrays)
{
    std::size_t slots = 0;
    for (const auto& a : arrays) {
        if (result.find_accessor(a.name)) continue;
        if (access_form(a, result) == AccessForm::Accessor) {
            slots += a.row_count();
            continue;
        }
        switch (a.rank()) {
        case 1: slots += 1; break;
        case 2: slots += a.dims[0]; break;
        case 3:
            slots += a.dims[0];
            for (std::size_t p = 0; p < a.dims[0]; ++p)
                if (!a.plane_is_null(p)) slots += a.dims[1];
            break;
        }
    }
    return slots;
}

namespace {

std::string literal(std::int64_t v, ElementType type, std::size_t width)
{
    if (type == ElementType::Int && width == 4 && v == -2147483648LL) return "(-2147483647-1)";
    std::string s = std::to_string(v);
    if (type == ElementType::UInt && v > 2147483647LL) s += "u";
    return s;
}

std::string row_literal(const Row& row, ElementType type, std::size_t width)
{
    std::string s = "{";
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += ",";
        s += literal(row[i], type, width);
    }
    return s + "}";
}

std::string join(const std::vector<std::string>& items)
{
    std::string s = "{";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) s += ",";
        s += items[i];
    }
    return s + "}";
}

class Names {
public:
    Names(const std::vector<ArraySpec>& arrays, const std::vector<Scalar>& scalars)
    {
        for (const auto& a : arrays) declared_.insert(a.name);
        for (const auto& s : scalars) declared_.insert(s.name);
    }

    // Registers a generated identifier; it may not shadow a declared name or
    // another generated one.
    void claim(const std::string& name, const std::string& owner)
    {
        if (declared_.contains(name) || !generated_.insert(name).second)
            throw Error(ErrorKind::Validation, "name collision: generated identifier '" + name +
                                                   "' for '" + owner + "' is already in use");
    }

private:
    std::set<std::string> declared_;
    std::set<std::string> generated_;
};

std::string header_comment(bool compacted)
{
    if (!compacted)
        return "/* Uncompacted reference data generated by compactor. */\n";
    return "/* Compacted read-only data generated by compactor.\n"
           " *\n"
           " * The arrays below are pointers (or pointer tables) into one shared\n"
           " * byte array. Code reading them with subscripts works unchanged, but:\n"
           " *  - rows of a multi-dimensional array are not contiguous: never walk\n"
           " *    one with a single pointer or assume array-of-array layout\n"
           " *  - do not memcpy across rows of a multi-dimensional array\n"
           " *  - sizeof and offsetof give pointer sizes, not array sizes\n"
           " *  - the address operator & yields a pointer to a pointer, and\n"
           " *    functions taking array parameters cannot take these directly\n"
           " *  - arrays documented with a _GET macro must be read through it\n"
           " */\n";
}

std::string null_guard()
{
    return "#ifndef NULL\n#define NULL 0\n#endif\n";
}

bool uses_null(const std::vector<ArraySpec>& arrays, const CompactionResult* result)
{
    for (const auto& a : arrays) {
        if (!a.has_null()) continue;
        if (result && access_form(a, *result) == AccessForm::Accessor) continue;
        return true;
    }
    return false;
}

std::string index_params(std::size_t rank)
{
    std::string s;
    for (std::size_t k = 0; k < rank; ++k) {
        if (k) s += ", ";
        s += "i" + std::to_string(k);
    }
    return s;
}

class CompactedWriter {
public:
    CompactedWriter(const CompactionResult& result, const std::vector<ArraySpec>& arrays,
                    const std::vector<Scalar>& scalars, const PlatformConfig& p, const EmitOptions& o)
        : result_(result), arrays_(arrays), scalars_(scalars), p_(p), o_(o), names_(arrays, scalars)
    {
        cq_ = o.emit_const ? "const " : "";
        storage_ = o.emit_static ? "static " : "";
    }

    std::string render()
    {
        names_.claim(o_.var_name, "compacted data");
        check_bounds();

        std::ostringstream out;
        out << header_comment(true);
        if (o_.null_macro && uses_null(arrays_, &result_)) out << "\n" << null_guard();

        if (!result_.compacted.empty()) out << "\n" << data_array();
        if (!scalars_.empty()) {
            out << "\n";
            for (const auto& s : scalars_)
                out << storage_ << cq_ << ctype_name(s.type) << " " << s.name << " = "
                    << literal(s.value, s.type, element_width(s.type, p_)) << ";\n";
        }

        bool helpers = false;
        for (const auto& a : arrays_) {
            out << "\n";
            if (const MappingAccessor* m = result_.find_accessor(a.name)) {
                out << mapped_array(a, *m);
            } else if (access_form(a, result_) == AccessForm::Accessor) {
                if (!helpers) {
                    out << element_helpers() << "\n";
                    helpers = true;
                }
                out << accessor_array(a);
            } else {
                out << pointer_array(a);
            }
        }
        return out.str();
    }

private:
    const PlacementEntry& placement(const ArraySpec& a, std::size_t row) const
    {
        const PlacementEntry* e = result_.find(RowPath{a.name, a.row_indices(row)});
        if (!e) throw Error(ErrorKind::Internal, "no placement for " + a.name);
        return *e;
    }

    void check_bounds() const
    {
        for (const auto& a : arrays_) {
            const std::size_t len = a.row_length() * element_width(a.type, p_);
            for (std::size_t r = 0; r < a.rows.size(); ++r) {
                if (!a.rows[r]) continue;
                const auto& e = placement(a, r);
                if (e.kind == PlacementEntry::Kind::Stored && e.offset + len > result_.compacted.size())
                    throw Error(ErrorKind::Internal, "placement of " + e.row.to_string() +
                                                         " lies outside the compacted array");
            }
        }
    }

    std::string data_array() const
    {
        std::ostringstream out;
        const auto& bytes = result_.compacted;
        out << storage_ << cq_ << "unsigned char " << o_.var_name << "[" << bytes.size() << "] =";
        constexpr std::size_t per_line = 16;
        if (bytes.size() <= per_line) {
            out << " {";
            for (std::size_t i = 0; i < bytes.size(); ++i) out << (i ? "," : "") << unsigned{bytes[i]};
            out << "};\n";
            return out.str();
        }
        out << "\n{";
        for (std::size_t i = 0; i < bytes.size(); ++i) {
            if (i) out << (i % per_line == 0 ? ",\n " : ",");
            out << unsigned{bytes[i]};
        }
        out << "};\n";
        return out.str();
    }

    std::string row_pointer(const ArraySpec& a, std::size_t row) const
    {
        if (!a.rows[row]) return "NULL";
        const auto& e = placement(a, row);
        std::ostringstream s;
        s << "(" << cq_ << ctype_name(a.type) << "*)&" << o_.var_name << "[" << e.offset << "]";
        return s.str();
    }

    std::string pointer_array(const ArraySpec& a)
    {
        std::ostringstream out;
        const std::string elem = std::string(cq_) + std::string(ctype_name(a.type));
        switch (a.rank()) {
        case 1:
            out << storage_ << elem << " *" << a.name << " = " << row_pointer(a, 0) << ";\n";
            break;
        case 2: {
            std::vector<std::string> slots;
            for (std::size_t r = 0; r < a.dims[0]; ++r) slots.push_back(row_pointer(a, r));
            out << storage_ << elem << " *" << a.name << "[" << a.dims[0] << "] = " << join(slots) << ";\n";
            break;
        }
        case 3: {
            std::vector<std::string> planes;
            for (std::size_t p = 0; p < a.dims[0]; ++p) {
                if (a.plane_is_null(p)) {
                    planes.emplace_back("NULL");
                    continue;
                }
                const std::string plane = a.name + std::to_string(p);
                names_.claim(plane, a.name);
                std::vector<std::string> slots;
                for (std::size_t r = 0; r < a.dims[1]; ++r) slots.push_back(row_pointer(a, p * a.dims[1] + r));
                out << storage_ << elem << " *" << plane << "[" << a.dims[1] << "] = " << join(slots) << ";\n";
                planes.push_back(plane);
            }
            out << storage_ << elem << " **" << a.name << "[" << a.dims[0] << "] = " << join(planes) << ";\n";
            break;
        }
        }
        return out.str();
    }

    std::string raw_fn() const { return o_.var_name + "_raw"; }
    std::string sext_fn() const { return o_.var_name + "_sext"; }

    // Byte-order aware element readers for rows that plain pointers cannot
    // address (byte-reversed rows).
    std::string element_helpers()
    {
        names_.claim(raw_fn(), "element reader");
        names_.claim(sext_fn(), "element reader");
        const bool little = p_.endianness == Endianness::Little;
        std::ostringstream out;
        out << "/* Element k of a row is the k-th width-byte group counted from pos\n"
               "   in direction dir (+1 forward, -1 for byte-reversed rows). */\n"
            << "static unsigned long " << raw_fn()
            << "(unsigned long pos, int dir, unsigned long k, int width)\n"
            << "{\n"
            << "    unsigned long value = 0ul;\n"
            << "    int b;\n"
            << "    for (b = 0; b < width; ++b) {\n"
            << "        unsigned long step = k * (unsigned long)width + (unsigned long)b;\n"
            << "        unsigned long byte = (unsigned long)" << o_.var_name
            << "[dir > 0 ? pos + step : pos - step];\n"
            << "        value |= byte << (8 * " << (little ? "b" : "(width - 1 - b)") << ");\n"
            << "    }\n"
            << "    return value;\n"
            << "}\n"
            << "\n"
            << "static long " << sext_fn() << "(unsigned long raw, int width)\n"
            << "{\n"
            << "    unsigned long sign = 1ul << (8 * width - 1);\n"
            << "    if (!(raw & sign)) return (long)raw;\n"
            << "    return -(long)(~raw & (sign | (sign - 1ul))) - 1L;\n"
            << "}\n";
        return out.str();
    }

    std::string accessor_array(const ArraySpec& a)
    {
        const std::string pos = a.name + "_pos";
        const std::string dir = a.name + "_dir";
        const std::string get = a.name + "_GET";
        names_.claim(pos, a.name);
        names_.claim(dir, a.name);
        names_.claim(get, a.name);

        const std::size_t width = element_width(a.type, p_);
        const std::size_t len = a.row_length() * width;
        std::vector<std::string> positions, directions;
        for (std::size_t r = 0; r < a.rows.size(); ++r) {
            if (!a.rows[r]) {
                positions.emplace_back("0ul");
                directions.emplace_back("0");
                continue;
            }
            const auto& e = placement(a, r);
            positions.push_back(std::to_string(e.reversed ? e.offset + len - 1 : e.offset) + "ul");
            directions.emplace_back(e.reversed ? "-1" : "1");
        }

        std::ostringstream out;
        out << "/* " << a.name << " has rows stored byte-reversed; subscript access is not\n"
            << "   preserved, read elements with " << get << "(" << index_params(a.rank()) << ").\n"
            << "   A direction of 0 marks a NULL row. */\n";
        const std::size_t lead = a.rank() - 1;
        auto table = [&](const std::string& type, const std::string& name, const std::vector<std::string>& v) {
            out << storage_ << "const " << type << " " << name;
            if (lead == 0) {
                out << " = " << v.front() << ";\n";
                return;
            }
            if (lead == 1) {
                out << "[" << a.dims[0] << "] = " << join(v) << ";\n";
                return;
            }
            std::vector<std::string> planes;
            for (std::size_t p = 0; p < a.dims[0]; ++p)
                planes.push_back(join({v.begin() + static_cast<std::ptrdiff_t>(p * a.dims[1]),
                                       v.begin() + static_cast<std::ptrdiff_t>((p + 1) * a.dims[1])}));
            out << "[" << a.dims[0] << "][" << a.dims[1] << "] = " << join(planes) << ";\n";
        };
        table("unsigned long", pos, positions);
        table("signed char", dir, directions);

        std::string lead_index;
        for (std::size_t k = 0; k < lead; ++k) lead_index += "[i" + std::to_string(k) + "]";
        const std::string raw = raw_fn() + "(" + pos + lead_index + ", " + dir + lead_index +
                                ", (unsigned long)(i" + std::to_string(lead) + "), " +
                                std::to_string(width) + ")";
        const std::string value = is_signed(a.type) ? sext_fn() + "(" + raw + ", " + std::to_string(width) + ")" : raw;
        out << "#define " << get << "(" << index_params(a.rank()) << ") ((" << ctype_name(a.type) << ")"
            << value << ")\n";
        return out.str();
    }

    std::string mapped_array(const ArraySpec& a, const MappingAccessor& m)
    {
        const std::string get = a.name + "_GET";
        names_.claim(get, a.name);
        const ArraySpec* src = find_array(arrays_, m.decl.source);
        const std::string index = "(i) + " + std::to_string(m.window);
        const std::string source = access_form(*src, result_) == AccessForm::Accessor
                                       ? src->name + "_GET(" + index + ")"
                                       : src->name + "[" + index + "]";
        std::ostringstream out;
        out << "/* " << a.name << " is computed from " << src->name
            << " by a mapping function; subscript access is not\n"
            << "   preserved, read elements with " << get << "(i). */\n"
            << "#define " << get << "(i) ((" << ctype_name(a.type) << ")((((long)(" << source << ")) * "
            << m.decl.num << "L) / " << m.decl.den << "L + " << m.decl.add << "L))\n";
        return out.str();
    }

    const CompactionResult& result_;
    const std::vector<ArraySpec>& arrays_;
    const std::vector<Scalar>& scalars_;
    const PlatformConfig& p_;
    const EmitOptions& o_;
    Names names_;
    std::string cq_;
    std::string storage_;
};

}  // namespace

std::string emit_compacted(const CompactionResult& result, const std::vector<ArraySpec>& arrays,
                           const std::vector<Scalar>& scalars, const PlatformConfig& p,
                           const EmitOptions& o)
{
    return CompactedWriter(result, arrays, scalars, p, o).render();
}

std::string emit_reference(const std::vector<ArraySpec>& arrays, const std::vector<Scalar>& scalars,
                           const EmitOptions& o)
{
    Names names(arrays, scalars);
    const std::string cq = o.emit_const ? "const " : "";
    const std::string storage = o.emit_static ? "static " : "";
    // Widths only matter for the INT_MIN spelling, which is the same for
    // either int size.
    constexpr std::size_t int_width = 4;
    auto width = [](ElementType t) { return t == ElementType::UChar || t == ElementType::SChar ? 1 : int_width; };

    std::ostringstream out;
    out << header_comment(false);
    if (o.null_macro && uses_null(arrays, nullptr)) out << "\n" << null_guard();
    if (!scalars.empty()) {
        out << "\n";
        for (const auto& s : scalars)
            out << storage << cq << ctype_name(s.type) << " " << s.name << " = "
                << literal(s.value, s.type, width(s.type)) << ";\n";
    }

    for (const auto& a : arrays) {
        out << "\n";
        const std::string elem = cq + std::string(ctype_name(a.type));
        const std::size_t w = width(a.type);
        if (!a.has_null()) {
            out << storage << elem << " " << a.name;
            for (auto d : a.dims) out << "[" << d << "]";
            out << " = ";
            if (a.rank() == 1) {
                out << row_literal(*a.rows[0], a.type, w);
            } else if (a.rank() == 2) {
                std::vector<std::string> rows;
                for (const auto& r : a.rows) rows.push_back(row_literal(*r, a.type, w));
                out << join(rows);
            } else {
                std::vector<std::string> planes;
                for (std::size_t p = 0; p < a.dims[0]; ++p) {
                    std::vector<std::string> rows;
                    for (std::size_t r = 0; r < a.dims[1]; ++r)
                        rows.push_back(row_literal(*a.rows[p * a.dims[1] + r], a.type, w));
                    planes.push_back(join(rows));
                }
                out << join(planes);
            }
            out << ";\n";
            continue;
        }

        // Pointer form: each row is its own array.
        auto row_name = [&](std::size_t r) {
            std::string n = a.name;
            for (auto i : a.row_indices(r)) n += "_" + std::to_string(i);
            return n;
        };
        for (std::size_t r = 0; r < a.rows.size(); ++r) {
            if (!a.rows[r]) continue;
            const std::string n = row_name(r);
            names.claim(n, a.name);
            out << storage << elem << " " << n << "[" << a.row_length() << "] = "
                << row_literal(*a.rows[r], a.type, w) << ";\n";
        }
        auto slot = [&](std::size_t r) { return a.rows[r] ? row_name(r) : std::string("NULL"); };
        if (a.rank() == 2) {
            std::vector<std::string> slots;
            for (std::size_t r = 0; r < a.dims[0]; ++r) slots.push_back(slot(r));
            out << storage << elem << " *" << a.name << "[" << a.dims[0] << "] = " << join(slots) << ";\n";
        } else {
            std::vector<std::string> planes;
            for (std::size_t p = 0; p < a.dims[0]; ++p) {
                if (a.plane_is_null(p)) {
                    planes.emplace_back("NULL");
                    continue;
                }
                const std::string plane = a.name + std::to_string(p);
                names.claim(plane, a.name);
                std::vector<std::string> slots;
                for (std::size_t r = 0; r < a.dims[1]; ++r) slots.push_back(slot(p * a.dims[1] + r));
                out << storage << elem << " *" << plane << "[" << a.dims[1] << "] = " << join(slots) << ";\n";
                planes.push_back(plane);
            }
            out << storage << elem << " **" << a.name << "[" << a.dims[0] << "] = " << join(planes) << ";\n";
        }
    }
    return out.str();
}

}  // namespace compactor
