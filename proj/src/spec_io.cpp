// JSON specification document reader/writer.

#include <limits>
#include <sstream>

#include <json.hpp>

#include "compactor/error.hpp"
#include "compactor/model.hpp"

namespace compactor {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what)
{
    throw Error(ErrorKind::Parse, where + ": " + what);
}

const json* member(const json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    return &*it;
}

std::string require_string(const json& obj, const char* key, const std::string& where)
{
    const json* v = member(obj, key);
    if (!v || !v->is_string()) schema_error(where, std::string("missing string field '") + key + "'");
    return v->get<std::string>();
}

std::int64_t to_int(const json& v, const std::string& where)
{
    if (v.is_number_unsigned()) {
        const auto u = v.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            throw Error(ErrorKind::Validation, where + ": value out of range");
        return static_cast<std::int64_t>(u);
    }
    if (v.is_number_integer()) return v.get<std::int64_t>();
    schema_error(where, "expected an integer, got " + v.dump());
}

std::int64_t require_int(const json& obj, const char* key, const std::string& where)
{
    const json* v = member(obj, key);
    if (!v) schema_error(where, std::string("missing integer field '") + key + "'");
    return to_int(*v, where + "." + key);
}

ElementType require_ctype(const json& obj, const std::string& where)
{
    const auto name = require_string(obj, "ctype", where);
    auto t = parse_ctype(name);
    if (!t) throw Error(ErrorKind::Validation, where + ": unknown type name '" + name + "'");
    return *t;
}

PlatformConfig parse_platform(const json& root)
{
    const json* pj = member(root, "platform");
    if (!pj || !pj->is_object()) schema_error("platform", "missing platform object");
    PlatformConfig p;
    p.int_bytes = static_cast<int>(require_int(*pj, "int_bytes", "platform"));
    const auto endian = require_string(*pj, "endianness", "platform");
    if (endian == "little") p.endianness = Endianness::Little;
    else if (endian == "big") p.endianness = Endianness::Big;
    else schema_error("platform", "endianness must be \"little\" or \"big\"");
    if (const json* nr = member(*pj, "negative_repr")) {
        if (!nr->is_string() || nr->get<std::string>() != "twos_complement")
            schema_error("platform", "negative_repr must be \"twos_complement\"");
    }
    if (member(*pj, "pointer_bytes"))
        p.pointer_bytes = static_cast<int>(require_int(*pj, "pointer_bytes", "platform"));
    return p;
}

bool optional_bool(const json& obj, const char* key, bool fallback, const std::string& where)
{
    const json* v = member(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) schema_error(where, std::string("field '") + key + "' must be a boolean");
    return v->get<bool>();
}

CompactionOptions parse_options(const json& root)
{
    CompactionOptions o;
    const json* oj = member(root, "options");
    if (!oj) return o;
    if (!oj->is_object()) schema_error("options", "must be an object");
    if (const json* mj = member(*oj, "methods")) {
        if (!mj->is_array()) schema_error("options", "methods must be an array");
        o.methods = MethodSet{};
        for (const auto& m : *mj) {
            if (!m.is_string()) schema_error("options", "method names must be strings");
            auto method = parse_method(m.get<std::string>());
            if (!method) schema_error("options", "unknown method '" + m.get<std::string>() + "'");
            o.methods.insert(*method);
        }
    }
    if (const json* sj = member(*oj, "tie_strategy")) {
        if (!sj->is_string()) schema_error("options", "tie_strategy must be a string");
        auto s = parse_strategy(sj->get<std::string>());
        if (!s) schema_error("options", "unknown tie_strategy '" + sj->get<std::string>() + "'");
        o.tie_strategy = *s;
    }
    if (const json* sj = member(*oj, "seed")) {
        if (!sj->is_number_integer()) schema_error("options", "seed must be an integer");
        o.seed = sj->is_number_unsigned() ? sj->get<std::uint64_t>()
                                          : static_cast<std::uint64_t>(sj->get<std::int64_t>());
    }
    if (const json* tj = member(*oj, "lossy_threshold")) {
        if (!tj->is_number()) schema_error("options", "lossy_threshold must be a number or null");
        o.lossy_threshold = tj->get<double>();
    }
    if (member(*oj, "var_name")) o.var_name = require_string(*oj, "var_name", "options");
    o.emit_static = optional_bool(*oj, "static", o.emit_static, "options");
    o.emit_const = optional_bool(*oj, "const", o.emit_const, "options");
    return o;
}

Row parse_row(const json& v, std::size_t extent, const std::string& where)
{
    if (!v.is_array()) schema_error(where, "expected an array of " + std::to_string(extent) + " values");
    if (v.size() != extent) throw Error(ErrorKind::Validation, where + ": dimension/data mismatch");
    Row row;
    row.reserve(extent);
    for (const auto& e : v) {
        if (e.is_null()) throw Error(ErrorKind::Validation, where + ": NULL at element level");
        row.push_back(to_int(e, where));
    }
    return row;
}

ArraySpec parse_array(const json& aj, std::size_t index)
{
    std::string where = "arrays[" + std::to_string(index) + "]";
    if (!aj.is_object()) schema_error(where, "must be an object");
    ArraySpec a;
    a.name = require_string(aj, "name", where);
    where = "array '" + a.name + "'";
    a.type = require_ctype(aj, where);

    const json* dj = member(aj, "dims");
    if (!dj || !dj->is_array() || dj->empty() || dj->size() > 3)
        throw Error(ErrorKind::Validation, where + ": dims must list 1 to 3 extents");
    for (const auto& d : *dj) {
        const auto extent = to_int(d, where + ".dims");
        if (extent <= 0) throw Error(ErrorKind::Validation, where + ": dimension extents must be positive");
        a.dims.push_back(static_cast<std::size_t>(extent));
    }

    const json* data = member(aj, "data");
    if (!data) throw Error(ErrorKind::Validation, where + ": array data must not be NULL");
    auto expect_list = [&](const json& v, std::size_t extent) {
        if (!v.is_array()) schema_error(where, "expected a nested array");
        if (v.size() != extent) throw Error(ErrorKind::Validation, where + ": dimension/data mismatch");
    };

    switch (a.rank()) {
    case 1:
        a.rows.emplace_back(parse_row(*data, a.dims[0], where));
        break;
    case 2:
        expect_list(*data, a.dims[0]);
        for (const auto& r : *data)
            a.rows.push_back(r.is_null() ? std::nullopt
                                         : std::optional<Row>(parse_row(r, a.dims[1], where)));
        break;
    case 3:
        expect_list(*data, a.dims[0]);
        for (const auto& plane : *data) {
            a.null_planes.push_back(plane.is_null());
            if (plane.is_null()) {
                a.rows.insert(a.rows.end(), a.dims[1], std::nullopt);
                continue;
            }
            expect_list(plane, a.dims[1]);
            for (const auto& r : plane)
                a.rows.push_back(r.is_null() ? std::nullopt
                                             : std::optional<Row>(parse_row(r, a.dims[2], where)));
        }
        break;
    }
    return a;
}

ordered_json row_json(const std::optional<Row>& row)
{
    if (!row) return nullptr;
    return ordered_json(*row);
}

ordered_json data_json(const ArraySpec& a)
{
    if (a.rank() == 1) return row_json(a.rows.front());
    ordered_json out = ordered_json::array();
    if (a.rank() == 2) {
        for (const auto& r : a.rows) out.push_back(row_json(r));
        return out;
    }
    for (std::size_t p = 0; p < a.dims[0]; ++p) {
        if (a.plane_is_null(p)) {
            out.push_back(nullptr);
            continue;
        }
        ordered_json plane = ordered_json::array();
        for (std::size_t r = 0; r < a.dims[1]; ++r) plane.push_back(row_json(a.rows[p * a.dims[1] + r]));
        out.push_back(std::move(plane));
    }
    return out;
}

}  // namespace

SpecDocument parse_spec(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << "syntax error at byte " << e.byte << ": " << e.what();
        throw Error(ErrorKind::Parse, os.str());
    }
    if (!root.is_object()) schema_error("document", "top level must be an object");

    SpecDocument doc;
    doc.platform = parse_platform(root);
    doc.options = parse_options(root);

    if (const json* sj = member(root, "scalars")) {
        if (!sj->is_array()) schema_error("scalars", "must be an array");
        for (std::size_t i = 0; i < sj->size(); ++i) {
            const auto& s = (*sj)[i];
            const std::string where = "scalars[" + std::to_string(i) + "]";
            if (!s.is_object()) schema_error(where, "must be an object");
            Scalar sc;
            sc.name = require_string(s, "name", where);
            sc.type = require_ctype(s, "scalar '" + sc.name + "'");
            sc.value = require_int(s, "value", "scalar '" + sc.name + "'");
            doc.scalars.push_back(std::move(sc));
        }
    }

    const json* aj = member(root, "arrays");
    if (!aj || !aj->is_array()) schema_error("arrays", "missing arrays list");
    for (std::size_t i = 0; i < aj->size(); ++i) doc.arrays.push_back(parse_array((*aj)[i], i));

    if (const json* mj = member(root, "mappings")) {
        if (!mj->is_array()) schema_error("mappings", "must be an array");
        for (std::size_t i = 0; i < mj->size(); ++i) {
            const auto& m = (*mj)[i];
            const std::string where = "mappings[" + std::to_string(i) + "]";
            if (!m.is_object()) schema_error(where, "must be an object");
            MappingDecl d;
            d.source = require_string(m, "source", where);
            d.target = require_string(m, "target", where);
            d.num = member(m, "num") ? require_int(m, "num", where) : 1;
            d.den = member(m, "den") ? require_int(m, "den", where) : 1;
            d.add = member(m, "add") ? require_int(m, "add", where) : 0;
            doc.mappings.push_back(std::move(d));
        }
    }

    validate_arrays(doc.arrays, doc.scalars, doc.platform);
    validate_mapping_decls(doc.arrays, doc.mappings);
    validate_options(doc.options);
    if (find_array(doc.arrays, doc.options.var_name))
        throw Error(ErrorKind::Validation,
                    "options: var_name '" + doc.options.var_name + "' collides with an array name");
    return doc;
}

std::string serialize_spec(const SpecDocument& doc)
{
    ordered_json root;
    root["platform"] = {
        {"int_bytes", doc.platform.int_bytes},
        {"endianness", doc.platform.endianness == Endianness::Little ? "little" : "big"},
        {"negative_repr", "twos_complement"},
        {"pointer_bytes", doc.platform.pointer_bytes},
    };

    ordered_json methods = ordered_json::array();
    for (Method m : doc.options.methods.list()) methods.push_back(method_name(m));
    ordered_json options;
    options["methods"] = std::move(methods);
    options["tie_strategy"] = strategy_name(doc.options.tie_strategy);
    options["seed"] = doc.options.seed ? ordered_json(*doc.options.seed) : ordered_json(nullptr);
    options["lossy_threshold"] =
        doc.options.lossy_threshold ? ordered_json(*doc.options.lossy_threshold) : ordered_json(nullptr);
    options["var_name"] = doc.options.var_name;
    options["static"] = doc.options.emit_static;
    options["const"] = doc.options.emit_const;
    root["options"] = std::move(options);

    ordered_json scalars = ordered_json::array();
    for (const auto& s : doc.scalars)
        scalars.push_back({{"name", s.name}, {"ctype", ctype_name(s.type)}, {"value", s.value}});
    root["scalars"] = std::move(scalars);

    ordered_json arrays = ordered_json::array();
    for (const auto& a : doc.arrays) {
        ordered_json aj;
        aj["name"] = a.name;
        aj["ctype"] = ctype_name(a.type);
        aj["dims"] = a.dims;
        aj["data"] = data_json(a);
        arrays.push_back(std::move(aj));
    }
    root["arrays"] = std::move(arrays);

    ordered_json mappings = ordered_json::array();
    for (const auto& m : doc.mappings)
        mappings.push_back({{"source", m.source}, {"target", m.target}, {"num", m.num},
                            {"den", m.den}, {"add", m.add}});
    root["mappings"] = std::move(mappings);

    return root.dump(2) + "\n";
}

}  // namespace compactor
