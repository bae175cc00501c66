#include "compactor/harness.hpp"

#include <bit>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "compactor/error.hpp"

namespace compactor {

namespace {

void dump_row(std::ostringstream& os, const std::optional<Row>& row)
{
    if (!row) {
        os << " NULL";
        return;
    }
    for (auto v : *row) os << ' ' << v;
}

std::string literal_indices(const std::vector<std::size_t>& idx)
{
    std::string s;
    for (auto i : idx) s += std::to_string(i) + "ul, ";
    return s;
}

// Dump loop for arrays read through plain subscripts. NULL checks run at
// run time so the emitted NULL slots are exercised.
std::string subscript_dump(const ArraySpec& a)
{
    std::ostringstream os;
    const std::string n = a.name;
    os << "    printf(\"" << n << ":\");\n";
    switch (a.rank()) {
    case 1:
        os << "    for (i0 = 0; i0 < " << a.dims[0] << "ul; ++i0) printf(\" %ld\", (long)" << n << "[i0]);\n";
        break;
    case 2:
        os << "    for (i0 = 0; i0 < " << a.dims[0] << "ul; ++i0) {\n"
           << "        if (" << n << "[i0] == NULL) { printf(\" NULL\"); continue; }\n"
           << "        for (i1 = 0; i1 < " << a.dims[1] << "ul; ++i1) printf(\" %ld\", (long)" << n << "[i0][i1]);\n"
           << "    }\n";
        break;
    case 3:
        os << "    for (i0 = 0; i0 < " << a.dims[0] << "ul; ++i0) {\n"
           << "        if (" << n << "[i0] == NULL) { printf(\" NULL\"); continue; }\n"
           << "        for (i1 = 0; i1 < " << a.dims[1] << "ul; ++i1) {\n"
           << "            if (" << n << "[i0][i1] == NULL) { printf(\" NULL\"); continue; }\n"
           << "            for (i2 = 0; i2 < " << a.dims[2] << "ul; ++i2) printf(\" %ld\", (long)" << n
           << "[i0][i1][i2]);\n"
           << "        }\n"
           << "    }\n";
        break;
    }
    os << "    printf(\"\\n\");\n";
    return os.str();
}

// Dump for arrays only reachable through NAME_GET; NULL structure is known
// statically from the model.
std::string accessor_dump(const ArraySpec& a)
{
    std::ostringstream os;
    os << "    printf(\"" << a.name << ":\");\n";
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        const auto idx = a.row_indices(r);
        if (a.rank() == 3 && a.plane_is_null(idx[0])) {
            if (idx[1] == 0) os << "    printf(\" NULL\");\n";
            continue;
        }
        if (!a.rows[r]) {
            os << "    printf(\" NULL\");\n";
            continue;
        }
        os << "    for (i0 = 0; i0 < " << a.row_length() << "ul; ++i0) printf(\" %ld\", (long)" << a.name
           << "_GET(" << literal_indices(idx) << "i0));\n";
    }
    os << "    printf(\"\\n\");\n";
    return os.str();
}

std::string reference_shim(const ArraySpec& a)
{
    std::string params, subs;
    for (std::size_t k = 0; k < a.rank(); ++k) {
        if (k) params += ", ";
        params += "i" + std::to_string(k);
        subs += "[i" + std::to_string(k) + "]";
    }
    return "#define " + a.name + "_GET(" + params + ") (" + a.name + subs + ")\n";
}

std::string main_unit(const std::string& include, const std::string& shims, const std::string& body)
{
    std::ostringstream os;
    os << "#include <stdio.h>\n"
       << "#include \"" << include << "\"\n";
    if (!shims.empty()) os << "\n" << shims;
    os << "\nint main(void)\n{\n"
       << "    unsigned long i0, i1, i2;\n"
       << "    i0 = i1 = i2 = 0;\n"
       << "    (void)i0; (void)i1; (void)i2;\n"
       << body << "    return 0;\n}\n";
    return os.str();
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

std::string quoted(const std::filesystem::path& p)
{
    std::string s = "'";
    for (char c : p.string()) {
        if (c == '\'') s += "'\\''";
        else s += c;
    }
    return s + "'";
}

}  // namespace

std::string dump_model(const std::vector<ArraySpec>& arrays, const std::vector<Scalar>& scalars)
{
    std::ostringstream os;
    for (const auto& s : scalars) os << s.name << ": " << s.value << "\n";
    for (const auto& a : arrays) {
        os << a.name << ":";
        for (std::size_t r = 0; r < a.rows.size(); ++r) {
            if (a.rank() == 3 && a.plane_is_null(r / a.dims[1])) {
                if (r % a.dims[1] == 0) os << " NULL";
                continue;
            }
            dump_row(os, a.rows[r]);
        }
        os << "\n";
    }
    return os.str();
}

HarnessBundle emit_harness(const std::vector<ArraySpec>& arrays, const std::vector<Scalar>& scalars,
                           const CompactionResult& result, const PlatformConfig& p,
                           const EmitOptions& o)
{
    HarnessBundle b;
    b.reference_unit = emit_reference(arrays, scalars, o);
    b.compacted_unit = emit_compacted(result, arrays, scalars, p, o);

    std::string body, shims;
    for (const auto& s : scalars) body += "    printf(\"" + s.name + ": %ld\\n\", (long)" + s.name + ");\n";
    for (const auto& a : arrays) {
        if (access_form(a, result) == AccessForm::Accessor) {
            body += accessor_dump(a);
            shims += reference_shim(a);
        } else {
            body += subscript_dump(a);
        }
    }
    b.main_ref = main_unit("reference.c", shims, body);
    b.main_cmp = main_unit("compacted.c", "", body);
    b.expected_dump = dump_model(post_merge_model(result, arrays, p), scalars);
    b.expected_reference_dump = dump_model(arrays, scalars);
    return b;
}

PlatformConfig host_platform()
{
    PlatformConfig p;
    p.int_bytes = static_cast<int>(sizeof(int));
    p.endianness = std::endian::native == std::endian::big ? Endianness::Big : Endianness::Little;
    p.pointer_bytes = static_cast<int>(sizeof(void*));
    return p;
}

std::string harness_compiler()
{
    const char* cc = std::getenv("COMPACTOR_CC");
    return cc && *cc ? cc : "cc";
}

HarnessRun run_harness(const HarnessBundle& bundle, const std::filesystem::path& dir,
                       const std::string& compiler)
{
    std::filesystem::create_directories(dir);
    write_file(dir / "reference.c", bundle.reference_unit);
    write_file(dir / "compacted.c", bundle.compacted_unit);
    write_file(dir / "main_ref.c", bundle.main_ref);
    write_file(dir / "main_cmp.c", bundle.main_cmp);
    write_file(dir / "expected.txt", bundle.expected_dump);

    if (std::system((compiler + " --version > /dev/null 2>&1").c_str()) != 0)
        return {HarnessStatus::NoCompiler, "C compiler '" + compiler + "' is not available"};

    auto build_and_run = [&](const std::string& stem) -> std::optional<std::string> {
        const auto exe = dir / stem;
        const std::string compile = compiler + " -std=c89 -w -o " + quoted(exe) + " " +
                                    quoted(dir / (stem + ".c")) + " 2> " +
                                    quoted(dir / (stem + ".log"));
        if (std::system(compile.c_str()) != 0) return std::nullopt;
        const auto out = dir / (stem + ".txt");
        if (std::system((quoted(exe) + " > " + quoted(out)).c_str()) != 0) return std::nullopt;
        return read_file(out);
    };

    const auto ref = build_and_run("main_ref");
    if (!ref) return {HarnessStatus::Mismatch, "reference program failed to build or run (see main_ref.log)"};
    const auto cmp = build_and_run("main_cmp");
    if (!cmp) return {HarnessStatus::Mismatch, "compacted program failed to build or run (see main_cmp.log)"};

    if (*ref != bundle.expected_reference_dump)
        return {HarnessStatus::Mismatch, "reference dump differs from the model"};
    if (*cmp != bundle.expected_dump)
        return {HarnessStatus::Mismatch, "compacted dump differs from expected.txt"};
    return {HarnessStatus::Match, "dumps match"};
}

}  // namespace compactor
