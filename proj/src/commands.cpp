#include "compactor/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "compactor/codegen.hpp"
#include "compactor/compact.hpp"
#include "compactor/harness.hpp"
#include "compactor/model.hpp"
#include "compactor/report.hpp"

namespace compactor {

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::Mapping: return kExitInput;
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::Verification: return kExitVerification;
    case ErrorKind::TooLarge: return kExitTooLarge;
    case ErrorKind::Internal: return kExitInternal;
    }
    return kExitInternal;
}

namespace {

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "cannot read " + path.string());
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

SpecDocument load(const std::filesystem::path& path)
{
    return parse_spec(read_text(path));
}

MethodSet parse_method_list(const std::string& text)
{
    MethodSet set;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        // Numeric aliases follow the usual "1" / "1+2" shorthand.
        if (item == "1") item = "remove_subarrays";
        else if (item == "2") item = "greedy";
        auto m = parse_method(item);
        if (!m) throw Error(ErrorKind::Validation, "unknown method '" + item + "'");
        set.insert(*m);
    }
    return set;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn)
{
    try {
        return fn();
    } catch (const Error& e) {
        err << "compactor: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "compactor: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

double elapsed_ms(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

int cmd_compact(const CompactArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        auto t = std::chrono::steady_clock::now();
        SpecDocument doc = load(args.input);
        const double parse_ms = elapsed_ms(t);

        CompactionOptions& o = doc.options;
        if (args.methods) o.methods = parse_method_list(*args.methods);
        if (args.strategy) {
            auto s = parse_strategy(*args.strategy);
            if (!s) throw Error(ErrorKind::Validation, "unknown tie strategy '" + *args.strategy + "'");
            o.tie_strategy = *s;
        }
        if (args.seed) o.seed = args.seed;
        if (args.lossy_threshold) o.lossy_threshold = args.lossy_threshold;
        if (args.var_name) o.var_name = *args.var_name;
        if (args.emit_static) o.emit_static = true;
        if (args.emit_const) o.emit_const = true;
        o.parallel = args.parallel;
        validate_options(o);

        CompactionResult result = run_pipeline(doc.arrays, doc.mappings, doc.platform, o);
        result.phase_ms.insert(result.phase_ms.begin(), {"parse", parse_ms});

        t = std::chrono::steady_clock::now();
        verify_placements(result, doc.arrays, doc.platform);
        result.phase_ms.emplace_back("verify", elapsed_ms(t));

        t = std::chrono::steady_clock::now();
        const EmitOptions eo = emit_options(o);
        const std::string compacted = emit_compacted(result, doc.arrays, doc.scalars, doc.platform, eo);
        std::optional<std::string> reference;
        if (args.reference) reference = emit_reference(doc.arrays, doc.scalars, eo);
        result.phase_ms.emplace_back("codegen", elapsed_ms(t));

        write_text(args.out, compacted);
        if (reference) write_text(*args.reference, *reference);

        CompactionReport report = make_report(doc.arrays, result, doc.platform, o);
        report.comparisons = args.comparisons;
        if (args.report) write_text(*args.report, report_json(report, args.timings));
        out << report_text(report);
        return static_cast<int>(kExitOk);
    });
}

int cmd_oracle(const std::filesystem::path& input, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const SpecDocument doc = load(input);
        auto segments = flatten(doc.arrays, doc.platform);
        std::vector<Bytes> strings;
        for (const auto& s : segments) strings.push_back(s.bytes);
        if (strings.empty()) {
            out << "greedy 0\noptimal 0\nratio 1.0000\n";
            return static_cast<int>(kExitOk);
        }
        const Bytes optimum = brute_force_superstring(strings);

        GreedyOptions g{doc.options.tie_strategy, doc.options.seed.value_or(0), Orientation::Forward, false};
        const Segment greedy = greedy_compact(remove_subarrays(std::move(segments)), g);

        const double ratio =
            static_cast<double>(greedy.bytes.size()) / static_cast<double>(optimum.size());
        out << "greedy " << greedy.bytes.size() << "\n"
            << "optimal " << optimum.size() << "\n"
            << "ratio " << std::fixed << std::setprecision(4) << ratio << "\n";
        return static_cast<int>(kExitOk);
    });
}

int cmd_probe_split(const std::filesystem::path& input, std::size_t parts, std::size_t min_piece,
                    std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (parts < 2) throw Error(ErrorKind::Validation, "--parts must be at least 2");
        const SpecDocument doc = load(input);
        const auto segments = flatten(doc.arrays, doc.platform);
        GreedyOptions g{doc.options.tie_strategy, doc.options.seed.value_or(0), Orientation::Forward, false};
        const SplitProbe probe = probe_split(segments, parts, min_piece, g);
        out << "segments " << segments.size() << "\n"
            << "pieces " << probe.pieces << "\n"
            << "unsplit_bytes " << probe.unsplit_bytes << "\n"
            << "split_bytes " << probe.split_bytes << "\n";
        return static_cast<int>(kExitOk);
    });
}

int cmd_harness(const std::filesystem::path& input, const std::filesystem::path& out_dir,
                std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        SpecDocument doc = load(input);
        // The fixtures are compiled and run on this machine, so the data is
        // laid out for the host's int size and byte order.
        const PlatformConfig host = host_platform();
        if (!(doc.platform == host))
            out << "note: retargeting to the host platform (int_bytes " << host.int_bytes << ", "
                << (host.endianness == Endianness::Little ? "little" : "big") << " endian)\n";
        doc.platform = host;
        validate_arrays(doc.arrays, doc.scalars, doc.platform);

        const CompactionResult result = run_pipeline(doc.arrays, doc.mappings, doc.platform, doc.options);
        verify_placements(result, doc.arrays, doc.platform);
        const HarnessBundle bundle =
            emit_harness(doc.arrays, doc.scalars, result, doc.platform, emit_options(doc.options));
        const HarnessRun run = run_harness(bundle, out_dir, harness_compiler());
        out << run.detail << "\n";
        return static_cast<int>(run.status);
    });
}

}  // namespace compactor
