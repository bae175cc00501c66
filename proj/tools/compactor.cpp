// compactor: pack read-only C arrays into one shared byte array.

#include <iostream>

#include <CLI11.hpp>

#include "compactor/commands.hpp"

int main(int argc, char** argv)
{
    using namespace compactor;

    CLI::App app{"Pack read-only typed arrays into a single byte array addressed by pointers"};
    app.require_subcommand(1);

    CompactArgs compact;
    std::vector<std::string> comparisons;
    bool no_timings = false;
    auto* c = app.add_subcommand("compact", "Compact a specification into C source");
    c->add_option("--input", compact.input, "Specification file (JSON)")->required();
    c->add_option("--out", compact.out, "Compacted C output")->required();
    c->add_option("--reference", compact.reference, "Uncompacted reference C output");
    c->add_option("--report", compact.report, "Report output (JSON)");
    c->add_option("--methods", compact.methods,
                  "Comma separated: mapping,lossy,remove_subarrays,greedy,reverse (1=remove_subarrays, 2=greedy)");
    c->add_option("--strategy", compact.strategy, "Greedy tie strategy")
        ->check(CLI::IsMember({"first", "last", "random"}));
    c->add_option("--seed", compact.seed, "Seed for the random tie strategy");
    c->add_option("--lossy-threshold", compact.lossy_threshold, "Mean distance below which segments merge");
    c->add_option("--var-name", compact.var_name, "Name of the compacted byte array");
    c->add_flag("--static", compact.emit_static, "Emit the static keyword");
    c->add_flag("--const", compact.emit_const, "Emit the const keyword");
    c->add_flag("--parallel", compact.parallel, "Evaluate greedy overlap scans on several threads");
    c->add_flag("--no-timings", no_timings, "Leave phase timings out of the report file");
    c->add_option("--compare", comparisons, "Other compressor result as NAME=PERCENT (repeatable)");

    std::filesystem::path oracle_input;
    auto* o = app.add_subcommand("oracle", "Compare greedy against the exact shortest superstring");
    o->add_option("--input", oracle_input, "Specification file (JSON)")->required();

    std::filesystem::path probe_input;
    std::size_t parts = 2;
    std::size_t min_piece = 1;
    auto* p = app.add_subcommand("probe-split", "Estimate compaction after splitting long rows");
    p->add_option("--input", probe_input, "Specification file (JSON)")->required();
    p->add_option("--parts", parts, "Pieces per split row")->required()->check(CLI::Range(2, 1 << 20));
    p->add_option("--min-piece", min_piece, "Shortest piece in bytes")->check(CLI::PositiveNumber);

    std::filesystem::path harness_input, harness_dir;
    auto* h = app.add_subcommand("harness", "Build and diff C dump programs for reference and compacted data");
    h->add_option("--input", harness_input, "Specification file (JSON)")->required();
    h->add_option("--out-dir", harness_dir, "Directory for generated fixtures")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (c->parsed()) {
        compact.timings = !no_timings;
        for (const auto& item : comparisons) {
            const auto eq = item.find('=');
            try {
                if (eq == std::string::npos) throw std::invalid_argument(item);
                compact.comparisons.emplace_back(item.substr(0, eq), std::stod(item.substr(eq + 1)));
            } catch (const std::exception&) {
                std::cerr << "compactor: --compare expects NAME=PERCENT, got '" << item << "'\n";
                return kExitUsage;
            }
        }
        return cmd_compact(compact, std::cout, std::cerr);
    }
    if (o->parsed()) return cmd_oracle(oracle_input, std::cout, std::cerr);
    if (p->parsed()) return cmd_probe_split(probe_input, parts, min_piece, std::cout, std::cerr);
    return cmd_harness(harness_input, harness_dir, std::cout, std::cerr);
}
