#pragma once

// Subcommand implementations behind the compactor executable.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compactor/error.hpp"

namespace compactor {

enum ExitCode : int {
    kExitOk = 0,
    kExitMismatch = 1,
    kExitUsage = 2,
    kExitIo = 3,
    kExitInput = 4,        // parse, validation or mapping errors
    kExitVerification = 5,
    kExitTooLarge = 6,
    kExitInternal = 70,
    kExitNoCompiler = 77,
};

int exit_code_for(ErrorKind kind);

struct CompactArgs {
    std::filesystem::path input;
    std::filesystem::path out;
    std::optional<std::filesystem::path> reference;
    std::optional<std::filesystem::path> report;
    std::optional<std::string> methods;   // comma separated, overrides the input file
    std::optional<std::string> strategy;
    std::optional<std::uint64_t> seed;
    std::optional<double> lossy_threshold;
    std::optional<std::string> var_name;
    bool emit_static = false;  // only ever switches the keyword on
    bool emit_const = false;
    bool parallel = false;
    bool timings = true;
    std::vector<std::pair<std::string, double>> comparisons;
};

int cmd_compact(const CompactArgs& args, std::ostream& out, std::ostream& err);

int cmd_oracle(const std::filesystem::path& input, std::ostream& out, std::ostream& err);

int cmd_probe_split(const std::filesystem::path& input, std::size_t parts, std::size_t min_piece,
                    std::ostream& out, std::ostream& err);

int cmd_harness(const std::filesystem::path& input, const std::filesystem::path& out_dir,
                std::ostream& out, std::ostream& err);

}  // namespace compactor
