#pragma once

// Differential C fixtures: one dump program built against the reference
// declarations and against the compacted ones.

#include <filesystem>
#include <string>
#include <vector>

#include "compactor/codegen.hpp"

namespace compactor {

struct HarnessBundle {
    std::string reference_unit;
    std::string compacted_unit;
    std::string main_ref;   // dump program including reference.c
    std::string main_cmp;   // dump program including compacted.c
    std::string expected_dump;            // from the post-merge model
    std::string expected_reference_dump;  // from the original model
};

/// One line per scalar, then one per array in declaration order:
/// `name: v v v`, row-major, with a single `NULL` token per NULL row or plane.
std::string dump_model(const std::vector<ArraySpec>& arrays, const std::vector<Scalar>& scalars);

HarnessBundle emit_harness(const std::vector<ArraySpec>& arrays, const std::vector<Scalar>& scalars,
                           const CompactionResult& result, const PlatformConfig& p,
                           const EmitOptions& o);

/// Platform matching the host C compiler's int size and byte order.
PlatformConfig host_platform();

enum class HarnessStatus { Match = 0, Mismatch = 1, NoCompiler = 77 };

struct HarnessRun {
    HarnessStatus status = HarnessStatus::Match;
    std::string detail;
};

/// Writes the bundle into `dir`, compiles both programs with `compiler`
/// and compares their output against the expected dumps.
HarnessRun run_harness(const HarnessBundle& bundle, const std::filesystem::path& dir,
                       const std::string& compiler);

/// Compiler named by COMPACTOR_CC, or "cc".
std::string harness_compiler();

}  // namespace compactor
