#pragma once

// Step 3: C source emission for compacted data and for the uncompacted
// reference, plus an in-memory placement check.

#include <string>
#include <vector>

#include "compactor/compact.hpp"
#include "compactor/model.hpp"

namespace compactor {

struct EmitOptions {
    std::string var_name = "c";
    bool emit_static = false;
    bool emit_const = true;
    bool null_macro = true;  // emit a NULL fallback definition when NULL is used
};

EmitOptions emit_options(const CompactionOptions& options);

/// How an array is accessed in the compacted output.
enum class AccessForm {
    Pointer,   // plain subscripts through pointer tables
    Accessor,  // only through the <name>_GET(...) macro
};

AccessForm access_form(const ArraySpec& array, const CompactionResult& result);

/// Number of pointer-sized slots the compacted output adds over a plain
/// declaration (pointer variables, pointer-table entries, row-position entries).
std::size_t pointer_slot_count(const CompactionResult& result, const std::vector<ArraySpec>& arrays);

std::string emit_compacted(const CompactionResult& result, const std::vector<ArraySpec>& arrays,
                           const std::vector<Scalar>& scalars, const PlatformConfig& p,
                           const EmitOptions& o);

std::string emit_reference(const std::vector<ArraySpec>& arrays, const std::vector<Scalar>& scalars,
                           const EmitOptions& o);

/// Decodes every stored row back out of the compacted bytes and compares it
/// with the model (post-merge values for rows rewritten by lossy merging).
/// Throws Error(Verification) at the first mismatch.
void verify_placements(const CompactionResult& result, const std::vector<ArraySpec>& arrays,
                       const PlatformConfig& p);

/// The arrays as the compacted output represents them: original values with
/// lossy-merged rows replaced.
std::vector<ArraySpec> post_merge_model(const CompactionResult& result,
                                        const std::vector<ArraySpec>& arrays,
                                        const PlatformConfig& p);

}  // namespace compactor
