#pragma once

#include <cstdint>
#include <string>

#include "blochsep/stats.hpp"

namespace blochsep {

/// Self-describing text envelope around a JointHistogram. Counters are
/// decimal integers; moments are printed with 17 significant digits so a
/// load/save cycle is byte-identical.
struct CheckpointFile {
    static constexpr int kFormatVersion = 1;

    std::uint64_t stream_offset = 0;
    int n_workers = 1;
    /// Samples cover the contiguous stream range
    /// [stream_offset, stream_offset + hist.n_samples); false after merging
    /// non-adjacent runs, in which case the file cannot seed a resume.
    bool contiguous = true;
    JointHistogram hist;

    std::uint64_t samples_done() const { return hist.n_samples; }
};

/// Atomic write (temp file + rename). Throws IoError.
void save_checkpoint(const CheckpointFile& cp, const std::string& path);

CheckpointFile load_checkpoint(const std::string& path);

/// Sum of two runs over the same measure/seed with disjoint stream ranges.
/// Throws ConfigError on meta mismatch or overlapping ranges.
CheckpointFile merge_checkpoints(const CheckpointFile& a, const CheckpointFile& b);

}  // namespace blochsep
