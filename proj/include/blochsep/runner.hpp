#pragma once

#include <cstdint>
#include <string>

#include "blochsep/checkpoint.hpp"
#include "blochsep/measures.hpp"

namespace blochsep {

struct RunConfig {
    MeasureSpec measure;
    std::uint64_t n_samples = 0;
    std::uint64_t base_seed = 0;
    int n_workers = 1;                   // 0 = hardware concurrency
    std::uint64_t checkpoint_every = 0;  // 0 = only write at the end
    std::string out_path;                // empty = do not write checkpoints
    std::uint64_t stream_offset = 0;
    bool quiet = true;                   // progress lines on stderr when false
};

/// Runs n_samples draws of the configured measure across a worker pool.
/// Sample i always uses RngStream(base_seed, stream_offset + i), so the
/// merged counters are identical for any worker count, and a resumed run
/// continues the stream sequence exactly. Moment sums are reduced in fixed
/// chunk order, also independent of scheduling.
CheckpointFile run_sampling(const RunConfig& config, const CheckpointFile* resume_from = nullptr);

/// Convenience: run without checkpoint I/O and return the histogram.
JointHistogram sample_histogram(const MeasureSpec& measure, std::uint64_t n, std::uint64_t seed,
                                int workers = 0);

}  // namespace blochsep
