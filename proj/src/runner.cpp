#include "blochsep/runner.hpp"

#include <atomic>
#include <cstdio>
#include <thread>
#include <vector>

#include "blochsep/errors.hpp"
#include "blochsep/stats.hpp"

namespace blochsep {

namespace {

constexpr std::uint64_t kChunk = 16384;

struct ChunkMoments {
    Moments all, sep;
};

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

CheckpointFile run_sampling(const RunConfig& config, const CheckpointFile* resume_from) {
    config.measure.validate();
    if (config.n_samples < 1) throw ConfigError("run_sampling: n_samples must be >= 1");
    const int workers = resolve_workers(config.n_workers);

    CheckpointFile state;
    if (resume_from) {
        state = *resume_from;
        if (!(state.hist.measure == config.measure))
            throw ConfigError("resume: measure mismatch (checkpoint has " + state.hist.measure.to_string() +
                              ", run wants " + config.measure.to_string() + ")");
        if (state.hist.base_seed != config.base_seed) throw ConfigError("resume: base seed mismatch");
        if (state.stream_offset != config.stream_offset) throw ConfigError("resume: stream offset mismatch");
        if (!state.contiguous) throw ConfigError("resume: checkpoint is a merged (non-contiguous) run");
    } else {
        state.hist.measure = config.measure;
        state.hist.base_seed = config.base_seed;
        state.stream_offset = config.stream_offset;
    }
    state.n_workers = workers;

    while (state.hist.n_samples < config.n_samples) {
        const std::uint64_t done = state.hist.n_samples;
        std::uint64_t segment_end = config.n_samples;
        if (config.checkpoint_every > 0) {
            // round the segment up to a chunk boundary so every checkpoint
            // cut falls between chunks and moment sums stay bit-identical
            // between interrupted and uninterrupted runs
            std::uint64_t end = done + config.checkpoint_every;
            end = ((end + kChunk - 1) / kChunk) * kChunk;
            segment_end = std::min(segment_end, end);
        }

        const std::uint64_t first_chunk = done / kChunk;
        const std::uint64_t last_chunk = (segment_end - 1) / kChunk;
        const std::size_t n_chunks = static_cast<std::size_t>(last_chunk - first_chunk + 1);

        std::vector<ChunkMoments> packets(n_chunks);
        std::vector<JointHistogram> local(workers);
        for (auto& h : local) {
            h.measure = config.measure;
            h.base_seed = config.base_seed;
        }

        std::atomic<std::uint64_t> next_chunk{first_chunk};
        auto work = [&](int w) {
            JointHistogram& h = local[w];
            for (;;) {
                const std::uint64_t c = next_chunk.fetch_add(1);
                if (c > last_chunk) break;
                const std::uint64_t lo = std::max(done, c * kChunk);
                const std::uint64_t hi = std::min(segment_end, (c + 1) * kChunk);
                ChunkMoments& cm = packets[static_cast<std::size_t>(c - first_chunk)];
                for (std::uint64_t i = lo; i < hi; ++i) {
                    RngStream rng(config.base_seed, config.stream_offset + i);
                    SamplerCounters counters;
                    const Density4 rho = sample_dispatch(config.measure, rng, &counters);
                    const SampleRecord rec = classify(rho);
                    h.accumulate_counters(rec);
                    h.draw_attempts += counters.attempts;
                    h.draw_candidates += counters.candidates;
                    cm.all.add(rec.r_a, rec.r_b);
                    if (rec.cls != SepClass::Entangled) cm.sep.add(rec.r_a, rec.r_b);
                }
            }
        };

        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }

        for (const auto& h : local) state.hist.merge(h);
        for (const auto& cm : packets) {
            state.hist.mom_all.merge(cm.all);
            state.hist.mom_sep.merge(cm.sep);
        }

        if (!config.out_path.empty()) save_checkpoint(state, config.out_path);
        if (!config.quiet)
            std::fprintf(stderr, "[%s] %llu / %llu samples\n", config.measure.to_string().c_str(),
                         static_cast<unsigned long long>(state.hist.n_samples),
                         static_cast<unsigned long long>(config.n_samples));
    }

    return state;
}

JointHistogram sample_histogram(const MeasureSpec& measure, std::uint64_t n, std::uint64_t seed, int workers) {
    RunConfig cfg;
    cfg.measure = measure;
    cfg.n_samples = n;
    cfg.base_seed = seed;
    cfg.n_workers = workers;
    return run_sampling(cfg).hist;
}

}  // namespace blochsep
