#pragma once

#include <cmath>
#include <cstdint>

namespace blochsep {

/// Deterministic, splittable random stream. A stream is fully identified by
/// (base_seed, stream_index): the same pair always reproduces the same draw
/// sequence, and distinct pairs give statistically independent streams. The
/// generator is xoshiro256++ seeded through SplitMix64, so consecutive stream
/// indices are safe to hand to concurrent workers (or to individual samples).
class RngStream {
  public:
    RngStream(std::uint64_t base_seed, std::uint64_t stream_index) {
        std::uint64_t x = base_seed ^ (0x9E3779B97F4A7C15ULL * (stream_index + 0x632BE59BD9B4E019ULL));
        bool any = false;
        for (auto& w : s_) {
            w = splitmix64(x);
            any |= (w != 0);
        }
        if (!any) s_[0] = 0x106689D45497FDB5ULL;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log argument.
    double uniform_open() { return 1.0 - uniform01(); }

    /// Standard normal via Box-Muller; the second variate is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double z0, z1;
        normal_pair(z0, z1);
        spare_ = z1;
        has_spare_ = true;
        return z0;
    }

    /// Both Box-Muller variates at once (bypasses the spare cache).
    void normal_pair(double& z0, double& z1) {
        const double r = std::sqrt(-2.0 * std::log(uniform_open()));
        const double th = 6.283185307179586476925286766559 * uniform01();
        z0 = r * std::cos(th);
        z1 = r * std::sin(th);
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace blochsep
