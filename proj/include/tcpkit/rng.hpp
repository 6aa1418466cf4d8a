#pragma once

#include <cstdint>

namespace tcpkit {

// Counter-based generator built on the SplitMix64 output function
// (Steele/Lea/Flood; constants from the reference implementation). Draw i of
// a stream is finalize(key + (i+1)*GAMMA), so values are indexed rather than
// sequential: any entry can be generated independently, in any order, on any
// thread, with identical results. No libm calls anywhere, so outputs are
// bit-identical across platforms.
class Rng {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Sub-stream `stream` of master seed `seed`.
    static Rng keyed(std::uint64_t seed, std::uint64_t stream) {
        return Rng{finalize(seed * kGamma + 0x632BE59BD9B4E019ull) ^ finalize((stream + 1) * kGamma)};
    }

    explicit Rng(std::uint64_t key) : key_(key) {}

    std::uint64_t bits_at(std::uint64_t i) const { return finalize(key_ + (i + 1) * kGamma); }

    // [0, 1) with 53 random bits
    double u01_at(std::uint64_t i) const { return static_cast<double>(bits_at(i) >> 11) * 0x1.0p-53; }

    double uniform_at(std::uint64_t i, double lo, double hi) const {
        return lo + (hi - lo) * u01_at(i);
    }

    // Irwin-Hall approximation (sum of 12 uniforms, centered): mean 0,
    // variance 1, support [-6, 6]. Chosen over Box-Muller so draws stay
    // reproducible bit-for-bit across libm implementations. Consumes
    // sub-indices 12i..12i+11; do not mix with u01_at on the same stream.
    double normal_at(std::uint64_t i) const {
        double s = 0.0;
        for (std::uint64_t k = 0; k < 12; ++k) s += u01_at(12 * i + k);
        return s - 6.0;
    }

    // Integer in [lo, hi] via rejection-free modulo (bias negligible for
    // desk-scale ranges).
    long long int_at(std::uint64_t i, long long lo, long long hi) const {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(bits_at(i) % span);
    }

private:
    std::uint64_t key_;
};

} // namespace tcpkit
