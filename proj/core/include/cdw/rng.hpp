#ifndef CDW_RNG_HPP
#define CDW_RNG_HPP

#include <cstdint>

namespace cdw {

// PCG XSH-RR 64/32: 64-bit LCG state, 32-bit permuted output.
// Integer-only, so streams are reproducible bit-for-bit across platforms.
class Pcg32 {
public:
    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = kDefaultStream) {
        state_ = 0u;
        inc_ = (stream << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return (hi << 32u) | lo;
    }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11u) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    static constexpr std::uint64_t kDefaultStream = 0xda3e39cb94b95bdbULL;

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

// SplitMix64; used to derive child seeds for sweep runs.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30u)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27u)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31u);
}

inline std::uint64_t derive_seed(std::uint64_t parent_seed, std::uint64_t coordinate) {
    return splitmix64(splitmix64(parent_seed) ^ (coordinate + 0x517cc1b727220a95ULL));
}

} // namespace cdw

#endif
