#pragma once

#include <cstdint>
#include <random>

namespace anderson {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for realization `index` of an ensemble keyed by `master_seed`.
/// Splitmix-style: mixes master_seed advanced by (index+1) golden-ratio
/// increments, so nearby masters and nearby indices decorrelate.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Deterministic uniform stream on [0,1). The mapping from raw engine
/// output is fixed here (top 53 bits) instead of relying on
/// std::uniform_real_distribution, whose sequence is implementation
/// defined.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [-1/2, +1/2).
    double next_centered() { return next() - 0.5; }

    /// Uniform on [-w, +w).
    double next_symmetric(double w) { return (2.0 * next() - 1.0) * w; }

private:
    std::mt19937_64 engine_;
};

}  // namespace anderson
