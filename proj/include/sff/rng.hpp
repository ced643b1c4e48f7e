#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sff/types.hpp"

namespace sff {

// Identifies one deterministic per-sample stream within an experiment.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t sample_index = 0;
};

// Deterministic random stream derived by hashing (master_seed, sample_index).
// The raw 64-bit outputs are fully specified by the C++ standard (mt19937_64 +
// seed_seq), so two builds produce identical byte sequences. All floating-point
// distributions are implemented here rather than with std:: distributions,
// whose algorithms are implementation-defined.
class RandomStream {
public:
    explicit RandomStream(SeedSpec seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01();

    // Uniform on (0, 1].
    double uniform01_open_low() { return 1.0 - uniform01(); }

    // Uniform angle in (-pi, pi].
    double uniform_phase() { return kPi - 2.0 * kPi * uniform01(); }

    // Standard normal via Box-Muller, one spare cached.
    double normal();

    // Uniform integer in [0, n).
    std::uint64_t uniform_below(std::uint64_t n);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// A permutation of {0..d-1} together with its cycle decomposition,
// cycles sorted by decreasing length.
struct Permutation {
    std::vector<int> map;                     // k -> map[k]
    std::vector<std::vector<int>> cycles;

    int size() const { return static_cast<int>(map.size()); }
    std::vector<int> cycle_lengths() const;

    static Permutation from_map(std::vector<int> map);
    // Canonical permutation with the given cycle lengths: consecutive index
    // blocks, each block cyclically shifted.
    static Permutation from_cycle_lengths(const std::vector<int>& lengths);
};

// Draws alpha on the open unit disk with density (1 - |alpha|^2)^(s-1):
// |alpha|^2 = 1 - u^(1/s) with u uniform (inverse CDF of Beta(1, s)),
// phase uniform in (-pi, pi]. Throws on s <= 0.
Complex sample_alpha(RandomStream& stream, double s_exponent);

// GUE matrix with density exp(-(d/2) tr H^2): diagonal N(0, 1/d), off-diagonal
// real/imag parts N(0, 1/(2d)). Throws on d < 1.
Matrix sample_gue(RandomStream& stream, int d);

// Unbiased Fisher-Yates shuffle. Throws on d < 1.
Permutation sample_permutation(RandomStream& stream, int d);

}  // namespace sff
