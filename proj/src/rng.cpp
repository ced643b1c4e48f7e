#include "sff/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sff {

namespace {

// SplitMix64 avalanche step, used only to spread (master_seed, sample_index)
// into seed material for the generator.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(SeedSpec seed) {
    std::uint64_t state = seed.master_seed;
    splitmix64(state);
    state ^= 0xA0761D6478BD642Full * (seed.sample_index + 1);
    std::uint32_t words[8];
    for (int i = 0; i < 4; ++i) {
        std::uint64_t w = splitmix64(state);
        words[2 * i] = static_cast<std::uint32_t>(w);
        words[2 * i + 1] = static_cast<std::uint32_t>(w >> 32);
    }
    std::seed_seq seq(words, words + 8);
    gen_.seed(seq);
}

std::uint64_t RandomStream::next_u64() { return gen_(); }

double RandomStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double r = std::sqrt(-2.0 * std::log(uniform01_open_low()));
    double a = 2.0 * kPi * uniform01();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
    std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        std::uint64_t x = next_u64();
        if (x >= threshold) return x % n;
    }
}

std::vector<int> Permutation::cycle_lengths() const {
    std::vector<int> lengths;
    lengths.reserve(cycles.size());
    for (const auto& c : cycles) lengths.push_back(static_cast<int>(c.size()));
    return lengths;
}

Permutation Permutation::from_map(std::vector<int> map) {
    const int d = static_cast<int>(map.size());
    std::vector<char> hit(d, 0);
    for (int k : map) {
        if (k < 0 || k >= d || hit[k]) throw std::invalid_argument("permutation map is not a bijection");
        hit[k] = 1;
    }
    Permutation p;
    p.map = std::move(map);
    std::vector<char> seen(d, 0);
    for (int start = 0; start < d; ++start) {
        if (seen[start]) continue;
        std::vector<int> cycle;
        int k = start;
        while (!seen[k]) {
            seen[k] = 1;
            cycle.push_back(k);
            k = p.map[k];
        }
        p.cycles.push_back(std::move(cycle));
    }
    std::stable_sort(p.cycles.begin(), p.cycles.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return p;
}

Permutation Permutation::from_cycle_lengths(const std::vector<int>& lengths) {
    int d = 0;
    for (int len : lengths) {
        if (len < 1) throw std::invalid_argument("cycle lengths must be positive");
        d += len;
    }
    std::vector<int> map(d);
    int base = 0;
    for (int len : lengths) {
        for (int j = 0; j < len; ++j) map[base + j] = base + (j + 1) % len;
        base += len;
    }
    return from_map(std::move(map));
}

Complex sample_alpha(RandomStream& stream, double s_exponent) {
    if (!(s_exponent > 0.0)) throw std::invalid_argument("sample_alpha: s_exponent must be positive");
    double u = stream.uniform01_open_low();                 // (0, 1]
    double mag2 = 1.0 - std::pow(u, 1.0 / s_exponent);      // Beta(1, s), stays < 1
    double phi = stream.uniform_phase();
    double mag = std::sqrt(mag2);
    return Complex(mag * std::cos(phi), mag * std::sin(phi));
}

Matrix sample_gue(RandomStream& stream, int d) {
    if (d < 1) throw std::invalid_argument("sample_gue: d must be >= 1");
    const double sigma_diag = 1.0 / std::sqrt(static_cast<double>(d));
    const double sigma_off = 1.0 / std::sqrt(2.0 * d);
    Matrix h(d, d);
    for (int i = 0; i < d; ++i) {
        h(i, i) = Complex(sigma_diag * stream.normal(), 0.0);
        for (int j = i + 1; j < d; ++j) {
            Complex z(sigma_off * stream.normal(), sigma_off * stream.normal());
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

Permutation sample_permutation(RandomStream& stream, int d) {
    if (d < 1) throw std::invalid_argument("sample_permutation: d must be >= 1");
    std::vector<int> map(d);
    std::iota(map.begin(), map.end(), 0);
    for (int i = d - 1; i > 0; --i) {
        int j = static_cast<int>(stream.uniform_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(map[i], map[j]);
    }
    return Permutation::from_map(std::move(map));
}

}  // namespace sff
