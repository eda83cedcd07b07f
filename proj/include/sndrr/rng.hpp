#ifndef SNDRR_RNG_HPP
#define SNDRR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace sndrr {

// Seeded random source with explicit draw routines. The std::* distributions
// are implementation-defined, so every draw here is spelled out to keep
// generated instances bit-identical across platforms and library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
    int uniform_int(int lo, int hi) {
        if (lo >= hi) return lo;
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span);
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return lo + static_cast<int>(r % span);
    }

    // Uniform real in [lo, hi).
    double uniform_real(double lo, double hi) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    // Box-Muller without caching the second deviate, so the draw count per
    // call is fixed and replay stays exact.
    double normal(double mean, double stddev) {
        double u1;
        do {
            u1 = uniform_real(0.0, 1.0);
        } while (u1 <= 0.0);
        const double u2 = uniform_real(0.0, 1.0);
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
        return mean + stddev * z;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_int(0, static_cast<int>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from {0, ..., n-1}, in random order.
    std::vector<int> sample_without_replacement(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        shuffle(pool);
        pool.resize(static_cast<std::size_t>(k));
        return pool;
    }

private:
    std::mt19937_64 engine_;
};

// Round half away from zero, to an integer value.
inline int round_half_away(double x) { return static_cast<int>(std::llround(x)); }

}  // namespace sndrr

#endif  // SNDRR_RNG_HPP
