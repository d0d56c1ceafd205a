#ifndef NETEVOLVE_RNG_HPP
#define NETEVOLVE_RNG_HPP

#include <cstdint>
#include <random>

namespace netevolve {

// splitmix64 finalizer, used to turn (master seed, stream tag, indices)
// tuples into independent engine seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stream tags keep the seed spaces of unrelated draw sequences disjoint.
namespace streams {
inline constexpr std::uint64_t network = 1;   // seed-network placement
inline constexpr std::uint64_t init = 2;      // initial population mutation pass
inline constexpr std::uint64_t eval = 3;      // per-member fitness evaluation
inline constexpr std::uint64_t mutate = 4;    // per-child mutation
inline constexpr std::uint64_t env = 5;       // per-parent environment step
inline constexpr std::uint64_t scenario = 6;  // per (cell, replicate) run seed
inline constexpr std::uint64_t record = 7;    // per-generation record metrics
}  // namespace streams

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ stream);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    return h;
}

// Seeded generator with hand-mapped distributions. std::mt19937_64 output is
// pinned by the standard and the mappings below avoid the
// implementation-defined std::*_distribution algorithms, so a seed produces
// the same draw sequence on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double next_real(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform in [0, bound), bound >= 1. Rejection keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform integer in [lo, hi] inclusive.
    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next_below(
                        static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::mt19937_64 gen_;
};

}  // namespace netevolve

#endif  // NETEVOLVE_RNG_HPP
