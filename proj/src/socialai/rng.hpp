#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace socialai {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded stream built on mt19937_64, whose output sequence is fixed by the
// standard. Range reduction is done here rather than through <random>
// distributions so that streams replay identically across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(splitmix64(seed)), seed_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
        std::uint64_t r = next();
        while (r >= limit) r = next();
        return lo + static_cast<int>(r % span);
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_int(0, static_cast<int>(n) - 1)); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

    // Independent child stream; the parent is not advanced.
    Rng fork(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 1))); }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace socialai
