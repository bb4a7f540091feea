#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mdpc {

// SplitMix64 finalizer (Steele, Lea, Flood 2014; public-domain reference
// implementation). Used only to derive independent sub-seeds from a master
// seed, e.g. per-trial seeds in simulations or per-attempt seeds in rejection
// sampling. Pure integer arithmetic, identical on every platform.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index));
}

// Deterministic random stream. std::mt19937_64 is fully specified by the
// C++ standard, so identical seeds give identical streams on every platform.
// Bounded draws use rejection sampling instead of std::uniform_int_distribution,
// whose mapping is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform draw from [0, bound). bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x > limit);
        return x % bound;
    }

    double unit() {  // uniform in [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return unit() < p; }

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Uniform random permutation of [0, n).
    std::vector<std::uint32_t> permutation(std::uint32_t n) {
        std::vector<std::uint32_t> p(n);
        for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
        shuffle(p);
        return p;
    }

    // Uniform k-subset of [0, n), returned sorted. Partial Fisher-Yates.
    std::vector<std::uint32_t> subset(std::uint32_t n, std::uint32_t k);

private:
    std::mt19937_64 engine_;
};

}  // namespace mdpc
