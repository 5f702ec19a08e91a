#ifndef CTRLRANK_RNG_HPP
#define CTRLRANK_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace ctrlrank {

// splitmix64: used to derive independent per-task seeds from a master
// seed so that parallel and sequential execution see the same streams.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Unbiased draw in [0, n) by rejection. std::uniform_int_distribution is
// implementation-defined, so we roll our own for cross-platform output
// stability.
inline std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

/// Fisher-Yates shuffle with the portable bounded draw above.
template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded_rand(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    shuffle_vec(p, rng);
    return p;
}

} // namespace ctrlrank

#endif
