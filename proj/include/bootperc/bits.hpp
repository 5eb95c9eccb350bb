// Low-level bit and combinatorics helpers shared across the library.
#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace bootperc {

inline int popcount64(std::uint64_t x) { return std::popcount(x); }

// SplitMix64 finalizer. Used both as a hash mixer and as the stream
// derivation step of the counter-based uniform generator.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Binomial coefficients C(n,k) for 0 <= k <= n <= 64, saturating at
// UINT64_MAX on overflow (only relevant above the 63-bit encodings we allow).
class BinomialTable {
public:
    static const BinomialTable& instance() {
        static const BinomialTable table;
        return table;
    }

    std::uint64_t at(int n, int k) const {
        if (k < 0 || n < 0 || k > n) return 0;
        return c_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }

private:
    BinomialTable() {
        for (int n = 0; n <= kMax; ++n) {
            c_[n][0] = 1;
            for (int k = 1; k <= n; ++k) {
                std::uint64_t a = c_[n - 1][k - 1];
                std::uint64_t b = (k <= n - 1) ? c_[n - 1][k] : 0;
                std::uint64_t s = a + b;
                if (s < a) s = UINT64_MAX;  // saturate
                c_[n][k] = s;
            }
        }
    }

    static constexpr int kMax = 64;
    std::array<std::array<std::uint64_t, kMax + 1>, kMax + 1> c_{};
};

inline std::uint64_t binomial(int n, int k) { return BinomialTable::instance().at(n, k); }

// Rank of a fixed-popcount mask among all width-bit masks with the same
// popcount, in ascending numeric order (colexicographic on bit positions).
inline std::uint64_t subset_rank(std::uint64_t mask) {
    std::uint64_t rank = 0;
    int i = 1;
    while (mask != 0) {
        int p = std::countr_zero(mask);
        rank += binomial(p, i);
        mask &= mask - 1;
        ++i;
    }
    return rank;
}

// Inverse of subset_rank for popcount-k masks.
inline std::uint64_t subset_unrank(std::uint64_t rank, int k) {
    std::uint64_t mask = 0;
    for (int i = k; i >= 1; --i) {
        int p = i - 1;
        while (binomial(p + 1, i) <= rank) ++p;
        mask |= (1ULL << p);
        rank -= binomial(p, i);
    }
    return mask;
}

}  // namespace bootperc
