#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "linalg.hpp"

namespace delaydim {

/// SplitMix64 finalizer; used to turn (seed, stream...) tuples into independent engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Derives the seed of an independent stream. Streams depend only on their
/// indices, never on draw order, so parallel consumers reproduce serial output.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t s : stream) h = splitmix64(h ^ splitmix64(s + 0x632BE59BD9B4E019ull));
    return h;
}

using Engine = std::mt19937_64;

inline CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Engine& engine) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(engine);
            const double im = normal(engine);
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    return g;
}

}  // namespace delaydim
