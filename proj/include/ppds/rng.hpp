#pragma once

#include <cstdint>

#include "ppds/linalg.hpp"

namespace ppds {

/// Counter-based generator built on the SplitMix64 output function.
/// Substreams are cheap: every (seed, stream) pair yields an independent
/// sequence, and the same pair always reproduces the same bits on every
/// platform. Gaussians come from Box-Muller with no cached spare, so draws
/// map 1:1 onto counter positions.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double uniform();   // [0, 1)
    double gaussian();  // standard normal

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

Vector gaussian_vector(CounterRng& rng, std::size_t n);
DenseMatrix gaussian_matrix(CounterRng& rng, std::size_t rows, std::size_t cols);
Vector uniform_vector(CounterRng& rng, std::size_t n);
DenseMatrix uniform_matrix(CounterRng& rng, std::size_t rows, std::size_t cols);

}  // namespace ppds
