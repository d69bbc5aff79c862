#include "ppds/rng.hpp"

#include <cmath>

namespace ppds {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kGolden) ^ (stream * kGolden + 0x632be59bd9b4e019ULL))) {}

std::uint64_t CounterRng::next_u64() { return mix64(key_ + (++counter_) * kGolden); }

double CounterRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::gaussian() {
    // u1 in (0, 1] keeps the log finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Vector gaussian_vector(CounterRng& rng, std::size_t n) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.gaussian();
    return v;
}

DenseMatrix gaussian_matrix(CounterRng& rng, std::size_t rows, std::size_t cols) {
    DenseMatrix M(rows, cols);
    for (double& x : M.data) x = rng.gaussian();
    return M;
}

Vector uniform_vector(CounterRng& rng, std::size_t n) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.uniform();
    return v;
}

DenseMatrix uniform_matrix(CounterRng& rng, std::size_t rows, std::size_t cols) {
    DenseMatrix M(rows, cols);
    for (double& x : M.data) x = rng.uniform();
    return M;
}

}  // namespace ppds
