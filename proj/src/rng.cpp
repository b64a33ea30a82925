#include "lsmi/rng.hpp"

#include <cmath>

namespace lsmi {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(master_seed);
    for (std::uint64_t key : path) h = splitmix64(h ^ splitmix64(key));
    return h;
}

std::complex<double> RngStream::complex_normal(double variance) {
    const double scale = std::sqrt(variance / 2.0);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {scale * re, scale * im};
}

double RngStream::uniform() { return uniform_(engine_); }

}  // namespace lsmi
