#pragma once

#include <cstdint>
#include <vector>

#include "fqflats/errors.hpp"

namespace fqflats {

/// Deterministic counter-based random stream.
///
/// Draw number i from seed s is  mix64(s + (i+1) * 0x9e3779b97f4a7c15)  with
/// the 64-bit finalizer  x ^= x>>30; x *= 0xbf58476d1ce4e5b9; x ^= x>>27;
/// x *= 0x94d049bb133111eb; x ^= x>>31.  Bounded draws map a raw word w to
/// floor(w * n / 2^64).  Subsets come from a partial Fisher-Yates shuffle of
/// 0..n-1 whose first m entries are kept and sorted.  The same seed therefore
/// reproduces the same subsets in any implementation of this recipe.
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() noexcept {
        counter_ += 1;
        std::uint64_t x = seed_ + counter_ * 0x9e3779b97f4a7c15ULL;
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

    /// Uniform draw from [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) fail(errc::invalid_parameters, "empty draw range");
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    /// Uniform draw from [lo, hi].
    long long between(long long lo, long long hi) {
        if (lo > hi) fail(errc::invalid_parameters, "empty draw range");
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Sorted uniform m-subset of {0, .., n-1}, sampled without replacement.
    std::vector<int> subset(long long n, long long m);

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace fqflats
