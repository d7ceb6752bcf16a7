#include "fqflats/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace fqflats {

std::vector<int> SampleStream::subset(long long n, long long m) {
    if (n < 0 || m < 0 || m > n)
        fail(errc::invalid_parameters, "subset size " + std::to_string(m) +
                                           " outside population of " + std::to_string(n));
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (long long i = 0; i < m; ++i) {
        const long long j = i + static_cast<long long>(below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(m));
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace fqflats
