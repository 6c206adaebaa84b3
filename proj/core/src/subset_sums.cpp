#include "ccp/subset_sums.hpp"

#include "ccp/combinatorics.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace ccp {

namespace {

// CCP_MAX_SUBSETS overrides the default cap; malformed values are ignored.
std::uint64_t initial_limit() {
    const char* env = std::getenv("CCP_MAX_SUBSETS");
    if (env == nullptr || *env == '\0') {
        return kDefaultMaxSubsets;
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    return (end != nullptr && *end == '\0' && v > 0) ? v : kDefaultMaxSubsets;
}

std::atomic<std::uint64_t> g_max_subsets{initial_limit()};

} // namespace

std::uint64_t max_subsets() {
    return g_max_subsets.load(std::memory_order_relaxed);
}

void set_max_subsets(std::uint64_t limit) {
    g_max_subsets.store(limit, std::memory_order_relaxed);
}

void check_subset_capacity(std::size_t N, std::size_t j) {
    const Integer count = binomial(static_cast<long>(N), static_cast<long>(j));
    const std::uint64_t limit = max_subsets();
    if (count > Integer(std::to_string(limit))) {
        const std::uint64_t requested =
            count.fits_ulong_p() ? count.get_ui() : std::uint64_t(-1);
        throw CapacityError("enumerating C(" + std::to_string(N) + "," + std::to_string(j) +
                                ") = " + count.get_str() + " subsets exceeds the limit of " +
                                std::to_string(limit),
                            requested, limit);
    }
}

Scalar subset_power_sum(const Popularity& pop, std::size_t j, unsigned k) {
    if (j > pop.size()) {
        throw ValidationError("subset size exceeds support size");
    }
    return pop.visit([&](auto p) -> Scalar {
        using T = typename decltype(p)::value_type;
        Accumulator<T> acc;
        detail::for_each_subset_mass(p, j, [&](const T& mass) { acc.add(pow_int(mass, k)); });
        return Scalar(acc.value());
    });
}

} // namespace ccp
