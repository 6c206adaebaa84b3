#pragma once

// Enumeration of subset probabilities P_J = sum_{i in J} p_i over all
// subsets of a fixed size, in lexicographic order with incremental updates.
// Every alternating-sum formula in the library is built on these sums.

#include "ccp/errors.hpp"
#include "ccp/popularity.hpp"
#include "ccp/scalar.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ccp {

inline constexpr std::uint64_t kDefaultMaxSubsets = 10'000'000;

/// Largest number of size-j subsets a single enumeration may visit. Starts at
/// kDefaultMaxSubsets unless the CCP_MAX_SUBSETS environment variable is set.
std::uint64_t max_subsets();
void set_max_subsets(std::uint64_t limit);

/// Throws CapacityError when C(N, j) exceeds max_subsets().
void check_subset_capacity(std::size_t N, std::size_t j);

namespace detail {

/// Calls f(P_J) for every size-j subset J of {0..N-1}, lexicographically.
template <class T, class F>
void for_each_subset_mass(std::span<const T> p, std::size_t j, F&& f) {
    const std::size_t N = p.size();
    if (j > N) {
        return;
    }
    check_subset_capacity(N, j);
    if (j == 0) {
        f(T(0));
        return;
    }
    std::vector<std::size_t> idx(j);
    std::vector<T> prefix(j + 1, T(0));
    for (std::size_t d = 0; d < j; ++d) {
        idx[d] = d;
        prefix[d + 1] = prefix[d] + p[d];
    }
    while (true) {
        f(prefix[j]);
        std::size_t d = j;
        while (d > 0 && idx[d - 1] == N - j + d - 1) {
            --d;
        }
        if (d == 0) {
            break;
        }
        --d;
        ++idx[d];
        prefix[d + 1] = prefix[d] + p[idx[d]];
        for (std::size_t e = d + 1; e < j; ++e) {
            idx[e] = idx[e - 1] + 1;
            prefix[e + 1] = prefix[e] + p[idx[e]];
        }
    }
}

/// sums[j][k] = sum_{|J|=j} P_J^k for 0 <= j <= j_max, 0 <= k <= k_max.
template <class T>
std::vector<std::vector<T>> power_sum_table(std::span<const T> p, std::size_t j_max,
                                            unsigned k_max) {
    std::vector<std::vector<T>> out(j_max + 1);
    for (std::size_t j = 0; j <= j_max; ++j) {
        std::vector<Accumulator<T>> acc(k_max + 1);
        for_each_subset_mass(p, j, [&](const T& mass) {
            T pw(1);
            for (unsigned k = 0; k <= k_max; ++k) {
                acc[k].add(pw);
                if (k < k_max) {
                    pw *= mass;
                }
            }
        });
        out[j].reserve(k_max + 1);
        for (auto& a : acc) {
            out[j].push_back(a.value());
        }
    }
    return out;
}

/// sums[j] = sum_{|J|=j} f(P_J) for 0 <= j <= j_max.
template <class T, class F>
std::vector<T> mapped_subset_sums(std::span<const T> p, std::size_t j_max, F&& f) {
    std::vector<T> out;
    out.reserve(j_max + 1);
    for (std::size_t j = 0; j <= j_max; ++j) {
        Accumulator<T> acc;
        for_each_subset_mass(p, j, [&](const T& mass) { acc.add(f(mass)); });
        out.push_back(acc.value());
    }
    return out;
}

} // namespace detail

/// sum_{|J|=j} P_J^k. The empty set contributes 0^k (1 at k = 0).
Scalar subset_power_sum(const Popularity& pop, std::size_t j, unsigned k);

} // namespace ccp
