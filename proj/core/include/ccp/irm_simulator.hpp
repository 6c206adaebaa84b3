#pragma once

#include "ccp/popularity.hpp"

#include <cstddef>
#include <cstdint>
#include <list>
#include <map>
#include <random>
#include <vector>

namespace ccp {

struct SimConfig {
    std::uint64_t seed = 1;
    std::uint64_t replications = 10000;
    /// LRU only: total references per replication, warmup included.
    /// Zero selects warmup + 100000.
    std::uint64_t stream_length = 0;
    /// LRU only: references ignored before counting misses. Zero selects
    /// 10 N H_N.
    std::uint64_t warmup = 0;
    /// Worker threads; zero uses the hardware concurrency. Results do not
    /// depend on this value.
    unsigned threads = 0;
    /// Record the empirical pmf of the per-replication observable.
    bool collect_pmf = false;
};

struct SimReport {
    double estimate = 0.0;
    double sample_variance = 0.0;
    std::uint64_t replications = 0;
    double ci95_halfwidth = 0.0;
    /// Observed value -> count, filled when SimConfig::collect_pmf is set.
    std::map<std::uint64_t, std::uint64_t> pmf;
};

/// 64-bit generator for replication `index` of the stream keyed by `seed`.
/// Seeds are derived with SplitMix64 so substreams are independent of how
/// replications are scheduled.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

/// Inverse-CDF sampler over a popularity.
class ItemSampler {
public:
    explicit ItemSampler(const Popularity& pop);
    std::size_t operator()(std::mt19937_64& gen) const;
    std::size_t size() const noexcept { return cdf_.size(); }

private:
    std::vector<double> cdf_;
};

/// Move-to-front list of bounded capacity.
class LruCache {
public:
    LruCache(std::size_t universe, std::size_t capacity);

    /// References `item`; returns true on a hit. On a miss the item is
    /// inserted at the front and the tail is evicted when full.
    bool access(std::size_t item);

    std::size_t size() const noexcept { return order_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    bool contains(std::size_t item) const { return present_.at(item); }
    /// 1-based position from the front, or 0 when absent. Linear time.
    std::size_t depth(std::size_t item) const;

private:
    std::size_t capacity_;
    std::list<std::size_t> order_;
    std::vector<std::list<std::size_t>::iterator> where_;
    std::vector<bool> present_;
};

/// Draws until n distinct items are seen; estimates E[T_n].
SimReport sim_waiting_time(const Popularity& pop, std::size_t n, const SimConfig& cfg);

/// Counts distinct items in k draws; estimates E[W_k].
SimReport sim_working_set(const Popularity& pop, std::uint64_t k, const SimConfig& cfg);

/// Steady-state miss rate of an LRU cache of the given size.
SimReport sim_lru_miss_rate(const Popularity& pop, std::size_t cache_size, const SimConfig& cfg);

} // namespace ccp
