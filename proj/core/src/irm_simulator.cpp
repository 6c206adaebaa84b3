#include "ccp/irm_simulator.hpp"

#include "ccp/combinatorics.hpp"
#include "ccp/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace ccp {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Welford moments for a fixed block of replications; blocks are merged in
// index order so the totals do not depend on thread scheduling.
struct Moments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::map<std::uint64_t, std::uint64_t> pmf;

    void push(double x) {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.count == 0) {
            return;
        }
        const double n = static_cast<double>(count + o.count);
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.count) / n;
        m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / n;
        count += o.count;
        for (const auto& [v, c] : o.pmf) {
            pmf[v] += c;
        }
    }
};

constexpr std::uint64_t kBlock = 256;

template <class Replicate>
SimReport run_replications(const SimConfig& cfg, Replicate&& replicate) {
    if (cfg.replications < 1) {
        throw ValidationError("simulation needs at least one replication");
    }
    const std::uint64_t blocks = (cfg.replications + kBlock - 1) / kBlock;
    std::vector<Moments> partial(blocks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;) {
            const std::uint64_t end = std::min(cfg.replications, (b + 1) * kBlock);
            for (std::uint64_t r = b * kBlock; r < end; ++r) {
                auto gen = substream(cfg.seed, r);
                const double x = replicate(gen);
                partial[b].push(x);
                if (cfg.collect_pmf) {
                    ++partial[b].pmf[static_cast<std::uint64_t>(x)];
                }
            }
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }

    Moments total;
    for (const auto& m : partial) {
        total.merge(m);
    }
    SimReport report;
    report.replications = total.count;
    report.estimate = total.mean;
    report.sample_variance =
        total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
    report.ci95_halfwidth =
        1.96 * std::sqrt(report.sample_variance / static_cast<double>(total.count));
    report.pmf = std::move(total.pmf);
    return report;
}

} // namespace

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed;
    const std::uint64_t a = splitmix64(state);
    state = a ^ (index * 0xD1B54A32D192ED03ULL);
    const std::uint64_t b = splitmix64(state);
    const std::uint64_t c = splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    return std::mt19937_64(seq);
}

ItemSampler::ItemSampler(const Popularity& pop) {
    double acc = 0.0;
    for (double p : pop.values()) {
        acc += p;
        cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
}

std::size_t ItemSampler::operator()(std::mt19937_64& gen) const {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

LruCache::LruCache(std::size_t universe, std::size_t capacity)
    : capacity_(capacity), where_(universe), present_(universe, false) {
    if (capacity < 1) {
        throw ValidationError("LRU capacity must be at least 1");
    }
}

bool LruCache::access(std::size_t item) {
    if (present_.at(item)) {
        order_.splice(order_.begin(), order_, where_[item]);
        return true;
    }
    if (order_.size() == capacity_) {
        present_[order_.back()] = false;
        order_.pop_back();
    }
    order_.push_front(item);
    where_[item] = order_.begin();
    present_[item] = true;
    return false;
}

std::size_t LruCache::depth(std::size_t item) const {
    if (!present_.at(item)) {
        return 0;
    }
    return static_cast<std::size_t>(std::distance(order_.begin(),
                                                  std::list<std::size_t>::const_iterator(where_[item]))) +
           1;
}

SimReport sim_waiting_time(const Popularity& pop, std::size_t n, const SimConfig& cfg) {
    const std::size_t N = pop.size();
    if (n < 1 || n > N) {
        throw ValidationError("sim_waiting_time: n outside 1..N");
    }
    const ItemSampler sample(pop);
    return run_replications(cfg, [&](std::mt19937_64& gen) {
        std::vector<bool> seen(N, false);
        std::size_t distinct = 0;
        std::uint64_t draws = 0;
        while (distinct < n) {
            const std::size_t i = sample(gen);
            ++draws;
            if (!seen[i]) {
                seen[i] = true;
                ++distinct;
            }
        }
        return static_cast<double>(draws);
    });
}

SimReport sim_working_set(const Popularity& pop, std::uint64_t k, const SimConfig& cfg) {
    if (k < 1) {
        throw ValidationError("sim_working_set: k must be at least 1");
    }
    const std::size_t N = pop.size();
    const ItemSampler sample(pop);
    return run_replications(cfg, [&](std::mt19937_64& gen) {
        std::vector<bool> seen(N, false);
        std::size_t distinct = 0;
        for (std::uint64_t d = 0; d < k; ++d) {
            const std::size_t i = sample(gen);
            if (!seen[i]) {
                seen[i] = true;
                ++distinct;
            }
        }
        return static_cast<double>(distinct);
    });
}

SimReport sim_lru_miss_rate(const Popularity& pop, std::size_t cache_size, const SimConfig& cfg) {
    const std::size_t N = pop.size();
    if (cache_size < 1 || cache_size >= N) {
        throw ValidationError("sim_lru_miss_rate: cache size outside 1..N-1");
    }
    const std::uint64_t warmup =
        cfg.warmup ? cfg.warmup
                   : static_cast<std::uint64_t>(
                         std::ceil(10.0 * static_cast<double>(N) *
                                   harmonic(static_cast<unsigned>(N)).to_double()));
    const std::uint64_t length = cfg.stream_length ? cfg.stream_length : warmup + 100000;
    if (warmup >= length) {
        throw ValidationError("sim_lru_miss_rate: warmup " + std::to_string(warmup) +
                              " must be shorter than the stream length " + std::to_string(length));
    }
    if (cfg.collect_pmf) {
        throw ValidationError("sim_lru_miss_rate: pmf collection is not meaningful for miss rates");
    }
    const ItemSampler sample(pop);
    return run_replications(cfg, [&](std::mt19937_64& gen) {
        LruCache cache(N, cache_size);
        for (std::uint64_t r = 0; r < warmup; ++r) {
            cache.access(sample(gen));
        }
        std::uint64_t misses = 0;
        for (std::uint64_t r = warmup; r < length; ++r) {
            misses += cache.access(sample(gen)) ? 0 : 1;
        }
        return static_cast<double>(misses) / static_cast<double>(length - warmup);
    });
}

} // namespace ccp
