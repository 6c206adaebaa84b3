#include "ccp/combinatorics.hpp"
#include "ccp/errors.hpp"
#include "ccp/property_suite.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

namespace ccp {

namespace {

struct Extremes {
    std::uint64_t points = 0;
    std::vector<double> max_value, min_value;
    std::vector<std::vector<double>> argmax, argmin;

    explicit Extremes(std::size_t rows)
        : max_value(rows, -std::numeric_limits<double>::infinity()),
          min_value(rows, std::numeric_limits<double>::infinity()), argmax(rows), argmin(rows) {}

    // Strict comparisons keep the first point found, so merging slices in
    // order reproduces a sequential scan.
    void merge(const Extremes& o) {
        points += o.points;
        for (std::size_t r = 0; r < max_value.size(); ++r) {
            if (o.max_value[r] > max_value[r]) {
                max_value[r] = o.max_value[r];
                argmax[r] = o.argmax[r];
            }
            if (o.min_value[r] < min_value[r]) {
                min_value[r] = o.min_value[r];
                argmin[r] = o.argmin[r];
            }
        }
    }
};

// Evaluates sum_i (1-p_i)^{E[T_j]} for j = 2..N at one simplex point.
class Objective {
public:
    explicit Objective(std::size_t N) : N_(N), mass_(std::size_t{1} << N), S_(N), E_(N + 1) {
        for (std::size_t j = 2; j <= N; ++j) {
            std::vector<double> c;
            for (std::size_t m = 0; m < j; ++m) {
                const double b = binomial(static_cast<long>(N - m - 1), static_cast<long>(N - j)).get_d();
                c.push_back(((j - 1 - m) % 2 == 0) ? b : -b);
            }
            coef_.push_back(std::move(c));
        }
    }

    void evaluate(const std::vector<double>& p, std::vector<double>& out) {
        const std::size_t full = (std::size_t{1} << N_) - 1;
        std::fill(S_.begin(), S_.end(), 0.0);
        S_[0] = 1.0;
        mass_[0] = 0.0;
        for (std::size_t mask = 1; mask < full; ++mask) {
            mass_[mask] = mass_[mask & (mask - 1)] + p[static_cast<std::size_t>(std::countr_zero(mask))];
            S_[static_cast<std::size_t>(std::popcount(mask))] += 1.0 / (1.0 - mass_[mask]);
        }
        for (std::size_t j = 2; j <= N_; ++j) {
            double e = 0.0;
            for (std::size_t m = 0; m < j; ++m) {
                e += coef_[j - 2][m] * S_[m];
            }
            E_[j] = e;
        }
        for (std::size_t j = 2; j <= N_; ++j) {
            double f = 0.0;
            for (std::size_t i = 0; i < N_; ++i) {
                f += std::exp(E_[j] * std::log1p(-p[i]));
            }
            out[j - 2] = f;
        }
    }

private:
    std::size_t N_;
    std::vector<double> mass_;
    std::vector<double> S_;
    std::vector<double> E_;
    std::vector<std::vector<double>> coef_;
};

struct Reference {
    std::size_t N;
    std::size_t j;
    std::optional<double> max;
    std::optional<double> min;
};

constexpr Reference kReferences[] = {
    {6, 2, 4.36348, 3.98245},  {6, 3, 3.44042, 3.02642}, {6, 4, 2.47332, 2.07605},
    {6, 5, 1.49181, 1.15416},  {6, 6, 0.509713, 0.33358}, {3, 3, std::nullopt, 0.312403},
};

} // namespace

Appendix14Result appendix14_search(std::size_t N, double step, double floor, unsigned threads) {
    if (N < 2 || N > 12) {
        throw ValidationError("appendix14_search: N must be in 2..12");
    }
    if (!(step > 0.0) || !(floor > 0.0)) {
        throw ValidationError("appendix14_search: step and floor must be positive");
    }
    const std::size_t free = N - 1;
    const std::size_t rows = N - 1;
    // Number of grid values per coordinate.
    const auto levels = static_cast<std::size_t>(std::floor((1.0 - floor) / step)) + 1;

    auto scan = [&](std::size_t first) {
        Extremes ex(rows);
        Objective objective(N);
        std::vector<double> p(N), values(rows);
        std::vector<std::size_t> idx(free, 0);
        idx[0] = first;
        // Odometer over coordinates 1..free-1, pruned by the simplex.
        auto coord = [&](std::size_t d) { return floor + static_cast<double>(idx[d]) * step; };
        while (true) {
            double sum = 0.0;
            for (std::size_t d = 0; d < free; ++d) {
                p[d] = coord(d);
                sum += p[d];
            }
            const double last = 1.0 - sum;
            if (last > 0.0) {
                p[N - 1] = last;
                objective.evaluate(p, values);
                ++ex.points;
                for (std::size_t r = 0; r < rows; ++r) {
                    if (values[r] > ex.max_value[r]) {
                        ex.max_value[r] = values[r];
                        ex.argmax[r] = p;
                    }
                    if (values[r] < ex.min_value[r]) {
                        ex.min_value[r] = values[r];
                        ex.argmin[r] = p;
                    }
                }
            }
            // Advance: increment the last coordinate; on overflow of the
            // simplex reset it and carry into the previous one.
            std::size_t d = free;
            while (true) {
                --d;
                if (d == 0) {
                    return ex;
                }
                ++idx[d];
                double s = 0.0;
                for (std::size_t e = 0; e <= d; ++e) {
                    s += coord(e);
                }
                s += static_cast<double>(free - 1 - d) * floor;
                if (s < 1.0) {
                    break;
                }
                idx[d] = 0;
            }
        }
    };

    std::size_t firsts = 0;
    while (floor + static_cast<double>(firsts) * step + static_cast<double>(free - 1) * floor < 1.0 &&
           firsts < levels) {
        ++firsts;
    }
    std::vector<Extremes> slices(firsts, Extremes(rows));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t f; (f = next.fetch_add(1)) < firsts;) {
            slices[f] = scan(f);
        }
    };
    unsigned count = threads ? threads : std::max(1U, std::thread::hardware_concurrency());
    count = static_cast<unsigned>(std::min<std::size_t>(count, firsts));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < count; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    Extremes total(rows);
    for (const auto& s : slices) {
        total.merge(s);
    }

    Appendix14Result result;
    result.N = N;
    result.step = step;
    result.floor = floor;
    result.points = total.points;
    for (std::size_t r = 0; r < rows; ++r) {
        Appendix14Row row;
        row.j = r + 2;
        row.max_value = total.max_value[r];
        row.argmax = total.argmax[r];
        row.min_value = total.min_value[r];
        row.argmin = total.argmin[r];
        const double jd = static_cast<double>(row.j);
        row.bound = static_cast<double>(N) - jd +
                    (jd - 1.0) * std::exp(-harmonic(static_cast<unsigned>(row.j - 1)).to_double());
        for (const auto& ref : kReferences) {
            if (ref.N == N && ref.j == row.j) {
                row.reference_max = ref.max;
                row.reference_min = ref.min;
            }
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

CheckReport appendix14_report(const Appendix14Result& result) {
    CheckReport report;
    report.name = "appendix14_table";
    report.notes = "grid step " + format_double(result.step) + ", floor " +
                   format_double(result.floor) + ", " + std::to_string(result.points) +
                   " points; published extrema within 1e-2, maxima below the bound";
    const Scalar tolerance = Scalar(Rational(1, 100));
    for (const auto& row : result.rows) {
        const std::string tag = "N=" + std::to_string(result.N) + ",j=" + std::to_string(row.j);
        if (row.reference_max) {
            report.add(make_witness("|max - published max|; " + tag,
                                    Scalar(std::abs(row.max_value - *row.reference_max)), tolerance,
                                    Relation::less_equal));
        }
        report.add(make_witness("max vs N-j+(j-1)exp(-H_(j-1)); " + tag, Scalar(row.max_value),
                                Scalar(row.bound), Relation::less_equal));
        if (row.reference_min) {
            report.add(make_witness("|min - published min|; " + tag,
                                    Scalar(std::abs(row.min_value - *row.reference_min)),
                                    tolerance, Relation::less_equal));
        }
    }
    return report;
}

CheckReport appendix14_table(std::size_t N, double grid_step) {
    return appendix14_report(appendix14_search(N, grid_step));
}

} // namespace ccp
