#include "ccp/property_suite.hpp"

#include "ccp/ccp_core.hpp"
#include "ccp/combinatorics.hpp"
#include "ccp/errors.hpp"
#include "ccp/subset_sums.hpp"
#include "ccp/ws_lru.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace ccp {

namespace {

constexpr double kBoundaryTolerance = 1e-9;

Scalar spow(const Scalar& x, unsigned long e) {
    return x.is_exact() ? Scalar(pow_int(x.exact(), e)) : Scalar(pow_int(x.to_double(), e));
}

Scalar exact_int(const Integer& z) {
    return Scalar(Rational(z));
}

Scalar ratio(long a, long b) {
    Rational q(a, b);
    q.canonicalize();
    return Scalar(q);
}

// Records lhs REL rhs, or lhs == rhs when the input is uniform.
struct Recorder {
    CheckReport& report;
    bool boundary;

    void strict(const std::string& input, Scalar lhs, Scalar rhs, Relation rel) {
        if (boundary) {
            report.add(make_witness(input, std::move(lhs), std::move(rhs), Relation::equal,
                                    kBoundaryTolerance));
        } else {
            report.add(make_witness(input, std::move(lhs), std::move(rhs), rel));
        }
    }
};

template <class Check>
CheckReport guarded(const Popularity& pop, Check&& check) {
    CheckReport report = check(pop);
    if (!pop.is_exact() && report.count(Verdict::indeterminate) > 0) {
        CheckReport again = check(pop.to_exact());
        again.notes += (again.notes.empty() ? "" : "; ") +
                       std::string("re-evaluated exactly after a float margin below 1e-12");
        return again;
    }
    return report;
}

std::string mode_note(const Popularity& pop) {
    std::string s = pop.is_exact() ? "exact arithmetic" : "float arithmetic";
    if (pop.is_uniform()) {
        s += "; uniform input, strict relations checked as equalities";
    }
    return s;
}

Scalar power_sum(const Popularity& pop, unsigned long k) {
    Scalar s = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        s += spow(pop.prob(i), k);
    }
    return s;
}

} // namespace

CheckReport check_power_sum_bounds(const Popularity& pop, unsigned k_max) {
    if (k_max < 2) {
        throw ValidationError("check_power_sum_bounds: k_max must be at least 2");
    }
    return guarded(pop, [&](const Popularity& q) {
        CheckReport report{"power_sum_bounds", true, {}, mode_note(q)};
        Recorder rec{report, q.is_uniform()};
        const long N = static_cast<long>(q.size());
        for (unsigned k = 2; k <= k_max; ++k) {
            const Scalar nk = exact_int(pow_int(Rational(N), k - 1).get_num());
            Scalar inv = 0;
            for (std::size_t i = 0; i < q.size(); ++i) {
                inv += Scalar(1) / spow(q.prob(i), k);
            }
            rec.strict("sum p^k vs N^(1-k); k=" + std::to_string(k), power_sum(q, k),
                       Scalar(1) / nk, Relation::greater);
            rec.strict("sum p^-k vs N^(k+1); k=" + std::to_string(k), inv, nk * Scalar(N) * Scalar(N),
                       Relation::greater);
        }
        return report;
    });
}

CheckReport check_second_moment_bound(const Popularity& pop, unsigned k_max) {
    return guarded(pop, [&](const Popularity& q) {
        CheckReport report{"second_moment_bound", true, {}, mode_note(q)};
        Recorder rec{report, q.is_uniform()};
        const Scalar s2 = power_sum(q, 2);
        for (unsigned k = 3; k <= k_max; ++k) {
            rec.strict("sum p^k vs (sum p^2)^(k-1); k=" + std::to_string(k), power_sum(q, k),
                       spow(s2, k - 1), Relation::greater);
        }
        return report;
    });
}

CheckReport check_subset_reciprocal_bound(const Popularity& pop, std::size_t j, unsigned k_max) {
    const std::size_t N = pop.size();
    if (j < 1 || j >= N) {
        throw ValidationError("check_subset_reciprocal_bound: need 0 < j < N");
    }
    check_subset_capacity(N, j);
    return guarded(pop, [&](const Popularity& q) {
        CheckReport report{"subset_reciprocal_bound", true, {}, mode_note(q)};
        Recorder rec{report, q.is_uniform()};
        const auto sums = q.visit([&](auto p) {
            using T = typename decltype(p)::value_type;
            Accumulator<T> comp, recip;
            std::vector<Accumulator<T>> pw(k_max + 1);
            detail::for_each_subset_mass(p, j, [&](const T& mass) {
                comp.add(T(T(1) / (T(1) - mass)));
                recip.add(T(T(1) / mass));
                T power = mass * mass;
                for (unsigned k = 2; k <= k_max; ++k) {
                    pw[k].add(power);
                    power *= mass;
                }
            });
            std::vector<Scalar> out{Scalar(comp.value()), Scalar(recip.value())};
            for (unsigned k = 2; k <= k_max; ++k) {
                out.emplace_back(pw[k].value());
            }
            return out;
        });
        const long n = static_cast<long>(N);
        const long jj = static_cast<long>(j);
        const Scalar c = exact_int(binomial(n, jj));
        const std::string tag = "; j=" + std::to_string(j);
        rec.strict("sum 1/(1-P_J) vs C(N,j) N/(N-j)" + tag, sums[0], c * ratio(n, n - jj),
                   Relation::greater);
        rec.strict("sum 1/P_J vs C(N,j) N/j" + tag, sums[1], c * ratio(n, jj), Relation::greater);
        for (unsigned k = 2; k <= k_max; ++k) {
            rec.strict("sum P_J^k vs C(N,j)(j/N)^k" + tag + ",k=" + std::to_string(k), sums[k],
                       c * spow(ratio(jj, n), k), Relation::greater);
        }
        return report;
    });
}

CheckReport check_product_lemmas(const Popularity& pop) {
    return guarded(pop, [&](const Popularity& q) {
        CheckReport report{"product_lemmas", true, {}, mode_note(q)};
        Recorder rec{report, q.is_uniform()};
        const std::size_t N = q.size();
        const long n = static_cast<long>(N);

        Scalar prod = 1;
        // Elementary symmetric polynomials e_0..e_N of the probabilities.
        std::vector<Scalar> e(N + 1, Scalar(0));
        e[0] = 1;
        for (std::size_t i = 0; i < N; ++i) {
            const Scalar p = q.prob(i);
            prod *= Scalar(n) * p;
            for (std::size_t m = i + 1; m >= 1; --m) {
                e[m] += e[m - 1] * p;
            }
        }
        rec.strict("prod N p_i vs 1", prod, Scalar(1), Relation::less);
        for (std::size_t m = 2; m <= N; ++m) {
            rec.strict("e_n(p) vs C(N,n)/N^n; n=" + std::to_string(m), e[m],
                       exact_int(binomial(n, static_cast<long>(m))) /
                           exact_int(pow_int(Rational(n), m).get_num()),
                       Relation::less);
        }
        if (N >= 3) {
            const Scalar lhs = Scalar(2) * (power_sum(q, 3) - ratio(1, n * n));
            const Scalar rhs = Scalar(3) * (power_sum(q, 2) - ratio(1, n));
            rec.strict("2 sum(p^3 - N^-3) vs 3 sum(p^2 - N^-2)", lhs, rhs, Relation::less);
        }
        return report;
    });
}

CheckReport check_el_extremality(const Popularity& pop, std::size_t n_max, unsigned k_max) {
    const std::size_t N = pop.size();
    if (n_max < 1 || n_max > N) {
        throw ValidationError("check_el_extremality: n_max outside 1..N");
    }
    return guarded(pop, [&](const Popularity& q) {
        CheckReport report{"el_extremality", true, {}, mode_note(q)};
        Recorder rec{report, q.is_uniform()};
        const Popularity el = Popularity::uniform(N);

        for (std::size_t n = 2; n <= n_max; ++n) {
            rec.strict("(a) E[T_n] vs N(H_N-H_(N-n)); n=" + std::to_string(n),
                       t_expectation(q, n), t_expectation_el(N, n), Relation::greater);
        }
        for (std::size_t n = 2; n <= n_max; ++n) {
            if (k_max < n) {
                continue;
            }
            const DistributionTable mine = t_distribution(q, n, k_max);
            const DistributionTable ref = t_distribution(el, n, k_max);
            for (unsigned k = static_cast<unsigned>(n); k <= k_max; ++k) {
                rec.strict("(b) Pr[T_n<=k] vs EL; n=" + std::to_string(n) + ",k=" + std::to_string(k),
                           mine.cdf_at(k), ref.cdf_at(k), Relation::less);
            }
        }
        for (unsigned k = 2; k <= k_max; ++k) {
            rec.strict("(c) E[W_k] vs EL; k=" + std::to_string(k), w_expectation(q, k),
                       w_expectation(el, k), Relation::less);
        }
        const Scalar sign = (N % 2 == 0) ? Scalar(1) : Scalar(-1);
        for (unsigned k = static_cast<unsigned>(N); k <= k_max; ++k) {
            rec.strict("(d) (-1)^N R_N^k vs EL; k=" + std::to_string(k),
                       sign * r_value(q, k).value, sign * r_value(el, k).value, Relation::less);
        }
        return report;
    });
}

CheckReport check_duration_detection(const Popularity& pop) {
    return guarded(pop, [&](const Popularity& q) {
        CheckReport report{"duration_detection", true, {}, mode_note(q)};
        const std::size_t N = q.size();
        const long n = static_cast<long>(N);
        Scalar odds = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const Scalar p = q.prob(i);
            odds += p / (Scalar(1) - p);
        }
        const Scalar duration = Scalar(1) / (Scalar(n) * odds);
        const Scalar detection = (Scalar(1) - power_sum(q, 2)) / Scalar(n);
        if (!q.is_uniform()) {
            report.add(make_witness("duration slope vs detection slope at x=1+", duration, detection,
                                    Relation::less));
            return report;
        }
        const Scalar slope = ratio(n - 1, n * n);
        report.add(make_witness("duration slope vs (N-1)/N^2", duration, slope, Relation::equal,
                                kBoundaryTolerance));
        report.add(make_witness("detection slope vs (N-1)/N^2", detection, slope, Relation::equal,
                                kBoundaryTolerance));
        const double base = 1.0 - 1.0 / static_cast<double>(N);
        for (std::size_t m = 0; m <= N; ++m) {
            const Scalar e = t_expectation_el(N, m);
            // Integer exponents (n = 0, 1 and a few others) hit the bound
            // exactly and are evaluated in rationals.
            Scalar lhs;
            if (e.is_integer()) {
                lhs = Scalar(1) - spow(Scalar(1) - ratio(1, n), e.exact().get_num().get_ui());
            } else {
                lhs = Scalar(-std::expm1(e.to_double() * std::log(base)));
            }
            report.add(make_witness("1-(1-1/N)^(N(H_N-H_(N-n))) vs n/N; n=" + std::to_string(m),
                                    lhs, ratio(static_cast<long>(m), n), Relation::less_equal));
        }
        return report;
    });
}

CheckReport check_ws_sandwich(const Popularity& pop) {
    CheckReport report{"ws_sandwich", true, {}, pop.is_exact() ? "float evaluation of WS at exact E[T_j]"
                                                               : "float arithmetic"};
    const std::size_t N = pop.size();
    const WsCurve curve{pop, WsBase::exact_base};
    for (std::size_t j = 2; j <= N; ++j) {
        const double e = t_expectation(pop, j).to_double();
        const double ws = working_set(curve, e);
        const double jd = static_cast<double>(j);
        const double h = harmonic(static_cast<unsigned>(j - 1)).to_double();
        const std::string tag = "; j=" + std::to_string(j);
        // Above j is possible when j < N (the grid minima dip below N - j),
        // so the upper side is asserted for the complete collection only.
        if (j == N) {
            report.add(make_witness("WS(E[T_j]) vs j" + tag, Scalar(ws),
                                    Scalar(static_cast<long>(j)), Relation::less));
        }
        report.add(make_witness("WS(E[T_j]) vs j-(j-1)exp(-H_(j-1))" + tag, Scalar(ws),
                                Scalar(jd - (jd - 1.0) * std::exp(-h)), Relation::greater));
    }
    return report;
}

std::vector<CdfAtExpectation> cdf_at_expectation(std::size_t N, const std::vector<double>& a_list) {
    std::vector<CdfAtExpectation> out;
    for (double a : a_list) {
        if (a < 0.0) {
            throw ValidationError("cdf_at_expectation: skewness must be nonnegative");
        }
        CdfAtExpectation row;
        row.a = a;
        if (a == 0.0) {
            row.expectation = t_expectation_el(N, N).to_double();
            row.cdf = el_cdf_continuous(static_cast<unsigned>(N), row.expectation);
        } else {
            const Scalar sa = (a == std::floor(a) && a < 64)
                                  ? Scalar(Rational(static_cast<long>(a)))
                                  : Scalar(a);
            const Popularity pop = Popularity::power_law(N, sa);
            row.expectation = t_expectation(pop, N).to_double();
            row.cdf = t_cdf_complete_real(pop, row.expectation);
        }
        out.push_back(row);
    }
    return out;
}

CheckReport check_cdf_at_expectation(std::size_t N, const std::vector<double>& a_list) {
    CheckReport report{"cdf_at_expectation", true, {},
                       "empirical band [0.55, 0.65]; an observation, not a theorem"};
    for (const auto& row : cdf_at_expectation(N, a_list)) {
        const std::string tag = "N=" + std::to_string(N) + ",a=" + format_double(row.a) +
                                ",E[T_N]=" + format_double(row.expectation);
        report.add(make_witness("Pr[T_N<=E[T_N]] vs 0.55; " + tag, Scalar(row.cdf), ratio(55, 100),
                                Relation::greater_equal));
        report.add(make_witness("Pr[T_N<=E[T_N]] vs 0.65; " + tag, Scalar(row.cdf), ratio(65, 100),
                                Relation::less_equal));
    }
    return report;
}

std::vector<CheckReport> run_suite(const Popularity& pop, const SuiteOptions& options) {
    const std::size_t N = pop.size();
    const std::size_t n_max = options.n_max ? options.n_max : N;
    const unsigned k_max = options.k_max ? options.k_max : static_cast<unsigned>(N + 4);
    std::vector<CheckReport> reports;
    reports.push_back(check_power_sum_bounds(pop, k_max));
    reports.push_back(check_second_moment_bound(pop, k_max));
    for (std::size_t j = 1; j < N; ++j) {
        CheckReport r = check_subset_reciprocal_bound(pop, j);
        r.name += "_j" + std::to_string(j);
        reports.push_back(std::move(r));
    }
    reports.push_back(check_product_lemmas(pop));
    reports.push_back(check_el_extremality(pop, n_max, k_max));
    reports.push_back(check_duration_detection(pop));
    reports.push_back(check_ws_sandwich(pop));
    std::stable_sort(reports.begin(), reports.end(),
                     [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
    return reports;
}

} // namespace ccp
