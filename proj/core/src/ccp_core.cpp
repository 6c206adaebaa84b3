#include "ccp/ccp_core.hpp"

#include "ccp/combinatorics.hpp"
#include "ccp/errors.hpp"
#include "ccp/subset_sums.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <string>

namespace ccp {

namespace {

template <class T>
T from_integer(const Integer& z) {
    if constexpr (std::is_same_v<T, double>) {
        return z.get_d();
    } else {
        return Rational(z);
    }
}

// (-1)^e C(a, b) as T; zero outside the binomial's support.
template <class T>
T signed_binomial(long e, long a, long b) {
    if (a < 0) {
        return T(0);
    }
    T c = from_integer<T>(binomial(a, b));
    return (e % 2 == 0) ? c : T(-c);
}

constexpr double kClampFloor = -1e-9;

// Float pdf entries may come out slightly negative from cancellation.
// Tiny negatives are clamped; anything lower is a bug.
template <class T>
T vet_probability(T v, std::size_t& clamped, const char* what) {
    if constexpr (std::is_same_v<T, double>) {
        if (v < 0.0) {
            if (v >= kClampFloor) {
                ++clamped;
                return 0.0;
            }
            throw NumericError(std::string(what) + " evaluated to " + format_double(v) +
                               " in float mode; use exact mode for this input");
        }
    } else {
        if (sgn(v) < 0) {
            throw NumericError(std::string(what) + " evaluated to negative " + v.get_str());
        }
    }
    return v;
}

void require_collection_size(const Popularity& pop, std::size_t n) {
    if (n < 1 || n > pop.size()) {
        throw ValidationError("collection size n=" + std::to_string(n) + " outside 1.." +
                              std::to_string(pop.size()));
    }
}

template <class T>
DistributionTable t_distribution_kernel(std::span<const T> p, std::size_t n, unsigned k_max) {
    const std::size_t N = p.size();
    // pw[j][k] = sum_{|J|=j} P_J^k, drop[j][k] = sum_{|J|=j} P_J^{k-1}(1-P_J)
    std::vector<std::vector<T>> pw(n), drop(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Accumulator<T>> pw_acc(k_max + 1);
        std::vector<Accumulator<T>> drop_acc(k_max + 1);
        detail::for_each_subset_mass(p, j, [&](const T& mass) {
            const T rest = T(1) - mass;
            T power(1);
            for (unsigned k = 0; k <= k_max; ++k) {
                pw_acc[k].add(power);
                if (k < k_max) {
                    drop_acc[k + 1].add(T(power * rest));
                    power *= mass;
                }
            }
        });
        for (unsigned k = 0; k <= k_max; ++k) {
            pw[j].push_back(pw_acc[k].value());
            drop[j].push_back(drop_acc[k].value());
        }
    }

    DistributionTable table;
    table.variable = DistributionTable::Variable::waiting_time;
    table.fixed = n;
    table.first_index = 1;
    for (unsigned k = 1; k <= k_max; ++k) {
        Accumulator<T> pdf, ccdf;
        for (std::size_t j = 0; j < n; ++j) {
            const T coef = signed_binomial<T>(static_cast<long>(n - 1 - j),
                                              static_cast<long>(N - j - 1),
                                              static_cast<long>(N - n));
            pdf.add(T(coef * drop[j][k]));
            ccdf.add(T(coef * pw[j][k]));
        }
        T pdf_v = pdf.value();
        T ccdf_v = ccdf.value();
        if constexpr (std::is_same_v<T, double>) {
            if (k < n) {
                // Pr[T_n = k] vanishes identically below n; drop float noise.
                pdf_v = 0.0;
                ccdf_v = 1.0;
            }
        }
        pdf_v = vet_probability(pdf_v, table.clamped_entries, "Pr[T_n = k]");
        table.pdf.emplace_back(pdf_v);
        table.ccdf.emplace_back(ccdf_v);
        table.cdf.emplace_back(T(T(1) - ccdf_v));
    }
    return table;
}

template <class T>
DistributionTable w_distribution_kernel(std::span<const T> p, unsigned k) {
    const std::size_t N = p.size();
    const auto sums = detail::mapped_subset_sums(
        p, N, [k](const T& mass) { return pow_int(mass, k); });

    DistributionTable table;
    table.variable = DistributionTable::Variable::working_set;
    table.fixed = k;
    table.first_index = 0;
    for (std::size_t n = 0; n <= N; ++n) {
        Accumulator<T> pdf, cdf;
        for (std::size_t j = 0; j <= n; ++j) {
            pdf.add(T(signed_binomial<T>(static_cast<long>(n - j), static_cast<long>(N - j),
                                         static_cast<long>(N - n)) *
                      sums[j]));
            if (n < N) {
                cdf.add(T(signed_binomial<T>(static_cast<long>(n - j),
                                             static_cast<long>(N - j - 1),
                                             static_cast<long>(N - n - 1)) *
                          sums[j]));
            }
        }
        T pdf_v = pdf.value();
        const T cdf_v = n < N ? cdf.value() : T(1);
        if constexpr (std::is_same_v<T, double>) {
            if (n > k) {
                pdf_v = 0.0;
            }
        }
        pdf_v = vet_probability(pdf_v, table.clamped_entries, "Pr[W_k = n]");
        table.pdf.emplace_back(pdf_v);
        table.cdf.emplace_back(cdf_v);
        table.ccdf.emplace_back(T(T(1) - cdf_v));
    }
    return table;
}

template <class T>
T t_expectation_kernel(std::span<const T> p, std::size_t n) {
    const std::size_t N = p.size();
    const auto sums =
        detail::mapped_subset_sums(p, n - 1, [](const T& mass) { return T(T(1) / (T(1) - mass)); });
    Accumulator<T> acc;
    for (std::size_t j = 0; j < n; ++j) {
        acc.add(T(signed_binomial<T>(static_cast<long>(n - 1 - j), static_cast<long>(N - j - 1),
                                     static_cast<long>(N - n)) *
                  sums[j]));
    }
    return acc.value();
}

template <class T>
T von_schelling_kernel(std::span<const T> p, std::size_t n) {
    const std::size_t N = p.size();
    Accumulator<T> acc;
    for (std::size_t size = N - n + 1; size <= N; ++size) {
        Accumulator<T> inner;
        detail::for_each_subset_mass(p, size, [&](const T& mass) { inner.add(T(T(1) / mass)); });
        const long e = static_cast<long>(n) - 1 - static_cast<long>(N) + static_cast<long>(size);
        acc.add(T(signed_binomial<T>(e, static_cast<long>(size) - 1, static_cast<long>(N - n)) *
                  inner.value()));
    }
    return acc.value();
}

template <class T>
T r_value_kernel(std::span<const T> p, unsigned k) {
    const auto sums =
        detail::mapped_subset_sums(p, p.size(), [k](const T& mass) { return pow_int(mass, k); });
    Accumulator<T> acc;
    for (std::size_t j = 0; j < sums.size(); ++j) {
        if (j % 2 == 0) {
            acc.add(sums[j]);
        } else {
            acc.sub(sums[j]);
        }
    }
    return acc.value();
}

// Pr[T = k] for a complete collection over the items in `mask`, with
// probabilities renormalized to the mask's mass.
template <class T>
class ExclusionRecursion {
public:
    ExclusionRecursion(std::span<const T> p, unsigned k_max)
        : p_(p), k_max_(k_max), memo_((std::size_t{1} << p.size()) * (k_max + 1)) {}

    T pdf(std::uint64_t mask, unsigned k) {
        const auto m = static_cast<unsigned>(std::popcount(mask));
        if (m == 1) {
            return k == 1 ? T(1) : T(0);
        }
        if (k < m) {
            return T(0);
        }
        auto& slot = memo_[mask * (k_max_ + 1) + k];
        if (slot) {
            return *slot;
        }
        T total_mass(0);
        for (std::size_t i = 0; i < p_.size(); ++i) {
            if (mask >> i & 1U) {
                total_mass += p_[i];
            }
        }
        Accumulator<T> acc;
        for (std::size_t l = 0; l < p_.size(); ++l) {
            if (!(mask >> l & 1U)) {
                continue;
            }
            const T q = p_[l] / total_mass;
            const T weight = q * pow_int(T(T(1) - q), k - 1);
            acc.add(T(weight * cdf(mask & ~(std::uint64_t{1} << l), k - 1)));
        }
        slot = acc.value();
        return *slot;
    }

    T cdf(std::uint64_t mask, unsigned k) {
        Accumulator<T> acc;
        for (unsigned u = 1; u <= k; ++u) {
            acc.add(pdf(mask, u));
        }
        return acc.value();
    }

private:
    std::span<const T> p_;
    unsigned k_max_;
    std::vector<std::optional<T>> memo_;
};

template <class T>
class FerranteRecursion {
public:
    FerranteRecursion(std::span<const T> p, std::size_t n) : p_(p), n_(n) {}

    T run() {
        visit(0, 0, T(0), T(1));
        return total_.value();
    }

private:
    void visit(std::size_t depth, std::uint64_t used, const T& mass, const T& value) {
        total_.add(value);
        if (depth + 1 >= n_) {
            return;
        }
        for (std::size_t i = 0; i < p_.size(); ++i) {
            if (used >> i & 1U) {
                continue;
            }
            const T next_mass = mass + p_[i];
            const T next_value = value * p_[i] / (T(1) - next_mass);
            visit(depth + 1, used | (std::uint64_t{1} << i), next_mass, next_value);
        }
    }

    std::span<const T> p_;
    std::size_t n_;
    Accumulator<T> total_;
};

} // namespace

DistributionTable t_distribution(const Popularity& pop, std::size_t n, unsigned k_max) {
    require_collection_size(pop, n);
    if (k_max < 1) {
        throw ValidationError("t_distribution: k_max must be at least 1");
    }
    DistributionTable table =
        pop.visit([&](auto p) { return t_distribution_kernel(p, n, k_max); });

    if (pop.is_exact() && pop.is_uniform()) {
        // Uniform case: N! S(k-1, n-1) / ((N-n)! N^k).
        const std::size_t N = pop.size();
        const Rational scale =
            Rational(factorial(N)) / Rational(factorial(N - n));
        for (unsigned k = 1; k <= k_max; ++k) {
            const Rational expect = scale * Rational(stirling2(k - 1, static_cast<unsigned>(n - 1))) /
                                    pow_int(Rational(static_cast<unsigned long>(N)), k);
            if (table.pdf_at(k).exact() != expect) {
                throw NumericError("uniform pdf disagrees with the Stirling form at k=" +
                                   std::to_string(k));
            }
        }
    }
    return table;
}

Scalar t_expectation(const Popularity& pop, std::size_t n) {
    require_collection_size(pop, n);
    return pop.visit([&](auto p) { return Scalar(t_expectation_kernel(p, n)); });
}

Scalar t_expectation_von_schelling(const Popularity& pop, std::size_t n) {
    require_collection_size(pop, n);
    return pop.visit([&](auto p) { return Scalar(von_schelling_kernel(p, n)); });
}

Scalar t_expectation_el(std::size_t N, std::size_t n) {
    if (n > N) {
        throw ValidationError("t_expectation_el: n exceeds N");
    }
    const auto h = [](std::size_t m) { return harmonic(static_cast<unsigned>(m)).exact(); };
    return Scalar(Rational(Rational(static_cast<unsigned long>(N)) * (h(N) - h(N - n))));
}

DistributionTable w_distribution(const Popularity& pop, unsigned k) {
    if (k < 1) {
        throw ValidationError("w_distribution: k must be at least 1");
    }
    return pop.visit([&](auto p) { return w_distribution_kernel(p, k); });
}

Scalar w_expectation(const Popularity& pop, unsigned k) {
    return pop.visit([&](auto p) -> Scalar {
        using T = typename decltype(p)::value_type;
        Accumulator<T> acc;
        for (const auto& pi : p) {
            if constexpr (std::is_same_v<T, double>) {
                acc.add(-std::expm1(static_cast<double>(k) * std::log1p(-pi)));
            } else {
                acc.add(T(T(1) - pow_int(T(T(1) - pi), k)));
            }
        }
        return Scalar(acc.value());
    });
}

RValue r_value(const Popularity& pop, unsigned k) {
    RValue r;
    r.N = pop.size();
    r.k = k;
    r.value = pop.visit([&](auto p) { return Scalar(r_value_kernel(p, k)); });
    return r;
}

Scalar r_closed_form(const Popularity& pop, int offset) {
    if (offset < 0 || offset > 3) {
        throw ValidationError("r_closed_form: no closed form known for offset " +
                              std::to_string(offset) + " (supported: 0..3)");
    }
    return pop.visit([&](auto p) -> Scalar {
        using T = typename decltype(p)::value_type;
        const std::size_t N = p.size();
        T prod = from_integer<T>(factorial(N));
        T sq(0);
        for (const auto& pi : p) {
            prod *= pi;
            sq += pi * pi;
        }
        const T base = (N % 2 == 0) ? prod : T(-prod);
        const T n = T(static_cast<long>(N));
        const long sN = static_cast<long>(N);
        switch (offset) {
        case 0:
            return Scalar(base);
        case 1:
            return Scalar(T(base * from_integer<T>(binomial(sN + 1, 2)) / n));
        case 2:
            return Scalar(T(base * from_integer<T>(binomial(sN + 2, 3)) * (T(3) + sq) / (T(4) * n)));
        default:
            return Scalar(T(base * from_integer<T>(binomial(sN + 3, 4)) * (T(1) + sq) / (T(2) * n)));
        }
    });
}

Scalar r_recurrence_step(const Popularity& pop, unsigned k) {
    if (k < 1) {
        throw ValidationError("r_recurrence_step: k must be at least 1");
    }
    const std::size_t N = pop.size();
    Scalar result = r_value(pop, k - 1).value;
    for (std::size_t l = 0; l < N; ++l) {
        const Scalar pl = pop.prob(l);
        Scalar weight = pl;
        const Scalar rest = Scalar(1) - pl;
        for (unsigned e = 0; e + 1 < k; ++e) {
            weight *= rest;
        }
        Scalar excluded;
        if (N == 2) {
            // Singleton support: R_1^u = 0^u - 1^u.
            excluded = (k - 1 == 0) ? Scalar(0) : Scalar(-1);
        } else {
            excluded = r_value(pop.exclude(l), k - 1).value;
        }
        result -= weight * excluded;
    }
    return result;
}

Scalar t_pdf_recursive(const Popularity& pop, unsigned k) {
    const std::size_t N = pop.size();
    if (k < 1) {
        throw ValidationError("t_pdf_recursive: k must be at least 1");
    }
    const std::uint64_t states = (std::uint64_t{1} << std::min<std::size_t>(N, 63)) * (k + 1);
    if (N > 24 || states > max_subsets()) {
        throw CapacityError("exclusion recursion over 2^" + std::to_string(N) + " item sets x " +
                                std::to_string(k + 1) + " trial counts exceeds the limit",
                            states, max_subsets());
    }
    return pop.visit([&](auto p) -> Scalar {
        using T = typename decltype(p)::value_type;
        ExclusionRecursion<T> rec(p, k);
        return Scalar(rec.pdf((std::uint64_t{1} << N) - 1, k));
    });
}

Scalar ferrante_expectation(const Popularity& pop, std::size_t n) {
    require_collection_size(pop, n);
    const std::size_t N = pop.size();
    // Ordered prefixes of length j < n: N!/(N-j)! of them.
    Integer terms = 0;
    Integer falling = 1;
    for (std::size_t j = 0; j < n; ++j) {
        terms += falling;
        falling *= static_cast<unsigned long>(N - j);
    }
    if (terms > Integer(std::to_string(max_subsets()))) {
        throw CapacityError("ordered-prefix recursion needs " + terms.get_str() +
                                " terms, above the limit of " + std::to_string(max_subsets()),
                            terms.fits_ulong_p() ? terms.get_ui() : std::uint64_t(-1),
                            max_subsets());
    }
    return pop.visit([&](auto p) -> Scalar {
        using T = typename decltype(p)::value_type;
        FerranteRecursion<T> rec(p, n);
        return Scalar(rec.run());
    });
}

double t_cdf_complete_real(const Popularity& pop, double k) {
    if (!(k >= 0)) {
        throw ValidationError("t_cdf_complete_real: k must be nonnegative");
    }
    const auto p = pop.values();
    const std::size_t N = p.size();
    // Pr[T_N <= k] = sum over complements C of (-1)^{|C|} (1 - P_C)^k.
    CompensatedSum<double> sum;
    for (std::size_t c = 0; c <= N; ++c) {
        CompensatedSum<double> inner;
        detail::for_each_subset_mass(p, c, [&](double q) {
            if (c == N) {
                inner += (k == 0) ? 1.0 : 0.0;
            } else {
                inner += std::exp(k * std::log1p(-std::min(q, 1.0)));
            }
        });
        if (c % 2 == 0) {
            sum += inner.value();
        } else {
            sum -= inner.value();
        }
    }
    return sum.value();
}

namespace {

// sum_{k>=0} Pr[W_k = n]; exact mode sums a finite head and closes the
// geometric tail per subset, float mode truncates with a certified bound.
template <class T>
T working_set_mass_kernel(std::span<const T> p, std::size_t n) {
    const std::size_t N = p.size();
    std::vector<std::vector<T>> masses(n + 1);
    std::vector<T> coef(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        detail::for_each_subset_mass(p, j, [&](const T& m) { masses[j].push_back(m); });
        coef[j] = signed_binomial<T>(static_cast<long>(n - j), static_cast<long>(N - j),
                                     static_cast<long>(N - n));
    }
    std::vector<std::vector<T>> power(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        power[j].assign(masses[j].size(), T(1));
    }
    auto term_and_step = [&]() {
        Accumulator<T> term;
        for (std::size_t j = 0; j <= n; ++j) {
            Accumulator<T> inner;
            for (std::size_t s = 0; s < masses[j].size(); ++s) {
                inner.add(power[j][s]);
                power[j][s] *= masses[j][s];
            }
            term.add(T(coef[j] * inner.value()));
        }
        return term.value();
    };

    Accumulator<T> total;
    if constexpr (std::is_same_v<T, double>) {
        double p_max = 0.0;
        double coef_weight = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            for (double m : masses[j]) {
                p_max = std::max(p_max, m);
            }
            coef_weight += std::abs(coef[j]) * static_cast<double>(masses[j].size());
        }
        constexpr long kMaxTerms = 10'000'000;
        for (long k = 0; k < kMaxTerms; ++k) {
            const double term = term_and_step();
            total.add(term);
            const double bound =
                coef_weight * std::pow(p_max, static_cast<double>(k + 1)) / (1.0 - p_max);
            if (k > static_cast<long>(N) && std::abs(term) < 1e-15 && bound < 1e-12) {
                return total.value();
            }
        }
        throw NumericError("working-set mass series did not converge");
    } else {
        const std::size_t head = 4 * N + 4;
        for (std::size_t k = 0; k <= head; ++k) {
            total.add(term_and_step());
        }
        // power[j][s] now holds P_J^{head+1}.
        for (std::size_t j = 0; j <= n; ++j) {
            Accumulator<T> inner;
            for (std::size_t s = 0; s < masses[j].size(); ++s) {
                inner.add(T(power[j][s] / (T(1) - masses[j][s])));
            }
            total.add(T(coef[j] * inner.value()));
        }
        return total.value();
    }
}

} // namespace

CheckReport marginal_identities(const Popularity& pop, unsigned k, std::size_t n) {
    const std::size_t N = pop.size();
    if (k < 1) {
        throw ValidationError("marginal_identities: k must be at least 1");
    }
    if (n < 1 || n >= N) {
        throw ValidationError("marginal_identities: n must satisfy 1 <= n < N");
    }
    CheckReport report;
    report.name = "marginal_identities";
    const std::string tag = "k=" + std::to_string(k) + ",n=" + std::to_string(n);

    Scalar lhs_a = 0;
    for (std::size_t m = 1; m <= N; ++m) {
        lhs_a += t_distribution(pop, m, k).pdf_at(k);
    }
    Scalar rhs_a = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const Scalar pi = pop.prob(i);
        Scalar term = pi;
        for (unsigned e = 0; e + 1 < k; ++e) {
            term *= Scalar(1) - pi;
        }
        rhs_a += term;
    }
    report.add(make_witness("(a) sum_n Pr[T_n=k] vs sum_i p_i(1-p_i)^(k-1); " + tag, lhs_a, rhs_a,
                            Relation::equal, 1e-10));

    const Scalar lhs_b =
        pop.visit([&](auto p) { return Scalar(working_set_mass_kernel(p, n)); });
    const Scalar rhs_b = t_expectation(pop, n + 1) - t_expectation(pop, n);
    report.add(make_witness("(b) sum_k Pr[W_k=n] vs E[T_(n+1)]-E[T_n]; " + tag, lhs_b, rhs_b,
                            Relation::equal, 1e-9));

    const DistributionTable w = w_distribution(pop, k);
    Scalar lhs_c = 0;
    for (std::size_t q = 0; q < n; ++q) {
        lhs_c += w.pdf_at(q);
    }
    const DistributionTable t = t_distribution(pop, n, k);
    Scalar rhs_c = 1;
    for (unsigned u = 1; u <= k; ++u) {
        rhs_c -= t.pdf_at(u);
    }
    report.add(make_witness("(c) Pr[W_k<n] vs Pr[T_n>k]; " + tag, lhs_c, rhs_c, Relation::equal,
                            1e-10));
    report.notes = pop.is_exact() ? "exact arithmetic" : "float arithmetic";
    return report;
}

} // namespace ccp
