#include "ccp/combinatorics.hpp"

#include "ccp/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <vector>

namespace ccp {

Integer binomial(long n, long k) {
    if (n < 0) {
        throw ValidationError("binomial: n must be nonnegative");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

namespace {

// Rows k = 0..size()-1 of the Stirling triangle; row k holds S(k, 0..k).
class StirlingTable {
public:
    Integer get(unsigned k, unsigned n) {
        if (n > k) {
            return 0;
        }
        {
            std::shared_lock lock(mutex_);
            if (k < rows_.size()) {
                return rows_[k][n];
            }
        }
        std::unique_lock lock(mutex_);
        if (rows_.empty()) {
            rows_.push_back({Integer(1)});
        }
        while (rows_.size() <= k) {
            const auto& prev = rows_.back();
            const std::size_t r = rows_.size();
            std::vector<Integer> row(r + 1);
            row[0] = 0;
            for (std::size_t j = 1; j <= r; ++j) {
                const Integer above = j < prev.size() ? prev[j] : Integer(0);
                row[j] = Integer(j) * above + prev[j - 1];
            }
            rows_.push_back(std::move(row));
        }
        return rows_[k][n];
    }

private:
    std::shared_mutex mutex_;
    std::vector<std::vector<Integer>> rows_;
};

StirlingTable& stirling_table() {
    static StirlingTable table;
    return table;
}

} // namespace

Integer stirling2(unsigned k, unsigned n) {
    return stirling_table().get(k, n);
}

Rational stirling2_diagonal(unsigned N, int offset) {
    if (N < 1) {
        throw ValidationError("stirling2_diagonal: N must be at least 1");
    }
    const long n = N;
    const Rational c2(binomial(n + 1, 2));
    Rational r;
    switch (offset) {
    case 1:
        r = c2;
        break;
    case 2:
        r = Rational(binomial(n + 2, 3)) * (3 * n + 1) / 4;
        break;
    case 3:
        r = Rational(binomial(n + 3, 4)) * c2;
        break;
    case 4: {
        const Integer poly = 15 * Integer(n) * n * n + 30 * Integer(n) * n + 5 * n - 2;
        r = Rational(binomial(n + 4, 5)) * Rational(poly) / 48;
        break;
    }
    case 5: {
        const Integer poly = 3 * Integer(n) * n + 7 * n - 2;
        r = Rational(binomial(n + 5, 6)) * c2 * Rational(poly) / 8;
        break;
    }
    default:
        throw ValidationError("stirling2_diagonal: offset must be in 1..5");
    }
    r.canonicalize();
    return r;
}

Scalar harmonic(unsigned N, const Scalar& a) {
    if (a.sign() < 0) {
        throw ValidationError("harmonic: exponent must be nonnegative");
    }
    if (a.is_exact() && a.is_integer() && a.exact().get_num().fits_ulong_p()) {
        const unsigned long e = a.exact().get_num().get_ui();
        Rational sum = 0;
        for (unsigned i = 1; i <= N; ++i) {
            sum += Rational(1) / pow_int(Rational(i), e);
        }
        return sum;
    }
    const double ad = a.to_double();
    CompensatedSum<double> sum;
    for (unsigned i = N; i >= 1; --i) {
        sum += std::pow(static_cast<double>(i), -ad);
    }
    return sum.value();
}

namespace {

double el_cdf_wide(unsigned N, double k) {
    if (k == 0) {
        return 0.0; // the full alternating binomial sum
    }
    using Wide = boost::multiprecision::cpp_bin_float_100;
    const Wide kk(k);
    Wide binom = 1;
    Wide sum = 0;
    for (unsigned m = 0; m < N; ++m) {
        if (m > 0) {
            binom = binom * (N - m + 1) / m;
        }
        const Wide term = binom * boost::multiprecision::pow(Wide(N - m) / N, kk);
        sum += (m % 2 == 0) ? term : Wide(-term);
    }
    return static_cast<double>(sum);
}

} // namespace

double el_cdf_continuous(unsigned N, double k) {
    if (N < 1) {
        throw ValidationError("el_cdf_continuous: N must be at least 1");
    }
    if (!(k >= 0)) {
        throw ValidationError("el_cdf_continuous: k must be nonnegative");
    }
    // With m = N - i the sum is sum_m (-1)^m C(N,m) (1 - m/N)^k; the m = N
    // term is 0^k, i.e. 1 at k = 0 and 0 otherwise.
    struct Term {
        long double log_mag;
        long double value;
    };
    std::vector<Term> terms;
    terms.reserve(N + 1);
    long double binom = 1.0L;
    for (unsigned m = 0; m <= N; ++m) {
        if (m > 0) {
            binom = binom * static_cast<long double>(N - m + 1) / static_cast<long double>(m);
        }
        const long double base = static_cast<long double>(N - m) / static_cast<long double>(N);
        long double power;
        if (m == N) {
            power = k == 0 ? 1.0L : 0.0L;
        } else {
            power = std::pow(base, static_cast<long double>(k));
        }
        if (power == 0.0L) {
            continue;
        }
        const long double log_mag =
            std::log(binom) + static_cast<long double>(k) * std::log(base == 0 ? 1.0L : base);
        const long double sign = (m % 2 == 0) ? 1.0L : -1.0L;
        terms.push_back({log_mag, sign * binom * power});
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.log_mag > y.log_mag; });
    if (terms.empty()) {
        return 0.0;
    }
    const long double cutoff = terms.front().log_mag + std::log(1e-30L);
    CompensatedSum<long double> sum;
    for (const auto& t : terms) {
        if (t.log_mag < cutoff) {
            break;
        }
        sum += t.value;
    }
    // Near k = N the terms cancel to far below their own rounding error;
    // redo those sums with 100 significant digits.
    if (std::abs(sum.value()) < 1e-3L * std::exp(terms.front().log_mag)) {
        return el_cdf_wide(N, k);
    }
    return static_cast<double>(sum.value());
}

CheckReport integral_identity_check(unsigned a, unsigned b) {
    Rational lhs = 0;
    for (unsigned i = 0; i <= b; ++i) {
        const Rational d = Rational(a + i + 1);
        Rational term = Rational(binomial(b, i)) / (d * d);
        if (i % 2 == 1) {
            term = -term;
        }
        lhs += term;
    }
    const Rational coef = Rational(factorial(a) * factorial(b)) / Rational(factorial(a + b + 1));
    const Rational rhs = coef * (harmonic(a + b + 1).exact() - harmonic(a).exact());

    CheckReport report;
    report.name = "integral_identity";
    report.add(make_witness("a=" + std::to_string(a) + ",b=" + std::to_string(b), Scalar(lhs),
                            Scalar(rhs), Relation::equal));
    report.notes = "alternating reciprocal-square binomial sum vs harmonic difference";
    return report;
}

} // namespace ccp
