#include "ccp/ws_lru.hpp"

#include "ccp/ccp_core.hpp"
#include "ccp/combinatorics.hpp"
#include "ccp/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace ccp {

namespace {

double base_term(WsBase base, double p, double t) {
    return base == WsBase::exact_base ? std::exp(t * std::log1p(-p)) : std::exp(-p * t);
}

void require_open_size(const WsCurve& curve, double j) {
    const auto N = static_cast<double>(curve.pop.size());
    if (!(j > 0.0 && j < N)) {
        throw ValidationError("working-set level " + format_double(j) + " outside (0, " +
                              format_double(N) + ")");
    }
}

// Bisection for the root of a monotone function on [lo, hi].
template <class F>
double bisect(F&& f, double lo, double hi) {
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (f(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double working_set(const WsCurve& curve, double t) {
    if (!(t >= 0.0)) {
        throw ValidationError("working_set: t must be nonnegative");
    }
    CompensatedSum<double> sum;
    for (double p : curve.pop.values()) {
        sum += (curve.base == WsBase::exact_base) ? -std::expm1(t * std::log1p(-p))
                                                  : -std::expm1(-p * t);
    }
    return sum.value();
}

double working_set_derivative(const WsCurve& curve, double t) {
    CompensatedSum<double> sum;
    for (double p : curve.pop.values()) {
        const double rate = curve.base == WsBase::exact_base ? -std::log1p(-p) : p;
        sum += base_term(curve.base, p, t) * rate;
    }
    return sum.value();
}

double working_set_inverse(const WsCurve& curve, double j) {
    require_open_size(curve, j);
    double hi = 1.0;
    while (working_set(curve, hi) < j) {
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw NumericError("working_set_inverse: failed to bracket level " +
                               format_double(j));
        }
    }
    return bisect([&](double t) { return working_set(curve, t) >= j; }, 0.0, hi);
}

double fagin_miss_rate(const WsCurve& curve, double j, FaginVariant variant) {
    const double t = working_set_inverse(curve, j);
    if (variant == FaginVariant::derivative) {
        return working_set_derivative(curve, t);
    }
    CompensatedSum<double> sum;
    for (double p : curve.pop.values()) {
        sum += p * base_term(curve.base, p, t);
    }
    return sum.value();
}

Scalar delta_expectation(const Popularity& pop, std::size_t j) {
    if (j >= pop.size()) {
        throw ValidationError("delta_expectation: j must be below N");
    }
    const Scalar next = t_expectation(pop, j + 1);
    return j == 0 ? next : next - t_expectation(pop, j);
}

double delta_expectation_ws_approx(const WsCurve& curve, std::size_t j) {
    if (j < 1 || j + 2 > curve.pop.size()) {
        throw ValidationError("delta_expectation_ws_approx: need 1 <= j <= N-2");
    }
    return working_set_inverse(curve, static_cast<double>(j + 1)) -
           working_set_inverse(curve, static_cast<double>(j));
}

Scalar mr_delta_product(const Popularity& pop, std::size_t j, FaginVariant variant) {
    const std::size_t N = pop.size();
    if (j < 1 || j >= N) {
        throw ValidationError("mr_delta_product: need 1 <= j <= N-1");
    }
    const Scalar delta = delta_expectation(pop, j);
    if (pop.is_exact() && pop.is_uniform() && variant == FaginVariant::weighted) {
        // sum_i p_i (1-p_i)^{t*} = (1-1/N)^{t*} = 1 - j/N at the inverse point.
        Rational mr(static_cast<long>(N - j), static_cast<unsigned long>(N));
        mr.canonicalize();
        return Scalar(mr) * delta;
    }
    const double mr = fagin_miss_rate(WsCurve{pop, WsBase::exact_base}, static_cast<double>(j),
                                      variant);
    return Scalar(mr * delta.to_double());
}

PowerLawModel PowerLawModel::make(std::size_t N, double a) {
    if (N < 2 || !(a > 0.0)) {
        throw ValidationError("power-law model needs N >= 2 and a > 0");
    }
    return PowerLawModel{N, a, harmonic(static_cast<unsigned>(N), Scalar(a)).to_double()};
}

double gen_exp_integral(double p, double z) {
    if (!(p > 1.0) || !(z >= 0.0)) {
        throw ValidationError("gen_exp_integral: need p > 1 and z >= 0");
    }
    if (z == 0.0) {
        return 1.0 / (p - 1.0);
    }
    // t = e^s maps [1, inf) to [0, inf); the integrand exp(-z e^s + (1-p) s)
    // is negligible once z (e^s - 1) exceeds ln(1e18) relative to s = 0.
    const double cutoff = std::log(1e18);
    const double s_max = std::log1p(cutoff / z);
    auto f = [&](double s) { return std::exp(-z * std::exp(s) + (1.0 - p) * s); };
    double error = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, s_max, 20,
                                                                         1e-15, &error);
}

double gen_exp_integral_inverse(double p, double x) {
    const double top = 1.0 / (p - 1.0);
    if (!(x > 0.0 && x < top)) {
        throw ValidationError("gen_exp_integral_inverse: x outside (0, 1/(p-1))");
    }
    double hi = 1.0;
    while (gen_exp_integral(p, hi) > x) {
        hi *= 2.0;
        if (hi > 1e6) {
            throw NumericError("gen_exp_integral_inverse: failed to bracket");
        }
    }
    return bisect([&](double z) { return gen_exp_integral(p, z) <= x; }, 0.0, hi);
}

double gen_exp_integral_inverse_approx(double x) {
    if (!(x > 0.0 && x < 1.0 / std::exp(1.0))) {
        throw ValidationError("gen_exp_integral_inverse_approx: need 0 < x < 1/e");
    }
    const double l = std::log(1.0 / x);
    return l - std::log(l);
}

double ws_powerlaw_closed(const PowerLawModel& model, double D) {
    if (!(D >= 0.0)) {
        throw ValidationError("ws_powerlaw_closed: D must be nonnegative");
    }
    const double N = static_cast<double>(model.N);
    const double scale = model.H * std::pow(N, model.a);
    return N * (1.0 - gen_exp_integral(1.0 + 1.0 / model.a, D / scale) / model.a);
}

double ws_powerlaw_inverse(const PowerLawModel& model, double D) {
    const double N = static_cast<double>(model.N);
    if (!(D > 0.0 && D < N)) {
        throw ValidationError("ws_powerlaw_inverse: D outside (0, N)");
    }
    const double scale = model.H * std::pow(N, model.a);
    return scale * gen_exp_integral_inverse(1.0 + 1.0 / model.a, model.a * (1.0 - D / N));
}

double zeta(double s) {
    if (!(s > 1.0)) {
        throw ValidationError("zeta: need s > 1");
    }
    // Head sum plus Euler-Maclaurin tail; the remainder is O(s M^{-s-1}).
    constexpr int M = 100000;
    CompensatedSum<double> sum;
    for (int i = M - 1; i >= 1; --i) {
        sum += std::pow(static_cast<double>(i), -s);
    }
    const double m = M;
    sum += std::pow(m, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(m, -s);
    sum += s / 12.0 * std::pow(m, -s - 1.0);
    return sum.value();
}

double full_collection_asymptotic(std::size_t N, double a) {
    if (N < 2 || !(a > 0.0)) {
        throw ValidationError("full_collection_asymptotic: need N >= 2 and a > 0");
    }
    const double n = static_cast<double>(N);
    if (a > 1.0) {
        return zeta(a) * std::pow(n, a) * std::log(n);
    }
    if (a == 1.0) {
        return harmonic(static_cast<unsigned>(N)).to_double() * n * std::log(n);
    }
    return n * std::log(n) / (1.0 - a);
}

} // namespace ccp
