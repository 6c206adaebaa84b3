#pragma once

#include "ccp/popularity.hpp"
#include "ccp/scalar.hpp"

#include <cstddef>

namespace ccp {

/// Per-item survival term of the working-set function.
enum class WsBase {
    exact_base, ///< (1 - p_i)^t
    exp_base,   ///< exp(-p_i t)
};

/// Which derivative of the working-set curve stands in for the miss rate.
enum class FaginVariant {
    weighted,   ///< sum_i p_i base_i(t*): miss probability of the next reference
    derivative, ///< WS'(t*) itself
};

struct WsCurve {
    Popularity pop;
    WsBase base = WsBase::exact_base;
};

/// WS(t) = sum_i (1 - base_i(t)), t >= 0 real.
double working_set(const WsCurve& curve, double t);

/// dWS/dt.
double working_set_derivative(const WsCurve& curve, double t);

/// t* with WS(t*) = j for 0 < j < N, by doubling then bisection.
double working_set_inverse(const WsCurve& curve, double j);

/// Fagin/Che estimate of the LRU miss rate for a cache of size j.
double fagin_miss_rate(const WsCurve& curve, double j,
                       FaginVariant variant = FaginVariant::weighted);

/// E[T_{j+1}] - E[T_j] with E[T_0] = 0, for 0 <= j <= N-1.
Scalar delta_expectation(const Popularity& pop, std::size_t j);

/// WS^{-1}(j+1) - WS^{-1}(j): the large-N stand-in for delta_expectation
/// when exact evaluation is out of reach. Requires 1 <= j <= N-2.
double delta_expectation_ws_approx(const WsCurve& curve, std::size_t j);

/// fagin_miss_rate(exact_base) * delta_expectation for 1 <= j <= N-1.
/// Exact for a uniform popularity with the weighted variant, where the
/// product is identically 1.
Scalar mr_delta_product(const Popularity& pop, std::size_t j,
                        FaginVariant variant = FaginVariant::weighted);

/// Continuum power-law popularity p(x) = 1/(H_{N,a} x^a) on [0, N].
struct PowerLawModel {
    std::size_t N = 0;
    double a = 1.0;
    double H = 0.0;

    static PowerLawModel make(std::size_t N, double a);
};

/// E_p(z) = int_1^inf exp(-z t) t^{-p} dt for p > 1, z >= 0.
double gen_exp_integral(double p, double z);

/// z with E_p(z) = x, for 0 < x < 1/(p-1).
double gen_exp_integral_inverse(double p, double x);

/// ln(1/x) - ln ln(1/x): small-x approximation of E_p^{-1}(x), any p.
double gen_exp_integral_inverse_approx(double x);

/// WS(D) = N (1 - E_{1+1/a}(D / (H N^a)) / a).
double ws_powerlaw_closed(const PowerLawModel& model, double D);

/// Inverse of ws_powerlaw_closed for 0 < D < N.
double ws_powerlaw_inverse(const PowerLawModel& model, double D);

/// Large-N growth of E[T_N] for a power law of skewness a.
double full_collection_asymptotic(std::size_t N, double a);

/// Riemann zeta for s > 1 by direct summation with an integral tail.
double zeta(double s);

} // namespace ccp
