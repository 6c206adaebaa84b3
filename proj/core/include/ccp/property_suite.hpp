#pragma once

// Executable checks of the inequalities and extremality results around the
// uniform ("EL") popularity. Each check returns a CheckReport whose
// witnesses carry both sides of every asserted relation.
//
// A strict inequality asserted for non-uniform inputs becomes an equality
// witness when the input is uniform. Float inputs whose margin is too thin
// to trust are re-evaluated on the exact rational values of their doubles.

#include "ccp/check_report.hpp"
#include "ccp/popularity.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace ccp {

/// sum p_i^k > N^{1-k} and sum p_i^{-k} > N^{k+1}, 2 <= k <= k_max.
CheckReport check_power_sum_bounds(const Popularity& pop, unsigned k_max);

/// sum p_i^k > (sum p_i^2)^{k-1}, 3 <= k <= k_max.
CheckReport check_second_moment_bound(const Popularity& pop, unsigned k_max);

/// Over subsets of size j:
///   sum 1/(1-P_J) > C(N,j) N/(N-j),  sum 1/P_J > C(N,j) N/j,
///   sum P_J^k > C(N,j) (j/N)^k for 2 <= k <= k_max.
CheckReport check_subset_reciprocal_bound(const Popularity& pop, std::size_t j,
                                          unsigned k_max = 4);

/// prod N p_i < 1; e_n(p) < C(N,n)/N^n for 2 <= n <= N; and its n = 3
/// consequence 2 sum(p_i^3 - N^-3) < 3 sum(p_i^2 - N^-2).
CheckReport check_product_lemmas(const Popularity& pop);

/// Against the uniform popularity of the same size:
///  (a) E[T_n] > N (H_N - H_{N-n}),            2 <= n <= n_max
///  (b) Pr[T_n <= k] < Pr_EL[T_n <= k],          2 <= n <= n_max, n <= k <= k_max
///  (c) E[W_k] < E_EL[W_k],                      2 <= k <= k_max
///  (d) (-1)^N R_N^k < (-1)^N EL_N^k,            N <= k <= k_max
CheckReport check_el_extremality(const Popularity& pop, std::size_t n_max, unsigned k_max);

/// Slopes at x = 1+ of the duration and detection curves:
/// 1/(N sum p_i/(1-p_i)) < (1 - sum p_i^2)/N. Uniform input: both equal
/// (N-1)/N^2, plus 1 - (1-1/N)^{N(H_N - H_{N-n})} <= n/N for 0 <= n <= N.
CheckReport check_duration_detection(const Popularity& pop);

/// WS(E[T_j]) > j - (j-1) exp(-H_{j-1}) for 2 <= j <= N and WS(E[T_N]) < N,
/// (1-p)^t base. WS(E[T_j]) < j need not hold for j < N.
CheckReport check_ws_sandwich(const Popularity& pop);

/// Pr[T_N <= E[T_N]] for power laws of each skewness (0 is uniform), with
/// the empirical band [0.55, 0.65]. An observation, not a theorem.
CheckReport check_cdf_at_expectation(std::size_t N, const std::vector<double>& a_list);

struct CdfAtExpectation {
    double a = 0.0;
    double expectation = 0.0;
    double cdf = 0.0;
};

/// The values behind check_cdf_at_expectation.
std::vector<CdfAtExpectation> cdf_at_expectation(std::size_t N, const std::vector<double>& a_list);

struct SuiteOptions {
    /// Largest collection size for the extremality checks; 0 means N.
    std::size_t n_max = 0;
    /// Largest trial count; 0 means N + 4.
    unsigned k_max = 0;
};

/// Every per-popularity check, ordered by name.
std::vector<CheckReport> run_suite(const Popularity& pop, const SuiteOptions& options = {});

/// Grid search of sum_i (1 - p_i)^{E[T_j]} over the simplex.
struct Appendix14Row {
    std::size_t j = 0;
    double max_value = 0.0;
    std::vector<double> argmax;
    double min_value = 0.0;
    std::vector<double> argmin;
    /// N - j + (j-1) exp(-H_{j-1}).
    double bound = 0.0;
    std::optional<double> reference_max;
    std::optional<double> reference_min;
};

struct Appendix14Result {
    std::size_t N = 0;
    double step = 0.0;
    double floor = 0.0;
    std::uint64_t points = 0;
    std::vector<Appendix14Row> rows; ///< j = 2..N
};

/// The first N-1 coordinates run over floor + i*step; the last is the
/// remainder, which must stay positive.
Appendix14Result appendix14_search(std::size_t N, double step, double floor = 1e-5,
                                   unsigned threads = 0);

/// Checks each maximum against the published value (within 1e-2) and
/// against its bound.
CheckReport appendix14_report(const Appendix14Result& result);

CheckReport appendix14_table(std::size_t N = 6, double grid_step = 0.01);

} // namespace ccp
