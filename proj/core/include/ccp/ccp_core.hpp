#pragma once

#include "ccp/check_report.hpp"
#include "ccp/popularity.hpp"
#include "ccp/scalar.hpp"

#include <cstddef>
#include <vector>

namespace ccp {

/// pdf / cdf / ccdf of one coupon-collector variable over its free index.
///
/// For the waiting time T_n (fixed n) rows run over trial counts
/// k = first_index .. first_index+size()-1, starting at k = 1. For the
/// working set W_k (fixed k) rows run over sizes n = 0..N.
struct DistributionTable {
    enum class Variable { waiting_time, working_set };

    Variable variable = Variable::waiting_time;
    std::size_t fixed = 0;
    std::size_t first_index = 0;
    std::vector<Scalar> pdf;
    std::vector<Scalar> cdf;
    std::vector<Scalar> ccdf;
    /// Float-mode pdf entries in [-1e-9, 0) that were clamped to zero.
    std::size_t clamped_entries = 0;

    std::size_t size() const noexcept { return pdf.size(); }
    std::size_t index_at(std::size_t row) const noexcept { return first_index + row; }
    const Scalar& pdf_at(std::size_t index) const { return pdf.at(index - first_index); }
    const Scalar& cdf_at(std::size_t index) const { return cdf.at(index - first_index); }
    const Scalar& ccdf_at(std::size_t index) const { return ccdf.at(index - first_index); }
};

/// R_N^k = sum_{J subset of {1..N}} (-1)^{|J|} P_J^k. Zero whenever k < N.
struct RValue {
    std::size_t N = 0;
    unsigned k = 0;
    Scalar value;
};

/// Distribution of T_n, the number of draws needed to collect n distinct
/// items, for k = 1..k_max.
DistributionTable t_distribution(const Popularity& pop, std::size_t n, unsigned k_max);

/// E[T_n] through the alternating sum of 1/(1 - P_J) over |J| < n.
Scalar t_expectation(const Popularity& pop, std::size_t n);

/// E[T_n] through the complementary-index form, a sum of 1/P_J over
/// |J| > N - n. Agrees with t_expectation.
Scalar t_expectation_von_schelling(const Popularity& pop, std::size_t n);

/// N (H_N - H_{N-n}), the uniform-popularity expectation.
Scalar t_expectation_el(std::size_t N, std::size_t n);

/// Distribution of W_k, the number of distinct items in the first k draws,
/// for n = 0..N.
DistributionTable w_distribution(const Popularity& pop, unsigned k);

/// E[W_k] = sum_i (1 - (1 - p_i)^k).
Scalar w_expectation(const Popularity& pop, unsigned k);

RValue r_value(const Popularity& pop, unsigned k);

/// R_N^{N+offset} for offset 0..3 from its closed form in terms of
/// R_N^N = (-1)^N N! prod p_i and sum p_i^2. No closed form is known past
/// offset 3.
Scalar r_closed_form(const Popularity& pop, int offset);

/// R_N^k via one step of the exclusion recurrence
///   R_N^k = R_N^{k-1} - sum_l p_l (1-p_l)^{k-1} R_{N-1,{l}}^{k-1}.
/// For N = 2 the excluded singleton is evaluated directly.
Scalar r_recurrence_step(const Popularity& pop, unsigned k);

/// Pr[T_N = k] for the complete collection via
///   Pr[T_N = k] = sum_l p_l (1-p_l)^{k-1} Pr[T_{N-1,{l}} <= k-1],
/// memoized over the remaining item sets.
Scalar t_pdf_recursive(const Popularity& pop, unsigned k);

/// E[T_n] = sum_{|J| < n} I_J, with I_J the sum over orderings of J of
/// prod p_{i_m} / (1 - p_{i_1} - ... - p_{i_m}); depth-first over ordered
/// prefixes.
Scalar ferrante_expectation(const Popularity& pop, std::size_t n);

/// Pr[T_N <= k] for real k >= 0 (complete collection), float arithmetic.
double t_cdf_complete_real(const Popularity& pop, double k);

/// Verifies, for the given k and n:
///  (a) sum_{n'=1..N} Pr[T_{n'} = k] = sum_i p_i (1-p_i)^{k-1}
///  (b) sum_{k'>=0} Pr[W_{k'} = n] = E[T_{n+1}] - E[T_n]
///  (c) Pr[W_k < n] = Pr[T_n > k]
CheckReport marginal_identities(const Popularity& pop, unsigned k, std::size_t n);

} // namespace ccp
