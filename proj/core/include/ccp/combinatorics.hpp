#pragma once

#include "ccp/check_report.hpp"
#include "ccp/scalar.hpp"

namespace ccp {

/// C(n, k); zero when k < 0 or k > n.
Integer binomial(long n, long k);

Integer factorial(unsigned long n);

/// Stirling number of the second kind S(k, n): the number of partitions of a
/// k-set into n non-empty blocks. Backed by a shared memo table filled with
/// S(k,n) = n S(k-1,n) + S(k-1,n-1).
Integer stirling2(unsigned k, unsigned n);

/// S(N + offset, N) from the polynomial diagonal closed forms, offset 1..5.
/// The result is always integer valued.
Rational stirling2_diagonal(unsigned N, int offset);

/// Generalized harmonic number H_{N,a} = sum_{i<=N} i^{-a}. Exact when `a` is
/// an exact nonnegative integer, floating point otherwise.
Scalar harmonic(unsigned N, const Scalar& a = Scalar(1));

/// Complete-collection CDF of the uniform case with the trial count k
/// extended to the reals:
///   sum_{i=0..N} (-1)^{N-i} C(N,i) (i/N)^k.
/// Evaluated in log-magnitude order with compensated summation so that the
/// alternating sum stays usable up to N in the thousands.
double el_cdf_continuous(unsigned N, double k);

/// Checks sum_{i<=b} C(b,i)(-1)^i/(a+i+1)^2 = a!b!/(a+b+1)! (H_{a+b+1}-H_a)
/// in exact arithmetic.
CheckReport integral_identity_check(unsigned a, unsigned b);

} // namespace ccp
