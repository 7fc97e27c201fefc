// Series, asymptotic and leading-term evaluators of S_nu(z, t).

#pragma once

#include "shu/core.hpp"
#include "shu/gamma.hpp"

namespace shu {

/// A series evaluation together with its truncation bookkeeping.
struct SeriesEvaluation {
    Evaluation eval;
    TruncatedSum sum;
};

/// Convergent small-t series
///   S = sum_k (-1)^k / (2 k!) (z/2)^(2k - nu) Gamma(nu - k, z^2/(4t)).
/// Terms behave like t^k / k!, so it is exact for every t but only cheap
/// and cancellation-free for small t. Stops after two consecutive terms below
/// tol.target(|partial sum|). Throws NonConvergence at tol.max_terms.
SeriesEvaluation series_small_t_detailed(const ShuParams& p, const Tolerances& tol);
Evaluation series_small_t(const ShuParams& p, const Tolerances& tol);

/// Convergent small-z series
///   S = K_nu(z) - sum_k (-1)^k Gamma(-nu - k, t) / (2 k!) (z/2)^(nu + 2k).
/// Sets flags.cancellation when K_nu or the sum exceeds 1e6 |S|.
SeriesEvaluation series_small_z_detailed(const ShuParams& p, const Tolerances& tol);
Evaluation series_small_z(const ShuParams& p, const Tolerances& tol);

/// Large-t expansion: K_nu(z) minus the double sum
///   sum_k sum_m (-1)^(m+k) (nu+k+1)_m / (2 k!) (z/2)^(nu+2k) e^-t / t^(nu+m+k+1).
/// The m-sum is asymptotic and optimally truncated per k; tail_bound is the
/// largest first-omitted m-term over the retained k.
SeriesEvaluation asympt_large_t_detailed(const ShuParams& p, const Tolerances& tol);
Evaluation asympt_large_t(const ShuParams& p, const Tolerances& tol);

/// 1/2 (z/2)^(nu-2) exp(-z^2/(4t)) t^(1-nu), the t -> 0+ leading term.
Approximant leading_small_t(const ShuParams& p);

/// z -> 0+ leading term: -ln z for nu = 0, otherwise
/// 2^(|nu|-1) Gamma(|nu|) / z^|nu|.
Approximant leading_small_z(const ShuParams& p);

/// t -> inf leading term, K_nu(z).
Approximant leading_large_t(const ShuParams& p);

/// z -> inf leading term  z^nu exp(-z^2/(4t) - t) / ((2t)^(nu-1) (z^2 - 4t^2)).
/// Requires z > 2t (DomainError "argument" otherwise); flags.near_pole below
/// z = 2.5 t.
Approximant leading_large_z(const ShuParams& p);

/// The same approximant written at the endpoint zeta = ln(z/(2t)) of the
/// cosh integral: exp(nu zeta - z cosh zeta) / (2 z sinh zeta).
double leading_large_z_endpoint_form(const ShuParams& p);

/// Large-z approximant of 1/2 int_{t_imb}^inf exp(-z cosh tau) cosh(nu tau) dtau:
///   cosh(nu t_imb) exp(-z cosh t_imb) / (2 z sinh t_imb).
double leading_imb_large_z(double order, double z, double t_imb);

/// Closed form for nu = +1/2 and nu = -1/2 in terms of erfc:
///   S_{+-1/2} = sqrt(pi) / (2 sqrt(2z)) [e^-z erfc(A - sqrt t) +- e^z erfc(A + sqrt t)],
/// A = z / (2 sqrt t). DomainError for any other order. Sets
/// flags.underflow_to_zero / flags.cancellation when the double evaluation
/// cannot be trusted.
Evaluation closed_form_half(const ShuParams& p);

}  // namespace shu
