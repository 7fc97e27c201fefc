// Gamma-family building blocks: Gamma(a), Gamma(a, x) for any real order,
// E1(x), the Pochhammer symbol, the large-x asymptotic series of
// Gamma(a, x), and the Macdonald function K_nu(z).

#pragma once

#include "shu/core.hpp"

namespace shu {

/// A truncated (convergent or asymptotic) sum.
struct TruncatedSum {
    double value = 0.0;
    int terms_used = 0;
    double last_term = 0.0;   // magnitude of the final included term
    double tail_bound = 0.0;  // estimate of the omitted remainder
};

/// Gamma(a). Throws PoleError at a = 0, -1, -2, ... and OverflowError when
/// the value leaves the double range.
double gamma(double a);

/// E1(x) = int_x^inf e^-tau / tau dtau. Power series below x = 1,
/// continued fraction above.
double exp_integral_e1(double x);

/// Gamma(a, x) = int_x^inf tau^(a-1) e^-tau dtau for any finite real a, x > 0.
///
/// x >= 1 and (x >= a + 1 or a <= 1/2): Legendre continued fraction, which
/// holds for every real a.
/// a > 1/2 otherwise: Gamma(a) minus the lower-gamma power series.
/// x < 1, a <= 1/2: the order is reduced to a0 in (-1/2, 1/2], Gamma(a0, x)
/// is summed with the a0 -> 0 singularity removed analytically (a0 = 0 is
/// E1), and the downward recurrence
///   Gamma(a - 1, x) = (Gamma(a, x) - x^(a-1) e^-x) / (a - 1)
/// brings it to the requested order. For x < 1 the subtracted term dominates,
/// so the recurrence does not cancel.
double upper_incomplete_gamma(double a, double x);

/// ln Gamma(a, x). Stays finite where Gamma(a, x) itself under- or overflows
/// on the continued-fraction branch.
double log_upper_incomplete_gamma(double a, double x);

/// Asymptotic series x^(a-1) e^-x sum_m (-1)^m (1-a)_m x^-m, stopped at
/// m_max or just before the terms start to grow (optimal truncation).
/// tail_bound is the magnitude of the first omitted term.
TruncatedSum incomplete_gamma_asymptotic(double a, double x, int m_max);

/// Rising factorial a (a+1) ... (a+m-1); (a)_0 = 1.
double pochhammer(double a, int m);

struct KValue {
    double value = 0.0;
    double error_estimate = 0.0;
    bool underflow_to_zero = false;
};

/// K_nu(z) = int_0^inf exp(-z cosh w) cosh(nu w) dw, by adaptive quadrature.
/// Depends on nu only through |nu|, so K_nu = K_-nu exactly.
KValue macdonald_k_detailed(double order, double z);
double macdonald_k(double order, double z);

}  // namespace shu
