// Adaptive Gauss-Kronrod integration and the quadrature reference values
// for S_nu(z, t).

#pragma once

#include <functional>
#include <span>

#include "shu/core.hpp"

namespace shu {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    int subdivisions = 0;         // panels in the final partition
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// `b` may be +infinity; the half line is mapped onto [0, 1) with
/// x = a + u / (1 - u). Interior `breakpoints` (in x) seed the initial
/// partition. The panel with the largest error is bisected until the total
/// error meets tol.target(|value|), a panel reaches tol.max_depth bisections,
/// or the panel budget is spent. In the last two cases the partial result is
/// returned with converged = false.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const Tolerances& tol,
                                    std::span<const double> breakpoints = {});

/// Integrates exp(log_f(x)) over [a, b] without over/underflow in the
/// integrand: log_f is shifted by `log_peak` (its maximum on [a, b]) and the
/// scale is reapplied at the end. Used by every oracle in the library.
///
/// Returns 0 with underflow_to_zero set when the integral is below the
/// smallest normal double. Throws OverflowError when it exceeds the range,
/// NonConvergence when the integrator does not converge.
Evaluation integrate_exp_of(const std::function<double(double)>& log_f, double a,
                            double b, double log_peak, const Tolerances& tol,
                            MethodTag tag, std::span<const double> breakpoints = {});

/// S_nu(z,t) from  1/2 (2/z)^nu int_{z^2/4t}^inf y^(nu-1) exp(-y - z^2/4y) dy.
/// The default reference value (tag Oracle5).
Evaluation shu_oracle(const ShuParams& p, const Tolerances& tol);

/// S_nu(z,t) from the defining integral over (0, t] (tag Oracle2). The left
/// end is clamped where the integrand has dropped e^-745 below its peak.
Evaluation shu_oracle_direct(const ShuParams& p, const Tolerances& tol);

/// S_nu(z,t) from  1/2 int_{ln(z/2t)}^inf exp(-z cosh w + nu w) dw (tag Oracle4).
Evaluation shu_oracle_cosh(const ShuParams& p, const Tolerances& tol);

/// K_nu(z) - S_nu(z,t), i.e. the defining integral over [t, inf), computed
/// directly rather than by subtraction (tag Oracle2).
Evaluation shu_complement_oracle(const ShuParams& p, const Tolerances& tol);

/// Tolerance used when a quantity serves as a reference value in tests and
/// identity checks.
inline Tolerances tight_tolerances() { return Tolerances::relative(1e-13, 200, 60); }

}  // namespace shu
