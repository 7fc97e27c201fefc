// Derivatives of S_nu, residuals of its recurrence, differential and PDE
// identities, and the three related functions that reduce to it.

#pragma once

#include <functional>
#include <string>

#include "shu/core.hpp"
#include "shu/quadrature.hpp"

namespace shu {

/// Where residual checks get S-values and the analytic z-derivative from.
/// `dz` is expected to implement  dS_nu/dz = (nu/z) S_nu - S_{nu+1}; tests
/// swap it for a deliberately broken one to show which checks notice.
struct ShuSource {
    std::function<double(const ShuParams&)> value;
    std::function<double(const ShuParams&)> dz;
};

/// Oracle-backed source (shu_oracle at `tol`, tight by default).
ShuSource oracle_source(const Tolerances& tol = tight_tolerances());

/// The same source shared by every default-argument overload below.
const ShuSource& default_source();

struct ResidualReport {
    std::string identity;
    ShuParams point{};
    int k = 0;  // derivative count for Diff1 / Diff2, else 0
    double residual = 0.0;
    double scale = 1.0;  // largest additive term magnitude, > 0
    double relative_residual = 0.0;
};

/// Exact dS_nu/dt = 1/2 (z/2)^nu exp(-t - z^2/(4t)) / t^(nu+1).
/// Sets flags.underflow_to_zero (and returns 0) when the exponential underflows.
double dS_dt(const ShuParams& p, Flags* flags = nullptr);

/// d^2 S_nu/dt^2 = dS_dt (-1 + z^2/(4t^2) - (nu+1)/t).
double d2S_dt2(const ShuParams& p);

/// (nu/z) S_nu - S_{nu+1} with both S-values from `src.value`.
double dS_dz(const ShuParams& p, const ShuSource& src);
double dS_dz(const ShuParams& p);

// Finite-difference steps, relative to the coordinate. At z = 8, t = 1/2,
// S varies like exp(-z^2/(4t)), and a 1e-3 z second-difference step already
// costs ~1e-3 in truncation error.
inline constexpr double kFirstDiffStep = 1e-5;
inline constexpr double kSecondDiffStep = 1e-4;

/// Central difference of f at x with step h, cross-checked against step h/2.
/// Throws StepTooCoarse when the two disagree by more than 10 * tol relative
/// to max(|f'|, |f(x)| / x). Returns the step-h value.
double checked_central_difference(const std::function<double(double)>& f, double x, double h,
                                  double tol);

/// Rec1:  dS_{nu-1}/dt + S_{nu-1} - S_{nu+1} + (2 nu / z) S_nu.
ResidualReport recurrence1_residual(const ShuParams& p, const ShuSource& src);
ResidualReport recurrence1_residual(const ShuParams& p);

/// Rec2:  dS_{nu-1}/dt + S_{nu-1} + S_{nu+1} + 2 dS_nu/dz, with the z-derivative
/// a raw central difference of src.value (step 1e-5 z), never src.dz.
ResidualReport recurrence2_residual(const ShuParams& p, const ShuSource& src,
                                    double step_tol = 1e-6);
ResidualReport recurrence2_residual(const ShuParams& p);

/// RecSum, the sum of the two recurrences rearranged:
///   -dS_nu/dz - (nu/z) S_nu - S_{nu-1} - dS_{nu-1}/dt, dz by finite difference.
ResidualReport recurrence_sum_residual(const ShuParams& p, const ShuSource& src,
                                       double step_tol = 1e-6);

/// DzLadder: src.dz against a central difference of src.value.
ResidualReport dz_ladder_residual(const ShuParams& p, const ShuSource& src,
                                  double step_tol = 1e-6);

/// Diff1:  (1/z d/dz)^k (z^nu S_nu) - (-1)^k (1 + d/dt)^k (z^(nu-k) S_{nu-k}).
/// Left side by nested central differences (kFirstDiffStep for k = 1,
/// kSecondDiffStep for k = 2); right side from exact t-derivatives.
/// k in {0, 1, 2}.
ResidualReport diff_relation1_residual(const ShuParams& p, int k, const ShuSource& src,
                                       double step_tol);
ResidualReport diff_relation1_residual(const ShuParams& p, int k);

/// Diff2:  (1/z d/dz)^k (S_nu / z^nu) - (-1)^k S_{nu+k} / z^(nu+k).
ResidualReport diff_relation2_residual(const ShuParams& p, int k, const ShuSource& src,
                                       double step_tol);
ResidualReport diff_relation2_residual(const ShuParams& p, int k);

enum class PdeMode { Exact, FiniteDifference };

/// z^2 S_zz + z S_z - (z^2 + nu^2) S - z^2 S_t.
/// Exact: S_z and S_zz from src.dz at orders nu and nu+1.
/// FiniteDifference: central differences of src.value (kFirstDiffStep for
/// S_z, kSecondDiffStep for S_zz).
ResidualReport pde_residual(const ShuParams& p, PdeMode mode, const ShuSource& src,
                            double step_tol = 1e-5);
ResidualReport pde_residual(const ShuParams& p, PdeMode mode);

// ---------------------------------------------------------------------------
// Related functions
// ---------------------------------------------------------------------------

/// Generalized incomplete gamma  int_t^inf tau^(a-1) exp(-tau - z/tau) dtau
///   = 2 z^(a/2) S_a(2 sqrt z, z / t).
double gen_incomplete_gamma(double a, double t_g, double z_g,
                            const Tolerances& tol = tight_tolerances());
double gen_incomplete_gamma_direct(double a, double t_g, double z_g,
                                   const Tolerances& tol = tight_tolerances());

/// Leaky aquifer function  int_1^inf exp(-z tau - t/tau) tau^(-a-1) dtau
///   = 2 (z/t)^(a/2) S_{-a}(2 sqrt(z t), t).
double leaky_aquifer(double a, double z_l, double t_l,
                     const Tolerances& tol = tight_tolerances());
double leaky_aquifer_direct(double a, double z_l, double t_l,
                            const Tolerances& tol = tight_tolerances());

/// Incomplete modified Bessel function  1/2 int_t^inf exp(-z cosh tau) cosh(a tau) dtau
///   = 1/2 (S_a + S_{-a})(z, z e^-t / 2).
double incomplete_modified_bessel(double a, double z, double t_imb,
                                  const Tolerances& tol = tight_tolerances());
double incomplete_modified_bessel_direct(double a, double z, double t_imb,
                                         const Tolerances& tol = tight_tolerances());

/// S_nu(z, t) recovered from each related function's defining integral:
///   1/2 (2/z)^nu Gamma(nu, z^2/(4t); z^2/4),   1/2 (z/(2t))^nu L_{-nu}(z^2/(4t), t),
/// and, for nu = 0 and z > 2t only, the incomplete modified Bessel function
/// at t_imb = ln(z/(2t)).
double shu_via_gen_incomplete_gamma(const ShuParams& p,
                                    const Tolerances& tol = tight_tolerances());
double shu_via_leaky_aquifer(const ShuParams& p, const Tolerances& tol = tight_tolerances());
double shu_via_incomplete_modified_bessel(const ShuParams& p,
                                          const Tolerances& tol = tight_tolerances());

}  // namespace shu
