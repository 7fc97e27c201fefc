#include "shu/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shu {

namespace {

constexpr double kLn2 = std::numbers::ln2;
// Relative accuracy credited to each incomplete-gamma value in a sum.
constexpr double kTermRoundoff = 64.0 * limits::eps;
constexpr double kCancellationRatio = 1e6;

double exp_checked(double log_value, Flags& flags) {
    if (log_value > limits::log_max) throw OverflowError("value exceeds the double range");
    if (log_value < limits::log_min_normal) {
        flags.underflow_to_zero = true;
        return 0.0;
    }
    return std::exp(log_value);
}

void require_converged(bool converged, double partial, double err, const char* what) {
    if (!converged) throw NonConvergence(what, partial, err);
}

}  // namespace

SeriesEvaluation series_small_t_detailed(const ShuParams& p, const Tolerances& tol) {
    check(tol);
    const double nu = p.order;
    const double z = p.argument;
    const double x = 0.25 * z * z / p.endpoint;
    const double lz2 = std::log(0.5 * z);
    auto log_term = [&](int k) {
        return (2.0 * k - nu) * lz2 - kLn2 - std::lgamma(k + 1.0) +
               log_upper_incomplete_gamma(nu - k, x);
    };

    // Terms are summed relative to exp(log0), the k = 0 magnitude.
    const double log0 = log_term(0);
    const double abs_scaled = tol.abs_tol > 0.0 ? tol.abs_tol * std::exp(-log0) : 0.0;

    double sum = 0.0, abs_sum = 0.0, max_abs = 0.0, last = 0.0;
    int small_run = 0;
    int k = 0;
    bool converged = false;
    for (; k < tol.max_terms; ++k) {
        const double mag = std::exp(log_term(k) - log0);
        if (!std::isfinite(mag))
            throw NonConvergence("small-t series terms overflow", sum, INFINITY);
        sum += (k % 2 == 0) ? mag : -mag;
        abs_sum += mag;
        max_abs = std::max(max_abs, mag);
        last = mag;
        small_run = mag <= std::max(abs_scaled, tol.rel_tol * std::fabs(sum)) ? small_run + 1 : 0;
        if (small_run == 2) {
            converged = true;
            ++k;
            break;
        }
    }
    const double scale = std::exp(log0);
    require_converged(converged, sum * scale, last * scale, "small-t series hit max_terms");

    SeriesEvaluation out;
    out.eval.method = MethodTag::SeriesSmallT;
    out.eval.work = k;
    out.eval.flags.cancellation = !(sum > 0.0) || max_abs > kCancellationRatio * std::fabs(sum);
    out.eval.value = sum > 0.0 ? exp_checked(log0 + std::log(sum), out.eval.flags) : sum * scale;
    out.eval.error_estimate = (last + kTermRoundoff * abs_sum) * scale;
    out.sum = TruncatedSum{out.eval.value, k, last * scale, last * scale};
    return out;
}

Evaluation series_small_t(const ShuParams& p, const Tolerances& tol) {
    return series_small_t_detailed(p, tol).eval;
}

SeriesEvaluation series_small_z_detailed(const ShuParams& p, const Tolerances& tol) {
    check(tol);
    const double nu = p.order;
    const double z = p.argument;
    const double t = p.endpoint;
    const double lz2 = std::log(0.5 * z);
    const KValue k_nu = macdonald_k_detailed(nu, z);

    double sum = 0.0, abs_sum = 0.0, last = 0.0;
    int small_run = 0;
    int k = 0;
    bool converged = false;
    for (; k < tol.max_terms; ++k) {
        const double log_mag = log_upper_incomplete_gamma(-nu - k, t) - kLn2 -
                               std::lgamma(k + 1.0) + (nu + 2.0 * k) * lz2;
        if (log_mag > limits::log_max)
            throw NonConvergence("small-z series terms overflow", k_nu.value - sum, INFINITY);
        const double mag = std::exp(log_mag);
        sum += (k % 2 == 0) ? mag : -mag;
        abs_sum += mag;
        last = mag;
        small_run = mag <= tol.target(k_nu.value - sum) ? small_run + 1 : 0;
        if (small_run == 2) {
            converged = true;
            ++k;
            break;
        }
    }
    const double value = k_nu.value - sum;
    const double err = k_nu.error_estimate + last + kTermRoundoff * (k_nu.value + abs_sum);
    require_converged(converged, value, err, "small-z series hit max_terms");

    SeriesEvaluation out;
    out.eval.method = MethodTag::SeriesSmallZ;
    out.eval.work = k;
    out.eval.value = value;
    out.eval.error_estimate = err;
    out.eval.flags.cancellation =
        !(value > 0.0) || std::max(k_nu.value, abs_sum) > kCancellationRatio * value;
    out.eval.flags.underflow_to_zero = k_nu.underflow_to_zero;
    out.sum = TruncatedSum{value, k, last, last};
    return out;
}

Evaluation series_small_z(const ShuParams& p, const Tolerances& tol) {
    return series_small_z_detailed(p, tol).eval;
}

SeriesEvaluation asympt_large_t_detailed(const ShuParams& p, const Tolerances& tol) {
    check(tol);
    const double nu = p.order;
    const double z = p.argument;
    const double t = p.endpoint;
    const double lz2 = std::log(0.5 * z);
    const double lt = std::log(t);
    const KValue k_nu = macdonald_k_detailed(nu, z);

    double correction = 0.0, abs_sum = 0.0, tail = 0.0, last = 0.0;
    int small_run = 0;
    int k = 0;
    int work = 0;
    bool converged = false;
    for (; k < tol.max_terms; ++k) {
        // Inner asymptotic sum over m of (-1)^m (nu+k+1)_m t^-m.
        double inner = 1.0, term = 1.0, omitted = 0.0;
        bool truncated = false;
        for (int m = 1; m <= tol.max_terms; ++m) {
            const double next = -term * (nu + k + m) / t;
            if (next == 0.0 || std::fabs(next) >= std::fabs(term) ||
                std::fabs(next) <= limits::eps * std::fabs(inner)) {
                // The m-sum is a Stieltjes series: the remainder has the sign
                // of the first omitted term and is smaller, so half of it is
                // the best single-term estimate of what was cut off.
                inner += 0.5 * next;
                omitted = std::fabs(next);
                truncated = true;
                work += m;
                break;
            }
            inner += next;
            term = next;
        }
        if (!truncated)
            throw NonConvergence("large-t asymptotic sum found no truncation point",
                                 k_nu.value - correction, INFINITY);

        const double log_pref = -t - (nu + k + 1.0) * lt + (nu + 2.0 * k) * lz2 - kLn2 -
                                std::lgamma(k + 1.0);
        if (log_pref > limits::log_max)
            throw NonConvergence("large-t correction overflows", k_nu.value - correction, INFINITY);
        const double pref = std::exp(log_pref);
        const double ck = pref * inner;
        correction += (k % 2 == 0) ? ck : -ck;
        abs_sum += std::fabs(ck);
        tail = std::max(tail, pref * omitted);
        last = std::fabs(ck);
        small_run = last <= tol.target(k_nu.value - correction) ? small_run + 1 : 0;
        if (small_run == 2) {
            converged = true;
            ++k;
            break;
        }
    }
    const double value = k_nu.value - correction;
    const double err = k_nu.error_estimate + tail + last + kTermRoundoff * (k_nu.value + abs_sum);
    require_converged(converged, value, err, "large-t k-sum hit max_terms");

    SeriesEvaluation out;
    out.eval.method = MethodTag::AsymptLargeT;
    out.eval.work = work;
    out.eval.value = value;
    out.eval.error_estimate = err;
    out.eval.flags.underflow_to_zero = k_nu.underflow_to_zero;
    out.sum = TruncatedSum{value, k, last, tail};
    return out;
}

Evaluation asympt_large_t(const ShuParams& p, const Tolerances& tol) {
    return asympt_large_t_detailed(p, tol).eval;
}

Approximant leading_small_t(const ShuParams& p) {
    const double nu = p.order;
    const double z = p.argument;
    const double t = p.endpoint;
    Approximant a;
    a.method = MethodTag::LeadingSmallT;
    const double log_value =
        (nu - 2.0) * std::log(0.5 * z) - kLn2 - 0.25 * z * z / t + (1.0 - nu) * std::log(t);
    a.value = exp_checked(log_value, a.flags);
    return a;
}

Approximant leading_small_z(const ShuParams& p) {
    const double nu = p.order;
    const double z = p.argument;
    Approximant a;
    a.method = MethodTag::LeadingSmallZ;
    if (sgn(nu) == 0) {
        a.value = -std::log(z);
        return a;
    }
    const double n = nu * sgn(nu);
    a.value = exp_checked((n - 1.0) * kLn2 + std::lgamma(n) - n * std::log(z), a.flags);
    return a;
}

Approximant leading_large_t(const ShuParams& p) {
    const KValue k_nu = macdonald_k_detailed(p.order, p.argument);
    Approximant a;
    a.method = MethodTag::LeadingLargeT;
    a.value = k_nu.value;
    a.flags.underflow_to_zero = k_nu.underflow_to_zero;
    return a;
}

Approximant leading_large_z(const ShuParams& p) {
    const double nu = p.order;
    const double z = p.argument;
    const double t = p.endpoint;
    if (!(z > 2.0 * t))
        throw DomainError("argument", "large-z expansion needs argument > 2 * endpoint");
    Approximant a;
    a.method = MethodTag::LeadingLargeZ;
    a.flags.near_pole = z < 2.5 * t;
    const double log_value = nu * std::log(z) - 0.25 * z * z / t - t -
                             (nu - 1.0) * std::log(2.0 * t) -
                             std::log(z - 2.0 * t) - std::log(z + 2.0 * t);
    a.value = exp_checked(log_value, a.flags);
    return a;
}

double leading_large_z_endpoint_form(const ShuParams& p) {
    const double z = p.argument;
    const double zeta = std::log(z / (2.0 * p.endpoint));
    if (!(zeta > 0.0))
        throw DomainError("argument", "large-z expansion needs argument > 2 * endpoint");
    return std::exp(p.order * zeta - z * std::cosh(zeta)) / (2.0 * z * std::sinh(zeta));
}

double leading_imb_large_z(double order, double z, double t_imb) {
    if (!std::isfinite(z) || !(z > 0.0)) throw DomainError("z", "z must be > 0");
    if (!std::isfinite(t_imb) || !(t_imb > 0.0))
        throw DomainError("t_imb", "the sinh(t) denominator needs t_imb > 0");
    const double a = std::fabs(order) * t_imb;
    const double log_cosh = a + std::log1p(std::exp(-2.0 * a)) - kLn2;
    Flags ignored;
    return exp_checked(log_cosh - z * std::cosh(t_imb) - std::log(2.0 * z * std::sinh(t_imb)),
                       ignored);
}

Evaluation closed_form_half(const ShuParams& p) {
    const double nu = p.order;
    if (std::fabs(nu) != 0.5) throw DomainError("order", "closed form needs order = +-1/2");
    const double z = p.argument;
    const double st = std::sqrt(p.endpoint);
    const double a = 0.5 * z / st;

    Evaluation ev;
    ev.method = MethodTag::ClosedFormHalf;
    ev.work = 2;
    // e^z erfc(a + st) is formed in logs so that e^z alone never overflows.
    const double e_minus = std::erfc(a - st);
    const double e_plus = std::erfc(a + st);
    const double t1 = std::exp(-z) * e_minus;
    const double t2 = e_plus > 0.0 ? std::exp(z + std::log(e_plus)) : 0.0;
    if (!std::isfinite(t1) || !std::isfinite(t2)) throw OverflowError("closed form overflows");

    const double pref = std::sqrt(std::numbers::pi) / (2.0 * std::sqrt(2.0 * z));
    const double bracket = nu > 0.0 ? t1 + t2 : t1 - t2;
    const double mags = t1 + t2;
    ev.flags.underflow_to_zero = e_minus == 0.0 || (e_plus == 0.0 && a + st < 27.0) ||
                                 t1 < limits::min_normal;
    ev.flags.cancellation = !(bracket > 0.0) || mags > kCancellationRatio * bracket;
    ev.value = pref * bracket;
    const double u = a + st;
    ev.error_estimate = pref * mags * limits::eps * (8.0 + 4.0 * u * u);
    if (ev.value < limits::min_normal) {
        ev.flags.underflow_to_zero = true;
        ev.value = 0.0;
        ev.error_estimate = 0.0;
    }
    return ev;
}

}  // namespace shu
