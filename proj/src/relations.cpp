#include "shu/relations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>

#include "shu/evaluator.hpp"

namespace shu {

namespace {

double max_abs(std::initializer_list<double> xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::fabs(x));
    return m;
}

ResidualReport make_report(std::string identity, const ShuParams& p, int k, double residual,
                           double scale) {
    ResidualReport r;
    r.identity = std::move(identity);
    r.point = p;
    r.k = k;
    r.residual = residual;
    r.scale = scale > 0.0 ? scale : limits::min_normal;
    r.relative_residual = std::fabs(residual) / r.scale;
    return r;
}

ShuParams with_order(const ShuParams& p, double order) { return {order, p.argument, p.endpoint}; }

// S as a function of z alone.
std::function<double(double)> along_z(const ShuSource& src, const ShuParams& p) {
    return [&src, p](double z) { return src.value({p.order, z, p.endpoint}); };
}

// (1/z d/dz)^k f at z with the fixed step h.
double nested_derivative(const std::function<double(double)>& f, double z, double h, int k) {
    if (k == 0) return f(z);
    std::function<double(double)> inner = [&](double x) {
        return nested_derivative(f, x, h, k - 1);
    };
    return (inner(z + h) - inner(z - h)) / (2.0 * h * z);
}

// Same as nested_derivative with the h vs h/2 cross-check.
double checked_nested_derivative(const std::function<double(double)>& f, double z, double h,
                                 int k, double tol) {
    const double d1 = nested_derivative(f, z, h, k);
    const double d2 = nested_derivative(f, z, 0.5 * h, k);
    const double scale = std::max({std::fabs(d1), std::fabs(d2),
                                   std::fabs(f(z)) / std::pow(z, 2.0 * k)});
    if (std::fabs(d1 - d2) > 10.0 * tol * scale)
        throw StepTooCoarse("nested difference changes by " +
                            std::to_string(std::fabs(d1 - d2) / scale) + " when h is halved");
    return d1;
}

double checked_second_difference(const std::function<double(double)>& f, double x, double h,
                                 double tol) {
    const double f0 = f(x);
    auto d = [&](double s) { return (f(x + s) - 2.0 * f0 + f(x - s)) / (s * s); };
    const double d1 = d(h);
    const double d2 = d(0.5 * h);
    const double scale = std::max({std::fabs(d1), std::fabs(d2), std::fabs(f0) / (x * x)});
    if (std::fabs(d1 - d2) > 10.0 * tol * scale)
        throw StepTooCoarse("second difference changes by " +
                            std::to_string(std::fabs(d1 - d2) / scale) + " when h is halved");
    return d1;
}

}  // namespace

ShuSource oracle_source(const Tolerances& tol) {
    ShuSource s;
    s.value = [tol](const ShuParams& p) { return shu_oracle(p, tol).value; };
    s.dz = [tol](const ShuParams& p) {
        return p.order / p.argument * shu_oracle(p, tol).value -
               shu_oracle(with_order(p, p.order + 1.0), tol).value;
    };
    return s;
}

const ShuSource& default_source() {
    static const ShuSource s = oracle_source();
    return s;
}

double dS_dt(const ShuParams& p, Flags* flags) {
    const double z = p.argument;
    const double t = p.endpoint;
    const double log_v = -std::log(2.0) + p.order * std::log(0.5 * z) - t - 0.25 * z * z / t -
                         (p.order + 1.0) * std::log(t);
    if (log_v > limits::log_max) throw OverflowError("dS/dt overflows");
    if (log_v < limits::log_min_normal) {
        if (flags) flags->underflow_to_zero = true;
        return 0.0;
    }
    return std::exp(log_v);
}

double d2S_dt2(const ShuParams& p) {
    const double z = p.argument;
    const double t = p.endpoint;
    return dS_dt(p) * (-1.0 + 0.25 * z * z / (t * t) - (p.order + 1.0) / t);
}

double dS_dz(const ShuParams& p, const ShuSource& src) { return src.dz(p); }
double dS_dz(const ShuParams& p) { return dS_dz(p, default_source()); }

double checked_central_difference(const std::function<double(double)>& f, double x, double h,
                                  double tol) {
    auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    const double d1 = d(h);
    const double d2 = d(0.5 * h);
    const double scale = std::max({std::fabs(d1), std::fabs(d2), std::fabs(f(x) / x)});
    if (std::fabs(d1 - d2) > 10.0 * tol * scale)
        throw StepTooCoarse("central difference changes by " +
                            std::to_string(std::fabs(d1 - d2) / scale) + " when h is halved");
    return d1;
}

ResidualReport recurrence1_residual(const ShuParams& p, const ShuSource& src) {
    const double nu = p.order;
    const ShuParams lower = with_order(p, nu - 1.0);
    const double a = dS_dt(lower);
    const double b = src.value(lower);
    const double c = -src.value(with_order(p, nu + 1.0));
    const double d = 2.0 * nu / p.argument * src.value(p);
    return make_report("Rec1", p, 0, a + b + c + d, max_abs({a, b, c, d}));
}

ResidualReport recurrence1_residual(const ShuParams& p) {
    return recurrence1_residual(p, default_source());
}

ResidualReport recurrence2_residual(const ShuParams& p, const ShuSource& src, double step_tol) {
    const double nu = p.order;
    const ShuParams lower = with_order(p, nu - 1.0);
    const double a = dS_dt(lower);
    const double b = src.value(lower);
    const double c = src.value(with_order(p, nu + 1.0));
    const double d = 2.0 * checked_central_difference(along_z(src, p), p.argument,
                                                      kFirstDiffStep * p.argument, step_tol);
    return make_report("Rec2", p, 0, a + b + c + d, max_abs({a, b, c, d}));
}

ResidualReport recurrence2_residual(const ShuParams& p) {
    return recurrence2_residual(p, default_source());
}

ResidualReport recurrence_sum_residual(const ShuParams& p, const ShuSource& src,
                                       double step_tol) {
    const double nu = p.order;
    const ShuParams lower = with_order(p, nu - 1.0);
    const double a = -checked_central_difference(along_z(src, p), p.argument,
                                                 kFirstDiffStep * p.argument, step_tol);
    const double b = -nu / p.argument * src.value(p);
    const double c = -src.value(lower);
    const double d = -dS_dt(lower);
    return make_report("RecSum", p, 0, a + b + c + d, max_abs({a, b, c, d}));
}

ResidualReport dz_ladder_residual(const ShuParams& p, const ShuSource& src, double step_tol) {
    const double analytic = src.dz(p);
    const double fd = checked_central_difference(along_z(src, p), p.argument,
                                                 kFirstDiffStep * p.argument, step_tol);
    return make_report("DzLadder", p, 0, analytic - fd, max_abs({analytic, fd}));
}

ResidualReport diff_relation1_residual(const ShuParams& p, int k, const ShuSource& src,
                                       double step_tol) {
    if (k < 0 || k > 2) throw DomainError("k", "differential relations are checked for k <= 2");
    const double nu = p.order;
    const double z = p.argument;
    const std::string name = k == 2 ? "Diff1-k2" : "Diff1";
    if (k == 0) {
        const double v = std::pow(z, nu) * src.value(p);
        return make_report(name, p, 0, v - v, std::fabs(v));
    }
    auto f = [&](double x) { return std::pow(x, nu) * src.value({nu, x, p.endpoint}); };
    const double h = (k == 1 ? kFirstDiffStep : kSecondDiffStep) * z;
    const double left = checked_nested_derivative(f, z, h, k, step_tol);

    const ShuParams q = with_order(p, nu - k);
    const double s = src.value(q);
    const double st = dS_dt(q);
    const double bracket = k == 1 ? s + st : s + 2.0 * st + d2S_dt2(q);
    const double right = (k == 1 ? -1.0 : 1.0) * std::pow(z, nu - k) * bracket;
    return make_report(name, p, k, left - right, max_abs({left, right}));
}

ResidualReport diff_relation1_residual(const ShuParams& p, int k) {
    return diff_relation1_residual(p, k, default_source(), k == 2 ? 1e-4 : 1e-6);
}

ResidualReport diff_relation2_residual(const ShuParams& p, int k, const ShuSource& src,
                                       double step_tol) {
    if (k < 0 || k > 2) throw DomainError("k", "differential relations are checked for k <= 2");
    const double nu = p.order;
    const double z = p.argument;
    const std::string name = k == 2 ? "Diff2-k2" : "Diff2";
    if (k == 0) {
        const double v = src.value(p) / std::pow(z, nu);
        return make_report(name, p, 0, v - v, std::fabs(v));
    }
    auto f = [&](double x) { return src.value({nu, x, p.endpoint}) / std::pow(x, nu); };
    const double h = (k == 1 ? kFirstDiffStep : kSecondDiffStep) * z;
    const double left = checked_nested_derivative(f, z, h, k, step_tol);
    const double right =
        (k == 1 ? -1.0 : 1.0) * src.value(with_order(p, nu + k)) / std::pow(z, nu + k);
    return make_report(name, p, k, left - right, max_abs({left, right}));
}

ResidualReport diff_relation2_residual(const ShuParams& p, int k) {
    return diff_relation2_residual(p, k, default_source(), k == 2 ? 1e-4 : 1e-6);
}

ResidualReport pde_residual(const ShuParams& p, PdeMode mode, const ShuSource& src,
                            double step_tol) {
    const double nu = p.order;
    const double z = p.argument;
    const double s = src.value(p);
    double sz, szz;
    if (mode == PdeMode::Exact) {
        sz = src.dz(p);
        szz = -nu / (z * z) * s + nu / z * sz - src.dz(with_order(p, nu + 1.0));
    } else {
        const auto f = along_z(src, p);
        sz = checked_central_difference(f, z, kFirstDiffStep * z, step_tol);
        szz = checked_second_difference(f, z, kSecondDiffStep * z, step_tol);
    }
    const double a = z * z * szz;
    const double b = z * sz;
    const double c = -(z * z + nu * nu) * s;
    const double d = -z * z * dS_dt(p);
    return make_report(mode == PdeMode::Exact ? "PDE-Exact" : "PDE-FD", p, 0, a + b + c + d,
                       max_abs({a, b, c, d}));
}

ResidualReport pde_residual(const ShuParams& p, PdeMode mode) {
    return pde_residual(p, mode, default_source());
}

// ---------------------------------------------------------------------------

namespace {

double shu_value(double nu, double z, double t, const Tolerances& tol) {
    return evaluate(validate(nu, z, t), tol).eval.value;
}

void require_positive(double v, const char* field) {
    if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(field, std::string(field) + " must be > 0");
}

}  // namespace

double gen_incomplete_gamma(double a, double t_g, double z_g, const Tolerances& tol) {
    require_positive(t_g, "t");
    require_positive(z_g, "z");
    return 2.0 * std::pow(z_g, 0.5 * a) * shu_value(a, 2.0 * std::sqrt(z_g), z_g / t_g, tol);
}

double gen_incomplete_gamma_direct(double a, double t_g, double z_g, const Tolerances& tol) {
    require_positive(t_g, "t");
    require_positive(z_g, "z");
    auto log_f = [=](double tau) { return (a - 1.0) * std::log(tau) - tau - z_g / tau; };
    const double b = a - 1.0;
    const double mode = b >= 0.0 ? 0.5 * (b + std::sqrt(b * b + 4.0 * z_g))
                                 : 2.0 * z_g / (-b + std::sqrt(b * b + 4.0 * z_g));
    const double peak_at = std::max(mode, t_g);
    const std::array<double, 2> bp{mode, peak_at + 1.0};
    return integrate_exp_of(log_f, t_g, INFINITY, log_f(peak_at), tol, MethodTag::Oracle2, bp)
        .value;
}

double leaky_aquifer(double a, double z_l, double t_l, const Tolerances& tol) {
    require_positive(z_l, "z");
    require_positive(t_l, "t");
    return 2.0 * std::pow(z_l / t_l, 0.5 * a) *
           shu_value(-a, 2.0 * std::sqrt(z_l * t_l), t_l, tol);
}

double leaky_aquifer_direct(double a, double z_l, double t_l, const Tolerances& tol) {
    require_positive(z_l, "z");
    require_positive(t_l, "t");
    auto log_f = [=](double tau) { return -z_l * tau - t_l / tau - (a + 1.0) * std::log(tau); };
    // Root of z tau^2 + (a+1) tau - t = 0.
    const double b = a + 1.0;
    const double mode = b >= 0.0 ? 2.0 * t_l / (b + std::sqrt(b * b + 4.0 * z_l * t_l))
                                 : (-b + std::sqrt(b * b + 4.0 * z_l * t_l)) / (2.0 * z_l);
    const double peak_at = std::max(mode, 1.0);
    const std::array<double, 2> bp{mode, peak_at + 1.0 / z_l};
    return integrate_exp_of(log_f, 1.0, INFINITY, log_f(peak_at), tol, MethodTag::Oracle2, bp)
        .value;
}

double incomplete_modified_bessel(double a, double z, double t_imb, const Tolerances& tol) {
    require_positive(z, "z");
    require_positive(t_imb, "t");
    const double t = 0.5 * z * std::exp(-t_imb);
    return 0.5 * (shu_value(a, z, t, tol) + shu_value(-a, z, t, tol));
}

double incomplete_modified_bessel_direct(double a, double z, double t_imb,
                                         const Tolerances& tol) {
    require_positive(z, "z");
    require_positive(t_imb, "t");
    const double n = std::fabs(a);
    auto log_f = [=](double w) {
        return -z * std::cosh(w) + n * w + std::log1p(std::exp(-2.0 * n * w)) - 2.0 * std::log(2.0);
    };
    const double mode = std::asinh(n / z);
    const double peak_at = std::max(mode, t_imb);
    const std::array<double, 1> bp{mode};
    return integrate_exp_of(log_f, t_imb, INFINITY, log_f(peak_at), tol, MethodTag::Oracle4, bp)
        .value;
}

double shu_via_gen_incomplete_gamma(const ShuParams& p, const Tolerances& tol) {
    const double c = 0.25 * p.argument * p.argument;
    return 0.5 * std::pow(2.0 / p.argument, p.order) *
           gen_incomplete_gamma_direct(p.order, c / p.endpoint, c, tol);
}

double shu_via_leaky_aquifer(const ShuParams& p, const Tolerances& tol) {
    const double z = p.argument;
    const double t = p.endpoint;
    return 0.5 * std::pow(z / (2.0 * t), p.order) *
           leaky_aquifer_direct(-p.order, 0.25 * z * z / t, t, tol);
}

double shu_via_incomplete_modified_bessel(const ShuParams& p, const Tolerances& tol) {
    if (p.order != 0.0)
        throw DomainError("order", "only S_0 is recoverable from the incomplete Bessel form");
    if (!(p.argument > 2.0 * p.endpoint))
        throw DomainError("argument", "needs argument > 2 * endpoint so that t_imb > 0");
    return incomplete_modified_bessel_direct(0.0, p.argument,
                                             std::log(p.argument / (2.0 * p.endpoint)), tol);
}

}  // namespace shu
