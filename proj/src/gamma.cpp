#include "shu/gamma.hpp"

#include <array>
#include <cmath>
#include <string>

#include "shu/quadrature.hpp"

namespace shu {

namespace {

constexpr double kEulerGamma = 0.577215664901532860606512;
constexpr int kMaxIterations = 10000;

bool is_nonpositive_integer(double a) { return a <= 0.0 && a == std::floor(a); }

void require_positive_x(double x) {
    if (!std::isfinite(x) || !(x > 0.0))
        throw DomainError("x", "incomplete gamma needs finite x > 0");
}

// ln Gamma(1 + a) for |a| <= 0.1:  -gamma a + sum_k (-1)^k zeta(k) a^k / k.
double lgamma1p_small(double a) {
    static constexpr std::array<double, 9> kZeta{
        1.644934066848226436, 1.202056903159594285, 1.082323233711138192,
        1.036927755143369926, 1.017343061984449140, 1.008349277381922827,
        1.004077356197944339, 1.002008392826082214, 1.000994575127818085};
    double sum = -kEulerGamma * a;
    double ak = -a;
    for (int k = 2; k <= 22; ++k) {
        ak *= -a;
        double zeta;
        if (k <= 10) {
            zeta = kZeta[k - 2];
        } else {
            zeta = 1.0;
            for (int n = 2; n <= 12; ++n) zeta += std::pow(n, -k);
        }
        sum += zeta * ak / k;
    }
    return sum;
}

// Gamma(1 + a) - 1 without cancellation for |a| <= 1/2.
double gamma1pm1(double a) {
    if (std::fabs(a) <= 0.1) return std::expm1(lgamma1p_small(a));
    return std::tgamma(1.0 + a) - 1.0;
}

// Legendre continued fraction for Gamma(a, x) e^x x^-a, modified Lentz.
double gamma_cf_reduced(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < limits::eps) return h;
    }
    throw NonConvergence("incomplete gamma continued fraction", h, INFINITY);
}

double gamma_continued_fraction(double a, double x) {
    const double h = gamma_cf_reduced(a, x);
    const double log_pref = a * std::log(x) - x;
    if (log_pref + std::log(h) > limits::log_max) throw OverflowError("Gamma(a, x) overflows");
    return std::exp(log_pref) * h;
}

bool use_continued_fraction(double a, double x) {
    return x >= 1.0 && (x >= a + 1.0 || a <= 0.5);
}

// gamma(a, x) = x^a e^-x sum_n x^n / (a (a+1) ... (a+n)), a > 0.
double lower_gamma_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 1; n <= kMaxIterations; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * limits::eps)
            return sum * std::exp(a * std::log(x) - x);
    }
    throw NonConvergence("lower incomplete gamma series", sum, INFINITY);
}

// Gamma(a0, x) for |a0| <= 1/2, 0 < x < 1:
//   (Gamma(1+a0) - x^a0) / a0  -  x^a0 sum_{n>=1} (-x)^n / (n! (a0 + n)).
// The first group is the regular part of Gamma(a0) - x^a0 / a0; at a0 = 0 it
// is -gamma - ln x and the whole expression is E1(x).
double small_order_base(double a0, double x) {
    const double lx = std::log(x);
    const double head = a0 == 0.0 ? -kEulerGamma - lx
                                  : (gamma1pm1(a0) - std::expm1(a0 * lx)) / a0;
    double term = 1.0;
    double sum = 0.0;
    for (int n = 1; n <= kMaxIterations; ++n) {
        term *= -x / n;
        const double add = term / (a0 + n);
        sum += add;
        if (std::fabs(add) < limits::eps * std::fabs(sum)) break;
    }
    const double xa = a0 == 0.0 ? 1.0 : std::exp(a0 * lx);
    return head - xa * sum;
}

}  // namespace

double gamma(double a) {
    if (!std::isfinite(a)) throw DomainError("a", "gamma needs a finite argument");
    if (is_nonpositive_integer(a))
        throw PoleError("gamma has a pole at a = " + std::to_string(a));
    const double g = std::tgamma(a);
    if (!std::isfinite(g)) throw OverflowError("gamma overflows at a = " + std::to_string(a));
    return g;
}

double exp_integral_e1(double x) {
    require_positive_x(x);
    if (x < 1.0) return small_order_base(0.0, x);
    return gamma_continued_fraction(0.0, x);
}

double upper_incomplete_gamma(double a, double x) {
    require_positive_x(x);
    if (!std::isfinite(a)) throw DomainError("a", "incomplete gamma needs a finite order");

    if (use_continued_fraction(a, x)) return gamma_continued_fraction(a, x);
    if (a > 0.5) return gamma(a) - lower_gamma_series(a, x);

    // x < 1, a <= 1/2.
    const double shift = std::ceil(a - 0.5);  // <= 0
    double order = a - shift;                 // in (-1/2, 1/2]
    double value = small_order_base(order, x);
    const double lx = std::log(x);
    for (int j = 0; j < static_cast<int>(-shift); ++j) {
        value = (value - std::exp((order - 1.0) * lx - x)) / (order - 1.0);
        order -= 1.0;
        if (!std::isfinite(value)) throw OverflowError("Gamma(a, x) overflows");
    }
    return value;
}

double log_upper_incomplete_gamma(double a, double x) {
    require_positive_x(x);
    if (!std::isfinite(a)) throw DomainError("a", "incomplete gamma needs a finite order");
    if (use_continued_fraction(a, x))
        return a * std::log(x) - x + std::log(gamma_cf_reduced(a, x));
    return std::log(upper_incomplete_gamma(a, x));
}

TruncatedSum incomplete_gamma_asymptotic(double a, double x, int m_max) {
    require_positive_x(x);
    if (m_max < 0) throw DomainError("m_max", "m_max must be non-negative");
    const double log_pref = (a - 1.0) * std::log(x) - x;
    if (log_pref > limits::log_max) throw OverflowError("asymptotic prefactor overflows");
    const double pref = std::exp(log_pref);

    TruncatedSum out;
    double term = 1.0;
    double sum = 1.0;
    out.terms_used = 1;
    out.last_term = 1.0;
    double omitted = 0.0;
    for (int m = 1; m <= m_max + 1; ++m) {
        const double next = -term * (m - a) / x;  // (1-a)_m = (1-a)_{m-1} (m - a)
        if (m == m_max + 1 || next == 0.0 || std::fabs(next) >= std::fabs(term)) {
            omitted = next;
            break;
        }
        term = next;
        sum += term;
        ++out.terms_used;
        out.last_term = std::fabs(term);
    }
    out.value = pref * sum;
    out.last_term *= pref;
    out.tail_bound = std::fabs(omitted) * pref;
    return out;
}

double pochhammer(double a, int m) {
    if (m < 0) throw DomainError("m", "pochhammer needs m >= 0");
    double p = 1.0;
    for (int i = 0; i < m; ++i) {
        p *= a + i;
        if (p == 0.0) return 0.0;
        if (!std::isfinite(p)) throw OverflowError("pochhammer overflows");
    }
    return p;
}

KValue macdonald_k_detailed(double order, double z) {
    if (!std::isfinite(z) || !(z > 0.0)) throw DomainError("z", "K_nu(z) needs z > 0");
    if (!std::isfinite(order)) throw DomainError("order", "K_nu(z) needs a finite order");
    const double nu = std::fabs(order);
    // exp(-z cosh w) cosh(nu w) = exp(-z cosh w + nu w) (1 + e^{-2 nu w}) / 2
    auto log_f = [=](double w) {
        return -z * std::cosh(w) + nu * w + std::log1p(std::exp(-2.0 * nu * w)) - std::log(2.0);
    };
    const double w_mode = std::asinh(nu / z);
    const double log_peak = std::max(log_f(w_mode), log_f(0.0));
    const double level = log_peak - limits::underflow_exponent;
    double hi = w_mode + 1.0;
    while (log_f(hi) > level) hi = w_mode + 2.0 * (hi - w_mode);
    double lo = w_mode;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (log_f(mid) > level ? lo : hi) = mid;
    }
    const std::array<double, 1> bp{w_mode};
    const Evaluation ev = integrate_exp_of(log_f, 0.0, hi, log_peak,
                                           Tolerances::relative(3e-14), MethodTag::Oracle4, bp);
    return KValue{ev.value, ev.error_estimate, ev.flags.underflow_to_zero};
}

double macdonald_k(double order, double z) { return macdonald_k_detailed(order, z).value; }

}  // namespace shu
