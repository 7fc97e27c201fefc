#include "shu/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace shu {

namespace {

// Kronrod abscissae / weights (15 points) and the embedded 7-point Gauss
// weights, as tabulated in QUADPACK's qk15.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kMaxPanels = 4000;

struct Panel {
    double a, b;
    double value, error, resabs;
    int depth;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b, int depth) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double fc = f(centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::fabs(resk);
    std::array<double, 7> fv1{}, fv2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = hlgth * kXgk[j];
        const double f1 = f(centr - dx);
        const double f2 = f(centr + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

    const double result = resk * hlgth;
    resabs *= std::fabs(hlgth);
    resasc *= std::fabs(hlgth);
    double err = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > limits::min_normal / (50.0 * limits::eps))
        err = std::max(50.0 * limits::eps * resabs, err);
    return Panel{a, b, result, err, resabs, depth};
}

QuadratureResult integrate_finite(const Integrand& f, std::vector<double> edges,
                                  const Tolerances& tol) {
    std::priority_queue<Panel> open;
    std::vector<Panel> frozen;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gk15(f, edges[i], edges[i + 1], 0);
        total += p.value;
        total_err += p.error;
        open.push(p);
    }
    int panels = static_cast<int>(open.size());

    auto settle = [&] {
        // Resum from scratch so that running-sum drift never decides convergence.
        double v = 0.0, e = 0.0;
        auto copy = open;
        while (!copy.empty()) {
            v += copy.top().value;
            e += copy.top().error;
            copy.pop();
        }
        for (const auto& p : frozen) {
            v += p.value;
            e += p.error;
        }
        total = v;
        total_err = e;
    };

    while (true) {
        if (total_err <= tol.target(total)) {
            settle();
            if (total_err <= tol.target(total))
                return {total, total_err, panels, true};
        }
        if (open.empty() || panels >= kMaxPanels) break;

        Panel worst = open.top();
        open.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.depth >= tol.max_depth || !(mid > worst.a && mid < worst.b)) {
            frozen.push_back(worst);
            continue;
        }
        Panel left = gk15(f, worst.a, mid, worst.depth + 1);
        Panel right = gk15(f, mid, worst.b, worst.depth + 1);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        open.push(left);
        open.push(right);
        ++panels;
    }
    settle();
    return {total, total_err, panels, total_err <= tol.target(total)};
}

}  // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const Tolerances& tol,
                                    std::span<const double> breakpoints) {
    check(tol);
    if (!std::isfinite(a) || std::isnan(b) || !(a < b))
        throw DomainError("interval", "integrate_adaptive needs finite a < b");

    std::vector<double> edges;
    if (std::isinf(b)) {
        auto to_u = [a](double x) { return (x - a) / (1.0 + (x - a)); };
        edges.push_back(0.0);
        for (double x : breakpoints)
            if (x > a && std::isfinite(x)) edges.push_back(to_u(x));
        edges.push_back(1.0);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        Integrand g = [&f, a](double u) {
            const double w = 1.0 - u;
            const double x = a + u / w;
            if (!std::isfinite(x)) return 0.0;
            const double fx = f(x);
            return fx == 0.0 ? 0.0 : fx / (w * w);
        };
        return integrate_finite(g, std::move(edges), tol);
    }

    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return integrate_finite(f, std::move(edges), tol);
}

Evaluation integrate_exp_of(const std::function<double(double)>& log_f, double a,
                            double b, double log_peak, const Tolerances& tol,
                            MethodTag tag, std::span<const double> breakpoints) {
    check(tol);
    Evaluation ev;
    ev.method = tag;
    if (!std::isfinite(log_peak)) {
        if (log_peak > 0.0) throw OverflowError("integrand overflows");
        ev.flags.underflow_to_zero = true;
        return ev;
    }
    // Widths here are O(1e4) at most, so a peak 50 e-folds below the
    // smallest normal cannot produce a normal result.
    if (log_peak < limits::log_min_normal - 50.0) {
        ev.flags.underflow_to_zero = true;
        return ev;
    }

    Tolerances scaled = tol;
    scaled.abs_tol = tol.abs_tol > 0.0 ? tol.abs_tol * std::exp(-log_peak) : 0.0;
    if (std::isinf(scaled.abs_tol)) scaled.abs_tol = limits::max_double;

    Integrand f = [&log_f, log_peak](double x) {
        const double l = log_f(x) - log_peak;
        return l < -limits::underflow_exponent ? 0.0 : std::exp(l);
    };
    QuadratureResult q = integrate_adaptive(f, a, b, scaled, breakpoints);
    if (!q.converged) {
        const double s = std::exp(log_peak);
        throw NonConvergence("adaptive quadrature did not converge", q.value * s,
                             q.error_estimate * s);
    }

    const double log_value = std::log(q.value) + log_peak;
    if (q.value > 0.0 && log_value > limits::log_max)
        throw OverflowError("integral exceeds the double range");
    ev.work = q.subdivisions;
    if (!(q.value > 0.0) || log_value < limits::log_min_normal) {
        ev.value = 0.0;
        ev.error_estimate = 0.0;
        ev.flags.underflow_to_zero = true;
        return ev;
    }
    ev.value = std::exp(log_value);
    ev.error_estimate = q.error_estimate * std::exp(log_peak);
    return ev;
}

namespace {

// Largest x in [lo, hi] with g(x) <= level for g increasing on [lo, hi]
// (or smallest, for decreasing g), by bisection in x.
double bisect_level(const std::function<double(double)>& g, double lo, double hi,
                    double level, bool increasing) {
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool below = g(mid) <= level;
        if (below == increasing)
            lo = mid;
        else
            hi = mid;
    }
    return increasing ? lo : hi;
}

// Integrand of the defining integral over tau, in log form, including the
// prefactor 1/2 (z/2)^nu.
auto tau_log_integrand(const ShuParams& p) {
    const double nu = p.order;
    const double c = 0.25 * p.argument * p.argument;
    const double log_pref = -std::log(2.0) + nu * std::log(0.5 * p.argument);
    return [=](double tau) {
        return log_pref - (nu + 1.0) * std::log(tau) - tau - c / tau;
    };
}

// Mode of tau^(-nu-1) exp(-tau - c/tau).
double tau_mode(double nu, double c) {
    const double b = nu + 1.0;
    // Root of tau^2 + b tau - c = 0, written to avoid cancellation.
    return b >= 0.0 ? 2.0 * c / (b + std::sqrt(b * b + 4.0 * c))
                    : 0.5 * (-b + std::sqrt(b * b + 4.0 * c));
}

}  // namespace

Evaluation shu_oracle(const ShuParams& p, const Tolerances& tol) {
    const double nu = p.order;
    const double z = p.argument;
    const double c = 0.25 * z * z;
    const double y0 = c / p.endpoint;
    const double log_pref = -std::log(2.0) - nu * std::log(0.5 * z);
    auto log_f = [=](double y) {
        return log_pref + (nu - 1.0) * std::log(y) - y - c / y;
    };
    // Mode of y^(nu-1) exp(-y - c/y): root of y^2 - (nu-1) y - c = 0.
    const double b = nu - 1.0;
    const double y_mode = b >= 0.0 ? 0.5 * (b + std::sqrt(b * b + 4.0 * c))
                                   : 2.0 * c / (-b + std::sqrt(b * b + 4.0 * c));
    const double peak_at = std::max(y0, y_mode);
    std::array<double, 2> bp{y_mode, peak_at + 1.0};
    return integrate_exp_of(log_f, y0, INFINITY, log_f(peak_at), tol,
                            MethodTag::Oracle5, bp);
}

Evaluation shu_oracle_direct(const ShuParams& p, const Tolerances& tol) {
    const double t = p.endpoint;
    const double c = 0.25 * p.argument * p.argument;
    const auto log_f = tau_log_integrand(p);
    const double mode = tau_mode(p.order, c);
    const double peak_at = std::min(mode, t);
    const double log_peak = log_f(peak_at);

    // log_f increases on (0, mode]; clamp the left end where it sits
    // `underflow_exponent` below the peak.
    const double level = log_peak - limits::underflow_exponent;
    const double nu = p.order;
    const double log_pref = log_f(1.0) + 1.0 + c;
    std::function<double(double)> g = [=](double lt) {
        return log_pref - (nu + 1.0) * lt - std::exp(lt) - c * std::exp(-lt);
    };
    double tau0 = 0.0;
    const double lt_peak = std::log(peak_at);
    if (g(lt_peak - 690.0) < level)
        tau0 = std::exp(bisect_level(g, lt_peak - 690.0, lt_peak, level, true));
    if (!(tau0 < t)) {
        Evaluation ev;
        ev.method = MethodTag::Oracle2;
        ev.flags.underflow_to_zero = true;
        return ev;
    }
    std::array<double, 1> bp{mode};
    return integrate_exp_of(log_f, tau0, t, log_peak, tol, MethodTag::Oracle2, bp);
}

Evaluation shu_oracle_cosh(const ShuParams& p, const Tolerances& tol) {
    const double nu = p.order;
    const double z = p.argument;
    const double w0 = std::log(z / (2.0 * p.endpoint));
    const double log_half = -std::log(2.0);
    auto log_f = [=](double w) { return log_half - z * std::cosh(w) + nu * w; };
    const double w_mode = std::asinh(nu / z);
    const double peak_at = std::max(w0, w_mode);
    const double log_peak = log_f(peak_at);

    // Beyond the peak log_f falls at least as fast as -z sinh(w - peak);
    // truncate where it is `underflow_exponent` below the peak.
    const double level = log_peak - limits::underflow_exponent;
    double hi = peak_at + 1.0;
    while (log_f(hi) > level) hi = peak_at + 2.0 * (hi - peak_at);
    std::function<double(double)> g = log_f;
    const double w_end = bisect_level(g, peak_at, hi, level, false);
    std::array<double, 1> bp{w_mode};
    return integrate_exp_of(log_f, w0, w_end, log_peak, tol, MethodTag::Oracle4, bp);
}

Evaluation shu_complement_oracle(const ShuParams& p, const Tolerances& tol) {
    const double t = p.endpoint;
    const double c = 0.25 * p.argument * p.argument;
    const auto log_f = tau_log_integrand(p);
    const double mode = tau_mode(p.order, c);
    const double peak_at = std::max(mode, t);
    std::array<double, 1> bp{mode};
    return integrate_exp_of(log_f, t, INFINITY, log_f(peak_at), tol, MethodTag::Oracle2,
                            bp);
}

}  // namespace shu
