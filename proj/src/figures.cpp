#include "shu/figures.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "parallel.hpp"
#include "shu/core.hpp"
#include "shu/expansions.hpp"
#include "shu/gamma.hpp"
#include "shu/quadrature.hpp"

namespace shu {

namespace {

struct Layout {
    bool sweep_t;  // otherwise sweep x
    double fixed;
    double lo, hi;
};

Layout default_layout(int id) {
    switch (id) {
        case 1: return {true, 3.0, 0.05, 20.0};
        case 2: return {false, 3.0, 0.5, 12.0};
        case 3: return {true, 3.0, 0.01, 0.5};
        case 4: return {false, 3.0, 0.01, 1.0};
        case 5: return {true, 3.0, 5.0, 60.0};
        case 6: return {false, 3.0, 6.0, 40.0};
        default: throw DomainError("id", "figure id must be 1..6");
    }
}

std::string order_label(double n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", n);
    return buf;
}

// Leading-term overlay for figures 3-6; nullopt where it is undefined.
std::optional<double> approximant(int id, const ShuParams& p) {
    try {
        Approximant a;
        switch (id) {
            case 3: a = leading_small_t(p); break;
            case 4: a = leading_small_z(p); break;
            case 5: a = leading_large_t(p); break;
            case 6:
                if (!(p.argument > 2.0 * p.endpoint)) return std::nullopt;
                a = leading_large_z(p);
                break;
            default: return std::nullopt;
        }
        return a.value;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<double> log_space(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
        throw DomainError("range", "sweep range needs 0 < lo < hi");
    if (n < 2) throw DomainError("points", "need at least 2 points");
    std::vector<double> v(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) v[i] = lo * std::exp(step * i);
    v.front() = lo;
    v.back() = hi;
    return v;
}

FigureTable make_figure(const FigureOptions& options) {
    Layout layout = default_layout(options.id);
    if (options.lo) layout.lo = *options.lo;
    if (options.hi) layout.hi = *options.hi;
    if (options.fixed) layout.fixed = *options.fixed;
    if (!std::isfinite(layout.fixed) || !(layout.fixed > 0.0))
        throw DomainError("fixed", "the fixed coordinate must be > 0");
    if (options.orders.empty()) throw DomainError("orders", "need at least one order");
    for (double n : options.orders)
        if (!std::isfinite(n)) throw DomainError("orders", "orders must be finite");

    const std::vector<double> sweep = log_space(layout.lo, layout.hi, options.points);
    const bool overlay = options.id >= 3;

    FigureTable table;
    table.header.push_back(layout.sweep_t ? "t" : "x");
    for (double n : options.orders) {
        table.header.push_back("S_n" + order_label(n));
        if (overlay) table.header.push_back("approx_n" + order_label(n));
    }

    const Tolerances tol = Tolerances::relative(1e-12);
    table.rows.assign(sweep.size(), {});
    detail::parallel_for(sweep.size(), options.threads, [&](std::size_t i) {
        auto& row = table.rows[i];
        row.push_back(sweep[i]);
        for (double n : options.orders) {
            const ShuParams p = layout.sweep_t ? ShuParams{n, layout.fixed, sweep[i]}
                                               : ShuParams{n, sweep[i], layout.fixed};
            try {
                row.push_back(shu_oracle(p, tol).value);
            } catch (const Error&) {
                row.push_back(std::nullopt);
            }
            if (overlay) row.push_back(approximant(options.id, p));
        }
    });
    return table;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const FigureTable& table) {
    std::string out;
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (j) out += ',';
        out += table.header[j];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            if (row[j]) out += format_double(*row[j]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace shu
