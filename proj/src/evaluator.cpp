#include "shu/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "shu/expansions.hpp"
#include "shu/quadrature.hpp"
#include "parallel.hpp"

namespace shu {

namespace {

bool acceptable(const Evaluation& ev, const Tolerances& tol, std::string& code) {
    if (ev.flags.cancellation) {
        code = "CANCELLATION";
        return false;
    }
    if (!std::isfinite(ev.value) || !(ev.error_estimate <= tol.target(ev.value))) {
        code = "ERROR_ABOVE_TARGET";
        return false;
    }
    return true;
}

// Runs one candidate; on rejection records the reason and returns nothing.
template <class F>
std::optional<Evaluation> attempt(MethodTag tag, const Tolerances& tol, RegimeDecision& d, F&& f) {
    std::string code;
    try {
        Evaluation ev = f();
        if (acceptable(ev, tol, code)) return ev;
    } catch (const NonConvergence&) {
        code = "NON_CONVERGENCE";
    } catch (const OverflowError&) {
        code = "OVERFLOW";
    } catch (const PoleError&) {
        code = "POLE";
    }
    d.candidates_tried.emplace_back(tag, code);
    return std::nullopt;
}

}  // namespace

bool closed_form_half_validated() {
    static const bool ok = [] {
        const Tolerances tight = tight_tolerances();
        for (double nu : {-0.5, 0.5})
            for (double z : {0.5, 1.0, 3.0, 8.0})
                for (double t : {0.2, 1.0, 3.0, 10.0}) {
                    const ShuParams p{nu, z, t};
                    const double ref = shu_oracle(p, tight).value;
                    const double cf = closed_form_half(p).value;
                    if (!(std::fabs(cf - ref) <= 1e-10 * std::fabs(ref))) return false;
                }
        return true;
    }();
    return ok;
}

DecidedEvaluation evaluate(const ShuParams& p, const Tolerances& tol,
                           const EvaluatorConfig& config) {
    check(tol);
    const double nu = p.order;
    const double z = p.argument;
    const double t = p.endpoint;
    DecidedEvaluation out;
    RegimeDecision& d = out.decision;
    auto accept = [&](const Evaluation& ev, const char* reason) {
        out.eval = ev;
        d.chosen = ev.method;
        d.reason = reason;
        return out;
    };

    if (t >= config.large_t_min) {
        // Leading correction 1/2 (z/2)^nu e^-t t^(-nu-1) must already be
        // invisible at the target accuracy.
        const double log_c0 =
            nu * std::log(0.5 * z) - t - (nu + 1.0) * std::log(t) - std::log(2.0);
        auto ev = attempt(MethodTag::AsymptLargeT, tol, d, [&] {
            Evaluation e = asympt_large_t(p, tol);
            if (!(std::exp(log_c0) < tol.target(e.value))) e.error_estimate = INFINITY;
            return e;
        });
        if (ev) return accept(*ev, "LARGE_T");
        if (d.candidates_tried.back().second == "ERROR_ABOVE_TARGET")
            d.candidates_tried.back().second = "CORRECTION_ABOVE_TARGET";
    }

    if (std::fabs(nu) == 0.5 && config.allow_closed_form_half) {
        if (!closed_form_half_validated()) {
            d.candidates_tried.emplace_back(MethodTag::ClosedFormHalf, "UNVALIDATED");
        } else {
            auto ev = attempt(MethodTag::ClosedFormHalf, tol, d, [&] { return closed_form_half(p); });
            if (ev) return accept(*ev, "CLOSED_FORM_HALF");
        }
    }

    if (0.25 * z * z / t >= config.small_t_min_ratio) {
        auto ev = attempt(MethodTag::SeriesSmallT, tol, d, [&] { return series_small_t(p, tol); });
        if (ev) return accept(*ev, "SMALL_T_CONVERGED");
    }

    if (z <= config.small_z_max) {
        auto ev = attempt(MethodTag::SeriesSmallZ, tol, d, [&] { return series_small_z(p, tol); });
        if (ev) return accept(*ev, "SMALL_Z_CONVERGED");
    }

    return accept(shu_oracle(p, tol), "FALLBACK_ORACLE");
}

std::vector<GridCell> evaluate_grid(const std::vector<double>& orders,
                                    const std::vector<double>& zs,
                                    const std::vector<double>& ts, const Tolerances& tol,
                                    const EvaluatorConfig& config, unsigned threads) {
    check(tol);
    std::vector<GridCell> cells;
    cells.reserve(orders.size() * zs.size() * ts.size());
    for (double nu : orders)
        for (double z : zs)
            for (double t : ts) cells.push_back(GridCell{ShuParams{nu, z, t}, {}, {}, {}, {}});

    detail::parallel_for(cells.size(), threads, [&](std::size_t i) {
        GridCell& c = cells[i];
        try {
            const ShuParams p = validate(c.point.order, c.point.argument, c.point.endpoint);
            DecidedEvaluation r = evaluate(p, tol, config);
            c.eval = r.eval;
            c.decision = std::move(r.decision);
        } catch (const DomainError& e) {
            c.error = e.what();
            c.error_kind = "DOMAIN";
        } catch (const NonConvergence& e) {
            c.error = e.what();
            c.error_kind = "NON_CONVERGENCE";
        } catch (const OverflowError& e) {
            c.error = e.what();
            c.error_kind = "OVERFLOW";
        } catch (const PoleError& e) {
            c.error = e.what();
            c.error_kind = "POLE";
        } catch (const std::exception& e) {
            c.error = e.what();
            c.error_kind = "INTERNAL";
        }
    });
    return cells;
}

}  // namespace shu
