// Regime-switching front end for S_nu(z, t).

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shu/core.hpp"

namespace shu {

/// Switching thresholds. Read-only once an evaluation starts.
struct EvaluatorConfig {
    double large_t_min = 30.0;       // try the large-t expansion at t >= this
    double small_t_min_ratio = 2.0;  // try the small-t series at z^2/(4t) >= this
    double small_z_max = 1.0;        // try the small-z series at z <= this
    bool allow_closed_form_half = true;
};

struct RegimeDecision {
    MethodTag chosen = MethodTag::Oracle5;
    std::string reason;
    std::vector<std::pair<MethodTag, std::string>> candidates_tried;  // (method, rejection code)

    friend bool operator==(const RegimeDecision&, const RegimeDecision&) = default;
};

struct DecidedEvaluation {
    Evaluation eval;
    RegimeDecision decision;
};

/// Tries, in order: large-t expansion (t >= 30 and the leading correction
/// already below target), the erfc closed form (nu = +-1/2), the small-t
/// series (z^2/(4t) >= 2), the small-z series (z <= 1), and finally the
/// quadrature oracle. A candidate is accepted only when its own error
/// estimate meets tol.target(value) and it raised no cancellation flag.
/// Only the oracle's failure propagates.
DecidedEvaluation evaluate(const ShuParams& p, const Tolerances& tol,
                           const EvaluatorConfig& config = {});

/// Whether the erfc closed form reproduced the oracle on its check grid.
/// Computed once per process.
bool closed_form_half_validated();

struct GridCell {
    ShuParams point{};
    std::optional<Evaluation> eval;  // empty when the cell failed
    RegimeDecision decision;
    std::string error;       // exception text for failed cells
    std::string error_kind;  // DOMAIN, NON_CONVERGENCE, OVERFLOW, POLE, INTERNAL
};

/// Row-major over orders x zs x ts (order slowest). Cells are independent
/// and computed on up to `threads` threads (0 = hardware concurrency); the
/// output order never depends on scheduling.
std::vector<GridCell> evaluate_grid(const std::vector<double>& orders,
                                    const std::vector<double>& zs,
                                    const std::vector<double>& ts, const Tolerances& tol,
                                    const EvaluatorConfig& config = {}, unsigned threads = 0);

}  // namespace shu
