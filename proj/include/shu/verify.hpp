// The verification battery behind `shu verify`: oracle cross-checks,
// identity residuals, related-function round trips and expansion ratio laws.

#pragma once

#include <string>
#include <vector>

#include "shu/core.hpp"
#include "shu/relations.hpp"

namespace shu {

struct VerifyRecord {
    std::string identity;
    ShuParams point{};
    double residual = 0.0;  // for ratio laws: the measured deviation ratio
    double scale = 1.0;
    double relative_residual = 0.0;
    double tolerance = 0.0;  // for bracketed laws: the upper end of the bracket
    bool pass = false;
    std::string error;  // set when the check threw instead of producing a residual
};

enum class VerifyGrid { Default, Dense };

struct VerifyOptions {
    VerifyGrid grid = VerifyGrid::Default;
    bool fail_fast = false;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct IdentitySummary {
    std::string identity;
    std::size_t points = 0;
    std::size_t failures = 0;
    double worst = 0.0;  // max relative residual (or worst law ratio)
    double tolerance = 0.0;
};

struct VerifyReport {
    std::vector<VerifyRecord> records;
    bool stopped_early = false;

    bool all_pass() const;
    /// One entry per identity, in first-appearance order.
    std::vector<IdentitySummary> summary() const;
};

/// Grids used by the identity battery.
struct VerifyAxes {
    std::vector<double> orders, zs, ts;
};
VerifyAxes identity_axes(VerifyGrid grid);

/// Runs the battery. `src` feeds the identity residuals; the oracle
/// cross-checks, round trips and ratio laws always use the real oracle.
VerifyReport run_verify(const VerifyOptions& options, const ShuSource& src = default_source());

/// Identity residuals only (Rec1, Rec2, RecSum, DzLadder, Diff1, Diff2,
/// Diff1-k2, Diff2-k2, PDE-Exact, PDE-FD), one record per identity per point.
std::vector<VerifyRecord> identity_battery(const VerifyAxes& axes, const ShuSource& src,
                                           unsigned threads = 0);

/// Number of identities identity_battery checks at each point.
inline constexpr std::size_t kIdentityCount = 10;

}  // namespace shu
