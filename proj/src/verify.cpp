#include "shu/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "parallel.hpp"
#include "shu/expansions.hpp"
#include "shu/quadrature.hpp"

namespace shu {

namespace {

constexpr double kFirstOrderTol = 1e-6;
constexpr double kPdeExactTol = 1e-7;
constexpr double kSecondOrderTol = 1e-4;
constexpr double kPdeFdTol = 1e-5;
constexpr double kOracleFormsTol = 1e-9;
constexpr double kRelatedTol = 1e-8;
constexpr double kInverseTol = 1e-9;

VerifyRecord from_residual(const ResidualReport& r, double tol) {
    VerifyRecord v;
    v.identity = r.identity;
    v.point = r.point;
    v.residual = r.residual;
    v.scale = r.scale;
    v.relative_residual = r.relative_residual;
    v.tolerance = tol;
    v.pass = r.relative_residual <= tol;
    return v;
}

VerifyRecord failed(std::string identity, const ShuParams& p, double tol, const std::exception& e) {
    VerifyRecord v;
    v.identity = std::move(identity);
    v.point = p;
    v.residual = NAN;
    v.relative_residual = NAN;
    v.tolerance = tol;
    v.pass = false;
    v.error = e.what();
    return v;
}

VerifyRecord compare(std::string identity, const ShuParams& p, double value, double reference,
                     double tol) {
    VerifyRecord v;
    v.identity = std::move(identity);
    v.point = p;
    v.residual = value - reference;
    v.scale = std::fabs(reference) > 0.0 ? std::fabs(reference) : limits::min_normal;
    v.relative_residual = std::fabs(v.residual) / v.scale;
    v.tolerance = tol;
    v.pass = v.relative_residual <= tol;
    return v;
}

VerifyRecord law(std::string identity, const ShuParams& p, double ratio, double lo, double hi) {
    VerifyRecord v;
    v.identity = std::move(identity);
    v.point = p;
    v.residual = ratio;
    v.scale = 1.0;
    v.relative_residual = ratio;
    v.tolerance = hi;
    v.pass = ratio >= lo && ratio <= hi;
    return v;
}

using Check = std::function<VerifyRecord()>;

// Checks run concurrently; each keeps its slot, so the order is fixed.
class CheckList {
public:
    void add(std::string name, const ShuParams& p, double tol, Check c) {
        items_.push_back({std::move(name), p, tol, std::move(c)});
    }

    std::vector<VerifyRecord> run(unsigned threads) const {
        std::vector<VerifyRecord> out(items_.size());
        detail::parallel_for(items_.size(), threads, [&](std::size_t i) {
            const Item& item = items_[i];
            try {
                out[i] = item.check();
            } catch (const std::exception& e) {
                out[i] = failed(item.name, item.point, item.tol, e);
            }
        });
        return out;
    }

private:
    struct Item {
        std::string name;
        ShuParams point;
        double tol;
        Check check;
    };
    std::vector<Item> items_;
};

double oracle(const ShuParams& p) { return shu_oracle(p, tight_tolerances()).value; }

std::vector<VerifyRecord> oracle_forms(VerifyGrid grid, unsigned threads) {
    std::vector<double> orders{-2, -0.5, 0, 0.5, 1, 2, 5};
    std::vector<double> zs{0.5, 1, 3, 8};
    std::vector<double> ts{0.2, 1, 3, 10};
    if (grid == VerifyGrid::Dense) {
        orders = {-3, -2, -1.5, -0.5, 0, 0.25, 0.5, 1, 1.5, 2, 3.5, 5};
        zs = {0.1, 0.5, 1, 2, 3, 5, 8, 15};
        ts = {0.05, 0.2, 0.5, 1, 3, 10, 30};
    }
    CheckList list;
    for (double nu : orders)
        for (double z : zs)
            for (double t : ts) {
                const ShuParams p{nu, z, t};
                list.add("OracleForms", p, kOracleFormsTol, [p] {
                    const Tolerances tol = tight_tolerances();
                    const double o5 = shu_oracle(p, tol).value;
                    const double o2 = shu_oracle_direct(p, tol).value;
                    const double o4 = shu_oracle_cosh(p, tol).value;
                    const double worst = std::max({std::fabs(o5 - o2), std::fabs(o5 - o4),
                                                   std::fabs(o2 - o4)});
                    return compare("OracleForms", p, o5 + worst, o5, kOracleFormsTol);
                });
            }
    return list.run(threads);
}

std::vector<VerifyRecord> related_functions(unsigned threads) {
    CheckList list;
    for (double a : {-0.5, 0.5, 1.5})
        for (double z : {0.5, 1.0, 2.0})
            for (double t : {0.5, 1.0, 2.0}) {
                const ShuParams p{a, z, t};
                list.add("GenIncGamma", p, kRelatedTol, [=] {
                    return compare("GenIncGamma", p, gen_incomplete_gamma(a, t, z),
                                   gen_incomplete_gamma_direct(a, t, z), kRelatedTol);
                });
            }
    for (double a : {-0.5, 0.0, 1.0})
        for (double z : {0.5, 1.0, 2.0})
            for (double t : {0.5, 1.0, 2.0}) {
                const ShuParams p{a, z, t};
                list.add("LeakyAquifer", p, kRelatedTol, [=] {
                    return compare("LeakyAquifer", p, leaky_aquifer(a, z, t),
                                   leaky_aquifer_direct(a, z, t), kRelatedTol);
                });
            }
    for (double a : {0.0, 0.5, 1.0})
        for (double z : {1.0, 3.0, 8.0})
            for (double t : {0.5, 1.0, 2.0}) {
                const ShuParams p{a, z, t};
                list.add("IncModBessel", p, kRelatedTol, [=] {
                    return compare("IncModBessel", p, incomplete_modified_bessel(a, z, t),
                                   incomplete_modified_bessel_direct(a, z, t), kRelatedTol);
                });
            }
    for (double nu : {-0.5, 0.0, 1.0})
        for (double z : {1.0, 3.0, 8.0})
            for (double t : {0.5, 2.0, 10.0}) {
                const ShuParams p{nu, z, t};
                list.add("GenIncGammaInverse", p, kInverseTol, [=] {
                    return compare("GenIncGammaInverse", p, shu_via_gen_incomplete_gamma(p),
                                   oracle(p), kInverseTol);
                });
                list.add("LeakyAquiferInverse", p, kInverseTol, [=] {
                    return compare("LeakyAquiferInverse", p, shu_via_leaky_aquifer(p), oracle(p),
                                   kInverseTol);
                });
            }
    for (double z : {1.0, 3.0, 8.0})
        for (double t : {0.2, 0.4, 1.0}) {
            if (!(z > 2.0 * t)) continue;
            const ShuParams p{0.0, z, t};
            list.add("IncModBesselInverse", p, kInverseTol, [=] {
                return compare("IncModBesselInverse", p, shu_via_incomplete_modified_bessel(p),
                               oracle(p), kInverseTol);
            });
        }
    return list.run(threads);
}

std::vector<VerifyRecord> ratio_laws(unsigned threads) {
    auto small_t_dev = [](double nu, double z, double t) {
        const ShuParams p{nu, z, t};
        return std::fabs(oracle(p) / leading_small_t(p).value - 1.0);
    };
    auto large_z_dev = [](double nu, double z, double t) {
        const ShuParams p{nu, z, t};
        return std::fabs(oracle(p) / leading_large_z(p).value - 1.0);
    };
    auto small_z_dev = [](double nu, double z, double t) {
        const ShuParams p{nu, z, t};
        return std::fabs(oracle(p) / leading_small_z(p).value - 1.0);
    };
    CheckList list;
    for (double nu : {0.0, 1.0, 2.0, 3.0})
        for (double t : {0.05, 0.025}) {
            const ShuParams p{nu, 3.0, t};
            list.add("SmallTLaw", p, 2.5, [=] {
                return law("SmallTLaw", p, small_t_dev(nu, 3.0, 2.0 * t) / small_t_dev(nu, 3.0, t),
                           1.5, 2.5);
            });
        }
    for (double nu : {0.0, 3.0}) {
        const ShuParams p{nu, 24.0, 1.0};
        list.add("LargeZLaw", p, 2.6, [=] {
            return law("LargeZLaw", p, large_z_dev(nu, 12.0, 1.0) / large_z_dev(nu, 24.0, 1.0), 1.4,
                       2.6);
        });
    }
    {
        const ShuParams p{0.0, 1e-4, 3.0};
        list.add("SmallZLaw", p, 1.0, [=] {
            VerifyRecord v = law("SmallZLaw", p, small_z_dev(0.0, 1e-4, 3.0) / small_z_dev(0.0, 1e-2, 3.0),
                                 0.0, 1.0);
            v.pass = v.residual < 1.0;
            return v;
        });
    }
    return list.run(threads);
}

}  // namespace

VerifyAxes identity_axes(VerifyGrid grid) {
    if (grid == VerifyGrid::Dense)
        return {{-1.5, -0.5, 0, 0.5, 1, 1.5, 2, 3}, {0.5, 1, 2, 3, 5, 8}, {0.2, 0.5, 1, 2, 5, 10}};
    return {{-0.5, 0, 0.5, 1, 2}, {1, 3, 8}, {0.5, 2, 10}};
}

std::vector<VerifyRecord> identity_battery(const VerifyAxes& axes, const ShuSource& src,
                                           unsigned threads) {
    CheckList list;
    const ShuSource* s = &src;
    for (double nu : axes.orders)
        for (double z : axes.zs)
            for (double t : axes.ts) {
                const ShuParams p{nu, z, t};
                list.add("Rec1", p, kFirstOrderTol,
                         [=] { return from_residual(recurrence1_residual(p, *s), kFirstOrderTol); });
                list.add("Rec2", p, kFirstOrderTol, [=] {
                    return from_residual(recurrence2_residual(p, *s, kFirstOrderTol), kFirstOrderTol);
                });
                list.add("RecSum", p, kFirstOrderTol, [=] {
                    return from_residual(recurrence_sum_residual(p, *s, kFirstOrderTol),
                                         kFirstOrderTol);
                });
                list.add("DzLadder", p, kFirstOrderTol, [=] {
                    return from_residual(dz_ladder_residual(p, *s, kFirstOrderTol), kFirstOrderTol);
                });
                list.add("Diff1", p, kFirstOrderTol, [=] {
                    return from_residual(diff_relation1_residual(p, 1, *s, kFirstOrderTol),
                                         kFirstOrderTol);
                });
                list.add("Diff2", p, kFirstOrderTol, [=] {
                    return from_residual(diff_relation2_residual(p, 1, *s, kFirstOrderTol),
                                         kFirstOrderTol);
                });
                list.add("Diff1-k2", p, kSecondOrderTol, [=] {
                    return from_residual(diff_relation1_residual(p, 2, *s, kSecondOrderTol),
                                         kSecondOrderTol);
                });
                list.add("Diff2-k2", p, kSecondOrderTol, [=] {
                    return from_residual(diff_relation2_residual(p, 2, *s, kSecondOrderTol),
                                         kSecondOrderTol);
                });
                list.add("PDE-Exact", p, kPdeExactTol, [=] {
                    return from_residual(pde_residual(p, PdeMode::Exact, *s), kPdeExactTol);
                });
                list.add("PDE-FD", p, kPdeFdTol, [=] {
                    return from_residual(pde_residual(p, PdeMode::FiniteDifference, *s, kPdeFdTol),
                                         kPdeFdTol);
                });
            }
    return list.run(threads);
}

VerifyReport run_verify(const VerifyOptions& options, const ShuSource& src) {
    VerifyReport report;
    const std::vector<std::function<std::vector<VerifyRecord>()>> groups{
        [&] { return oracle_forms(options.grid, options.threads); },
        [&] { return identity_battery(identity_axes(options.grid), src, options.threads); },
        [&] { return related_functions(options.threads); },
        [&] { return ratio_laws(options.threads); },
    };
    for (const auto& group : groups) {
        std::vector<VerifyRecord> records = group();
        for (VerifyRecord& r : records) {
            const bool pass = r.pass;
            report.records.push_back(std::move(r));
            if (!pass && options.fail_fast) {
                report.stopped_early = true;
                return report;
            }
        }
    }
    return report;
}

bool VerifyReport::all_pass() const {
    return !stopped_early &&
           std::all_of(records.begin(), records.end(), [](const VerifyRecord& r) { return r.pass; });
}

std::vector<IdentitySummary> VerifyReport::summary() const {
    std::vector<IdentitySummary> out;
    for (const VerifyRecord& r : records) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const IdentitySummary& s) { return s.identity == r.identity; });
        if (it == out.end()) {
            out.push_back({r.identity, 0, 0, 0.0, r.tolerance});
            it = out.end() - 1;
        }
        ++it->points;
        if (!r.pass) ++it->failures;
        const double v = std::isnan(r.relative_residual) ? INFINITY : r.relative_residual;
        it->worst = std::max(it->worst, v);
    }
    return out;
}

}  // namespace shu
