// shu: evaluate S_nu(z, t), tabulate it, emit plot data, run the checks.
//
// Exit codes: 0 ok, 1 usage or I/O, 2 domain, 3 non-convergence,
// 4 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shu/core.hpp"
#include "shu/evaluator.hpp"
#include "shu/expansions.hpp"
#include "shu/figures.hpp"
#include "shu/gamma.hpp"
#include "shu/quadrature.hpp"
#include "shu/verify.hpp"

namespace {

using shu::format_double;

enum Exit { kOk = 0, kUsage = 1, kDomain = 2, kNonConvergence = 3, kVerifyFailed = 4 };

std::string flag_for(const std::string& field) {
    if (field == "order") return "--nu";
    if (field == "argument") return "--z";
    if (field == "endpoint") return "--t";
    return field;
}

shu::Tolerances tolerances_from(double tol) {
    return tol > 0.0 ? shu::Tolerances::relative(tol) : shu::Tolerances{};
}

// Writes to `path`, or stdout for "-".
bool write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return std::fflush(stdout) == 0;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    f.close();
    if (!f) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    return true;
}

// Maps library exceptions to the exit-code contract.
template <class F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const shu::DomainError& e) {
        std::cerr << "error: " << flag_for(e.field()) << ": " << e.what() << "\n";
        return kDomain;
    } catch (const shu::PoleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const shu::OverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const shu::NonConvergence& e) {
        std::cerr << "error: " << e.what() << " (partial value " << format_double(e.partial_value())
                  << ", error estimate " << e.error_estimate() << ")\n";
        return kNonConvergence;
    }
}

int cmd_eval(double nu, double z, double t, const std::string& method, double tol, bool json) {
    return guarded([&] {
        const shu::ShuParams p = shu::validate(nu, z, t);
        const shu::Tolerances tl = tolerances_from(tol);
        shu::Evaluation ev;
        if (method == "auto") ev = shu::evaluate(p, tl).eval;
        else if (method == "oracle") ev = shu::shu_oracle(p, tl);
        else if (method == "small-t") ev = shu::series_small_t(p, tl);
        else if (method == "small-z") ev = shu::series_small_z(p, tl);
        else ev = shu::asympt_large_t(p, tl);
        // A forced method can finish its loop without reaching the target.
        if (!(ev.error_estimate <= tl.target(ev.value))) {
            std::cerr << "error: " << method << " did not reach the tolerance (value "
                      << format_double(ev.value) << ", error estimate " << ev.error_estimate << ")\n";
            return static_cast<int>(kNonConvergence);
        }

        if (json) {
            nlohmann::ordered_json j;
            j["value"] = ev.value;
            j["error_estimate"] = ev.error_estimate;
            j["method"] = std::string(shu::to_string(ev.method));
            j["work"] = ev.work;
            std::cout << j.dump() << "\n";
        } else {
            std::printf("%s %.3e %s %lld\n", format_double(ev.value).c_str(), ev.error_estimate,
                        std::string(shu::to_string(ev.method)).c_str(),
                        static_cast<long long>(ev.work));
        }
        return static_cast<int>(kOk);
    });
}

int cmd_kfun(double nu, double z, bool json) {
    return guarded([&] {
        if (!std::isfinite(nu)) throw shu::DomainError("order", "order must be finite");
        if (!std::isfinite(z) || !(z > 0.0)) throw shu::DomainError("argument", "z must be > 0");
        const shu::KValue k = shu::macdonald_k_detailed(nu, z);
        if (json) {
            nlohmann::ordered_json j;
            j["value"] = k.value;
            j["error_estimate"] = k.error_estimate;
            std::cout << j.dump() << "\n";
        } else {
            std::printf("%s\n", format_double(k.value).c_str());
        }
        return static_cast<int>(kOk);
    });
}

int cmd_figure(const shu::FigureOptions& options, const std::string& out) {
    return guarded([&] {
        const std::string csv = shu::to_csv(shu::make_figure(options));
        return write_output(out, csv) ? kOk : kUsage;
    });
}

int cmd_table(const std::vector<double>& nus, const std::vector<double>& zs,
              const std::vector<double>& ts, const std::string& out, double tol) {
    return guarded([&] {
        const auto cells = shu::evaluate_grid(nus, zs, ts, tolerances_from(tol));
        std::string csv = "nu,z,t,value,error_estimate,method\n";
        for (const auto& c : cells) {
            csv += format_double(c.point.order) + "," + format_double(c.point.argument) + "," +
                   format_double(c.point.endpoint) + ",";
            if (c.eval) {
                csv += format_double(c.eval->value) + "," + format_double(c.eval->error_estimate) +
                       "," + std::string(shu::to_string(c.eval->method));
            } else {
                csv += ",,ERROR_" + c.error_kind;
            }
            csv += "\n";
        }
        return write_output(out, csv) ? kOk : kUsage;
    });
}

nlohmann::ordered_json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

int cmd_verify(const std::string& grid, bool json, bool fail_fast) {
    shu::VerifyOptions options;
    options.grid = grid == "dense" ? shu::VerifyGrid::Dense : shu::VerifyGrid::Default;
    options.fail_fast = fail_fast;
    const shu::VerifyReport report = shu::run_verify(options);

    if (json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : report.records) {
            nlohmann::ordered_json j;
            j["identity"] = r.identity;
            j["nu"] = r.point.order;
            j["z"] = r.point.argument;
            j["t"] = r.point.endpoint;
            j["residual"] = number_or_null(r.residual);
            j["scale"] = number_or_null(r.scale);
            j["pass"] = r.pass;
            if (!r.error.empty()) j["error"] = r.error;
            arr.push_back(j);
        }
        std::cout << arr.dump(1) << "\n";
    } else {
        for (const auto& s : report.summary())
            std::printf("%-20s points=%-4zu worst=%.3e tol=%.1e %s\n", s.identity.c_str(), s.points,
                        s.worst, s.tolerance, s.failures == 0 ? "PASS" : "FAIL");
        std::size_t failed = 0;
        for (const auto& r : report.records) failed += r.pass ? 0 : 1;
        std::printf("%zu records, %zu failed%s\n", report.records.size(), failed,
                    report.stopped_early ? " (stopped at first failure)" : "");
    }
    return report.all_pass() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incomplete Macdonald function S_nu(z, t)"};
    app.require_subcommand(1);

    double nu = 0.0, z = 0.0, t = 0.0, tol = 0.0;
    bool json = false;
    std::string method = "auto";
    auto* eval = app.add_subcommand("eval", "Evaluate S_nu(z, t) at one point");
    eval->add_option("--nu", nu, "Order")->required();
    eval->add_option("--z", z, "Argument (> 0)")->required();
    eval->add_option("--t", t, "Endpoint (> 0)")->required();
    eval->add_option("--method", method, "auto|oracle|small-t|small-z|large-t")
        ->check(CLI::IsMember({"auto", "oracle", "small-t", "small-z", "large-t"}));
    eval->add_option("--tol", tol, "Relative tolerance (absolute tolerance 0)")
        ->check(CLI::PositiveNumber);
    eval->add_flag("--json", json, "Print a JSON object");

    auto* kfun = app.add_subcommand("kfun", "Evaluate the Macdonald function K_nu(z)");
    kfun->add_option("--nu", nu, "Order")->required();
    kfun->add_option("--z", z, "Argument (> 0)")->required();
    kfun->add_flag("--json", json, "Print a JSON object");

    shu::FigureOptions fig;
    std::string out;
    std::vector<double> range, fig_orders;
    auto* figure = app.add_subcommand("figure", "Write the CSV data behind plot 1..6");
    figure->add_option("--id", fig.id, "Plot id")->required()->check(CLI::Range(1, 6));
    figure->add_option("--out", out, "Output path, - for stdout")->required();
    figure->add_option("--points", fig.points, "Sweep points")->check(CLI::Range(2, 100000));
    figure->add_option("--orders", fig_orders, "Comma-separated orders")->delimiter(',');
    figure->add_option("--range", range, "Sweep range LO,HI")->delimiter(',')->expected(2);
    figure->add_option("--fixed", fig.fixed, "Fixed x (plots 1, 3, 5) or t (plots 2, 4, 6)");

    std::string grid = "default";
    bool fail_fast = false;
    auto* verify = app.add_subcommand("verify", "Run the identity and consistency checks");
    verify->add_option("--grid", grid, "default|dense")->check(CLI::IsMember({"default", "dense"}));
    verify->add_flag("--json", json, "Emit one JSON record per identity per point");
    verify->add_flag("--fail-fast", fail_fast, "Stop at the first failure");

    std::vector<double> nus, zs, ts;
    auto* table = app.add_subcommand("table", "Tabulate S over a Cartesian grid");
    table->add_option("--nu-list", nus, "Comma-separated orders")->required()->delimiter(',');
    table->add_option("--z-list", zs, "Comma-separated arguments")->required()->delimiter(',');
    table->add_option("--t-list", ts, "Comma-separated endpoints")->required()->delimiter(',');
    table->add_option("--out", out, "Output path, - for stdout")->required();
    table->add_option("--tol", tol, "Relative tolerance (absolute tolerance 0)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (*eval) return cmd_eval(nu, z, t, method, tol, json);
    if (*kfun) return cmd_kfun(nu, z, json);
    if (*figure) {
        if (!fig_orders.empty()) fig.orders = fig_orders;
        if (range.size() == 2) {
            fig.lo = range[0];
            fig.hi = range[1];
        }
        return cmd_figure(fig, out);
    }
    if (*verify) return cmd_verify(grid, json, fail_fast);
    return cmd_table(nus, zs, ts, out, tol);
}
