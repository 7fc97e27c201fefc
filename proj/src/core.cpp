#include "shu/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace shu {

ShuParams validate(double order, double argument, double endpoint) {
    if (!std::isfinite(order))
        throw DomainError("order", "order must be finite");
    if (!std::isfinite(argument) || !(argument > 0.0))
        throw DomainError("argument", "argument must be finite and > 0");
    if (!std::isfinite(endpoint) || !(endpoint > 0.0))
        throw DomainError("endpoint", "endpoint must be finite and > 0");
    return ShuParams{order, argument, endpoint};
}

int sgn(double y) noexcept { return (0.0 < y) - (y < 0.0); }

double Tolerances::target(double value) const noexcept {
    return std::max(abs_tol, rel_tol * std::fabs(value));
}

Tolerances Tolerances::relative(double rel, int max_terms, int max_depth) {
    return Tolerances{0.0, rel, max_terms, max_depth};
}

void check(const Tolerances& tol) {
    if (!(tol.abs_tol >= 0.0) || !(tol.rel_tol >= 0.0))
        throw DomainError("tol", "tolerances must be non-negative");
    if (!(tol.abs_tol > 0.0) && !(tol.rel_tol > 0.0))
        throw DomainError("tol", "one of abs_tol, rel_tol must be positive");
    if (tol.max_terms <= 0)
        throw DomainError("max_terms", "max_terms must be positive");
    if (tol.max_depth <= 0)
        throw DomainError("max_depth", "max_depth must be positive");
}

namespace {
constexpr std::array<std::pair<MethodTag, std::string_view>, 11> kTagNames{{
    {MethodTag::Oracle2, "Oracle2"},
    {MethodTag::Oracle4, "Oracle4"},
    {MethodTag::Oracle5, "Oracle5"},
    {MethodTag::SeriesSmallT, "SeriesSmallT"},
    {MethodTag::SeriesSmallZ, "SeriesSmallZ"},
    {MethodTag::AsymptLargeT, "AsymptLargeT"},
    {MethodTag::LeadingSmallT, "LeadingSmallT"},
    {MethodTag::LeadingSmallZ, "LeadingSmallZ"},
    {MethodTag::LeadingLargeT, "LeadingLargeT"},
    {MethodTag::LeadingLargeZ, "LeadingLargeZ"},
    {MethodTag::ClosedFormHalf, "ClosedFormHalf"},
}};
}  // namespace

std::string_view to_string(MethodTag tag) noexcept {
    for (const auto& [t, name] : kTagNames)
        if (t == tag) return name;
    return "Unknown";
}

MethodTag method_from_string(std::string_view name) {
    for (const auto& [t, n] : kTagNames)
        if (n == name) return t;
    throw DomainError("method", "unknown method tag '" + std::string(name) + "'");
}

}  // namespace shu
