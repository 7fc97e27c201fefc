// Domain types and shared numeric policy for the incomplete Macdonald
// (Shu) function library.
//
// S_nu(z, t) = 1/2 (z/2)^nu  int_0^t  exp(-tau - z^2/(4 tau)) tau^(-nu-1) dtau
//
// The library works on real order nu, real argument z > 0 and real
// endpoint t > 0. Everything is dimensionless.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shu {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the supported domain. `field()` names the offending input.
class DomainError : public Error {
public:
    DomainError(std::string field, const std::string& what)
        : Error(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Gamma function evaluated at a nonpositive integer.
class PoleError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

/// An iterative method hit its cap. Carries the partial result.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double partial, double err)
        : Error(what), partial_value_(partial), error_estimate_(err) {}
    double partial_value() const noexcept { return partial_value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double partial_value_;
    double error_estimate_;
};

/// Finite-difference step failed its Richardson (h vs h/2) check.
class StepTooCoarse : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Parameters and tolerances
// ---------------------------------------------------------------------------

struct ShuParams {
    double order;     // nu
    double argument;  // z > 0
    double endpoint;  // t > 0

    friend bool operator==(const ShuParams&, const ShuParams&) = default;
};

/// Checks the domain and returns the parameter triple; throws DomainError
/// naming "order", "argument" or "endpoint" otherwise.
ShuParams validate(double order, double argument, double endpoint);

int sgn(double y) noexcept;

struct Tolerances {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_terms = 200;  // series truncation cap
    int max_depth = 60;   // quadrature bisection depth cap

    /// Target for a quantity of magnitude `value`.
    double target(double value) const noexcept;

    /// Relative-only tolerance, used wherever tiny values must keep their
    /// significant digits.
    static Tolerances relative(double rel, int max_terms = 200, int max_depth = 60);
};

/// Throws DomainError unless the tolerance record is usable.
void check(const Tolerances& tol);

// ---------------------------------------------------------------------------
// Method tags and results
// ---------------------------------------------------------------------------

enum class MethodTag : std::uint8_t {
    Oracle2,
    Oracle4,
    Oracle5,
    SeriesSmallT,
    SeriesSmallZ,
    AsymptLargeT,
    LeadingSmallT,
    LeadingSmallZ,
    LeadingLargeT,
    LeadingLargeZ,
    ClosedFormHalf,
};

std::string_view to_string(MethodTag tag) noexcept;
/// Inverse of to_string; throws DomainError("method", ...) for unknown names.
MethodTag method_from_string(std::string_view name);

/// Diagnostic flags attached to a result. None of them is an error.
struct Flags {
    bool underflow_to_zero = false;  // true value below the smallest normal
    bool cancellation = false;       // >6 digits lost to cancellation
    bool near_pole = false;          // large-z expansion close to z = 2t

    friend bool operator==(const Flags&, const Flags&) = default;
};

struct Evaluation {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute, >= 0
    MethodTag method = MethodTag::Oracle5;
    std::int64_t work = 0;  // terms summed or panels used
    Flags flags{};
};

/// A closed-form leading-term approximant. No error control by definition.
struct Approximant {
    double value = 0.0;
    MethodTag method = MethodTag::LeadingSmallT;
    Flags flags{};
};

namespace limits {
inline constexpr double eps = std::numeric_limits<double>::epsilon();
inline constexpr double min_normal = std::numeric_limits<double>::min();
inline constexpr double max_double = std::numeric_limits<double>::max();
// log(DBL_MIN) ~ -708.4; exp(-745.13) is the last nonzero subnormal.
inline constexpr double log_min_normal = -708.3964185322641;
inline constexpr double log_max = 709.782712893384;
inline constexpr double underflow_exponent = 745.0;
}  // namespace limits

}  // namespace shu
