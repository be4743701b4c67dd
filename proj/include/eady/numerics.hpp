#pragma once

#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eady {

/// Raised when an iterative solver fails or a numerical precondition
/// (non-degenerate denominator, unstable mode, ...) does not hold.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for physically or structurally invalid inputs.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kPi = std::numbers::pi;

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
};

/// Bracketed bisection. Stops when |f(x)| <= ftol or the bracket width
/// falls below xtol. Throws NumericalError when [lo, hi] does not bracket a
/// sign change.
RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                  double ftol, double xtol = 0.0, int max_iter = 400);

/// Newton iteration safeguarded by a bracket: any step leaving [lo, hi] or
/// failing to shrink the residual is replaced by a bisection step.
/// `fdf` returns (f, f') through the output arguments.
RootResult safeguarded_newton(const std::function<void(double, double&, double&)>& fdf,
                              double lo, double hi, double ftol, int max_iter = 200);

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 50);

/// Golden-section maximisation of a unimodal function on [lo, hi].
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double xtol);

/// Wraps x into [origin, origin + period).
double wrap_to(double x, double origin, double period);

/// Signed distance from a to b on a circle of the given period, in
/// [-period/2, period/2).
double periodic_delta(double a, double b, double period);

}  // namespace eady
