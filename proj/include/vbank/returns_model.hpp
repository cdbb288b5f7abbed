#pragma once

// Return curves over the portfolio quantile axis h in [0, 1].
//
// The working model is the shifted exponential
//
//     r(h) = P - baseline + scale * exp(rate * h)
//
// where P is the portfolio adjustment. With P = baseline the curve is the
// carry-adjusted Kauffman fit; lowering P shifts every fund down. Returns are
// floored at zero, so the zero intercept h_zero marks where funds are wiped
// out and the one intercept h_one where they stop losing money.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbank/dataset.hpp"

namespace vbank {

struct ExpCurveParams {
    double scale = 0.2655;
    double rate = 2.88;
    double baseline = 1.55;
    double adjustment = 1.55; ///< P

    void validate() const;
};

/// Curve with the published Kauffman shape and the given adjustment.
constexpr ExpCurveParams kauffman_curve(double adjustment) {
    return ExpCurveParams{0.2655, 2.88, 1.55, adjustment};
}

struct InterceptPair {
    double h_zero = 0.0;
    double h_one = 0.0;
    bool clamped_zero = false;
    bool clamped_one = false;
};

/// Raw (unfloored) curve value; h is not range checked.
double curve_value(const ExpCurveParams& c, double h) noexcept;

/// Antiderivative of the raw curve: scale/rate * exp(rate*h) + (P - baseline)*h.
double curve_antiderivative(const ExpCurveParams& c, double h) noexcept;

/// Closed-form integral of the raw curve over [lo, hi].
double curve_integral(const ExpCurveParams& c, double lo, double hi) noexcept;

/// Throws std::out_of_range for h outside [0, 1].
double eval_curve(const ExpCurveParams& c, double h, bool floored);

/// h where the raw curve equals y, clamped into [0, 1]. A non-positive log
/// argument (the curve is above y everywhere) clamps to 0.
double solve_h(const ExpCurveParams& c, double y, bool* clamped = nullptr);

double intercept_one(const ExpCurveParams& c);
double intercept_zero(const ExpCurveParams& c);
inline double intercept_one(double adjustment) { return intercept_one(kauffman_curve(adjustment)); }
inline double intercept_zero(double adjustment) { return intercept_zero(kauffman_curve(adjustment)); }

InterceptPair intercepts(const ExpCurveParams& c);

/// Actual portfolio multiple once returns are floored at zero: the integral
/// of max(0, r(h)) over [0, 1].
double net_portfolio_return(const ExpCurveParams& c);
inline double net_portfolio_return(double adjustment) {
    return net_portfolio_return(kauffman_curve(adjustment));
}

// ---------------------------------------------------------------------------
// Degree-7 polynomial close fit.

struct PolyCurveParams {
    /// c0..c7, ascending powers of h. Defaults are the published close fit.
    std::array<double, 8> coefficients{-0.377,
                                       25.2906120002135,
                                       -291.398659319748,
                                       1671.47290175033,
                                       -4939.37387988463,
                                       7727.69689219724,
                                       -6072.99026870706,
                                       1886.41489392694};
};

double poly_eval(const PolyCurveParams& p, double h) noexcept;

/// Definite integral via the degree-8 antiderivative. Requires lo <= hi.
double poly_integral(const PolyCurveParams& p, double lo, double hi);

// ---------------------------------------------------------------------------
// Regression from datasets. Fund i of N (sorted ascending, 1-based) sits at
// h_i = (i - 0.5) / N.

std::vector<double> quantile_positions(std::size_t n);

enum class FitMethod {
    log_linear,              ///< least squares on ln r (exponential trendline)
    nonlinear_least_squares, ///< Gauss-Newton on r, seeded by log_linear
};

struct ExpFit {
    double scale = 0.0;
    double rate = 0.0;
    double rms_residual = 0.0; ///< in return-multiple units
    int iterations = 0;
};

class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Fits scale*exp(rate*h). Throws std::invalid_argument for fewer than three
/// points (or a zero return under log_linear) and FitError when Gauss-Newton
/// hits its iteration cap.
ExpFit fit_exponential(const ReturnDataset& ds, FitMethod method = FitMethod::log_linear);

struct PolyFit {
    PolyCurveParams params;
    double rms_residual = 0.0;
};

/// Ordinary least squares of degree 7. Throws FitError on rank deficiency.
PolyFit fit_poly7(const ReturnDataset& ds);

} // namespace vbank
