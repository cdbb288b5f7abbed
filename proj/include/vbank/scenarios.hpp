#pragma once

// Underwriter ROI when clawback liens (as bonds) and equity futures are sold
// at a discount, and the breakeven adjustment where ROI crosses 1.

#include <functional>
#include <string_view>

#include "vbank/deal.hpp"

namespace vbank {

struct SaleScenario {
    double frac_clawback_sold = 0.0; ///< [0, 1]
    double frac_equity_sold = 0.0;   ///< [0, kMaxEquitySold]
    double sale_discount_rate = 0.021;
    /// Years of discounting, contract start to exit.
    double discount_horizon_years = 10.0;

    static constexpr double kMaxEquitySold = 0.70;

    void validate() const;
    double discount_factor() const;
};

enum class ScenarioKind { simple, clawback_sales, equity_sales, combined };

std::string_view to_string(ScenarioKind k);
/// Accepts simple, clawback, equity, combined. Throws std::invalid_argument.
ScenarioKind parse_scenario_kind(std::string_view name);

/// amount * frac / (1 + rate)^horizon. Throws for frac outside [0, 1] or a
/// negative amount.
double discounted_sale(double amount, double frac, const SaleScenario& s);

RoiResult uw_roi_clawback_sales(const ExpCurveParams& curve, const EdcsParams& p, const SaleScenario& s);
RoiResult uw_roi_equity_sales(const ExpCurveParams& curve, const EdcsParams& p, const SaleScenario& s);
RoiResult uw_roi_combined(const ExpCurveParams& curve, const EdcsParams& p, const SaleScenario& s);

/// Dispatch on kind. `simple` ignores the sale fractions.
RoiResult uw_roi(ScenarioKind kind, const ExpCurveParams& curve, const EdcsParams& p, const SaleScenario& s);

/// Scenario ROI from already computed components; the curve overloads call
/// this after compute_deal.
RoiResult uw_roi_from(ScenarioKind kind, const DealComponents& d, const SaleScenario& s);

inline RoiResult uw_roi(ScenarioKind kind, double P, const EdcsParams& p, const SaleScenario& s) {
    return uw_roi(kind, kauffman_curve(P), p, s);
}

/// Bisection root of f on [lo, hi] to |dx| <= tol. Throws std::domain_error
/// when f does not change sign.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-6);

struct Breakeven {
    double adjustment = 0.0;
    double net_return = 0.0; ///< floored portfolio multiple at the root
};

/// Adjustment P* where ROI(P*) = 1 on [lo, hi] (infinite ROI counts as > 1).
Breakeven breakeven_adjustment(ScenarioKind kind, const EdcsParams& p, const SaleScenario& s, double lo = -3.0,
                               double hi = 0.0);

} // namespace vbank
