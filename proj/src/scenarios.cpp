#include "vbank/scenarios.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>

namespace vbank {

void SaleScenario::validate() const {
    if (!(frac_clawback_sold >= 0.0 && frac_clawback_sold <= 1.0))
        throw std::invalid_argument("frac_clawback_sold must lie in [0, 1]");
    if (!(frac_equity_sold >= 0.0 && frac_equity_sold <= kMaxEquitySold))
        throw std::invalid_argument("frac_equity_sold must lie in [0, 0.7]");
    if (!(sale_discount_rate >= 0.0) || !std::isfinite(sale_discount_rate))
        throw std::invalid_argument("sale_discount_rate must be >= 0");
    if (!(discount_horizon_years >= 0.0) || !std::isfinite(discount_horizon_years))
        throw std::invalid_argument("discount_horizon_years must be >= 0");
}

double SaleScenario::discount_factor() const {
    return std::pow(1.0 + sale_discount_rate, discount_horizon_years);
}

std::string_view to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::simple: return "simple";
    case ScenarioKind::clawback_sales: return "clawback";
    case ScenarioKind::equity_sales: return "equity";
    case ScenarioKind::combined: return "combined";
    }
    return "?";
}

ScenarioKind parse_scenario_kind(std::string_view name) {
    for (auto k : {ScenarioKind::simple, ScenarioKind::clawback_sales, ScenarioKind::equity_sales,
                   ScenarioKind::combined}) {
        if (name == to_string(k))
            return k;
    }
    throw std::invalid_argument("unknown scenario kind: " + std::string(name));
}

double discounted_sale(double amount, double frac, const SaleScenario& s) {
    if (!(amount >= 0.0))
        throw std::invalid_argument("discounted_sale: amount must be >= 0");
    if (!(frac >= 0.0 && frac <= 1.0))
        throw std::invalid_argument("discounted_sale: fraction must lie in [0, 1]");
    return amount * frac / s.discount_factor();
}

RoiResult uw_roi_from(ScenarioKind kind, const DealComponents& d, const SaleScenario& s) {
    s.validate();
    const double cb_sold = kind == ScenarioKind::clawback_sales || kind == ScenarioKind::combined
                               ? s.frac_clawback_sold
                               : 0.0;
    const double eq_sold =
        kind == ScenarioKind::equity_sales || kind == ScenarioKind::combined ? s.frac_equity_sold : 0.0;

    const double numerator = d.premiums_uw_total + (1.0 - cb_sold) * d.clawback + (1.0 - eq_sold) * d.uw_equity;
    const double denominator = d.payout_with_carry - discounted_sale(d.clawback, cb_sold, s) -
                               discounted_sale(d.uw_equity, eq_sold, s);
    return RoiResult::ratio(numerator, denominator);
}

RoiResult uw_roi(ScenarioKind kind, const ExpCurveParams& curve, const EdcsParams& p, const SaleScenario& s) {
    return uw_roi_from(kind, compute_deal(curve, p), s);
}

RoiResult uw_roi_clawback_sales(const ExpCurveParams& curve, const EdcsParams& p, const SaleScenario& s) {
    return uw_roi(ScenarioKind::clawback_sales, curve, p, s);
}

RoiResult uw_roi_equity_sales(const ExpCurveParams& curve, const EdcsParams& p, const SaleScenario& s) {
    return uw_roi(ScenarioKind::equity_sales, curve, p, s);
}

RoiResult uw_roi_combined(const ExpCurveParams& curve, const EdcsParams& p, const SaleScenario& s) {
    return uw_roi(ScenarioKind::combined, curve, p, s);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo < hi))
        throw std::invalid_argument("bisect_root: need lo < hi");
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0)
        return lo;
    if (f_hi == 0.0)
        return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi))
        throw std::domain_error("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    auto [a, b] = boost::math::tools::bisect(f, lo, hi, done);
    return 0.5 * (a + b);
}

Breakeven breakeven_adjustment(ScenarioKind kind, const EdcsParams& p, const SaleScenario& s, double lo,
                               double hi) {
    p.validate();
    s.validate();
    auto excess = [&](double P) {
        const RoiResult r = uw_roi(kind, P, p, s);
        return r.infinite ? std::numeric_limits<double>::max() : *r.value - 1.0;
    };
    Breakeven out;
    out.adjustment = bisect_root(excess, lo, hi, 1e-6);
    out.net_return = net_portfolio_return(out.adjustment);
    return out;
}

} // namespace vbank
