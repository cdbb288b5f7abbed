#include "vbank/deal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vbank {

namespace {

void require(bool ok, const char* what) {
    if (!ok)
        throw std::invalid_argument(std::string("EdcsParams: ") + what);
}

} // namespace

void EdcsParams::validate() const {
    require(edcs_rate >= 0.0 && std::isfinite(edcs_rate), "edcs_rate must be >= 0");
    require(vb_carry_rate >= 0.0 && std::isfinite(vb_carry_rate), "vb_carry_rate must be >= 0");
    require(uw_cost_rate >= 0.0 && std::isfinite(uw_cost_rate), "uw_cost_rate must be >= 0");
    require(clawback_fraction >= 0.0 && clawback_fraction <= 1.0, "clawback_fraction must lie in [0, 1]");
    require(equity_fraction >= 0.0 && equity_fraction <= 1.0, "equity_fraction must lie in [0, 1]");
    require(payout_year > 0.0 && payout_year < exit_year && std::isfinite(exit_year),
            "need 0 < payout_year < exit_year");
    require(moc >= 0.0 && std::isfinite(moc), "moc must be >= 0");
}

RoiResult RoiResult::ratio(double numerator, double denominator) {
    RoiResult r;
    r.numerator = numerator;
    r.denominator = denominator;
    if (denominator <= kZeroCost)
        r.infinite = true;
    else
        r.value = numerator / denominator;
    return r;
}

double RoiResult::as_double() const noexcept {
    return infinite ? std::numeric_limits<double>::infinity() : *value;
}

double carried_annuity(double rate, double years) {
    if (rate == 0.0)
        return years;
    const double g = std::log1p(rate);
    return std::expm1(years * g) / g;
}

namespace {

struct Evaluated {
    InterceptPair hs;
    double payout;
};

Evaluated evaluate(const ExpCurveParams& curve, const EdcsParams& p) {
    curve.validate();
    p.validate();
    Evaluated e;
    e.hs = intercepts(curve);
    const double lo = e.hs.h_zero;
    const double hi = e.hs.h_one;
    // intercepts are ordered for an increasing curve; guard anyway
    const double losing_width = hi > lo ? hi - lo : 0.0;
    const double shortfall = losing_width - (hi > lo ? curve_integral(curve, lo, hi) : 0.0);
    e.payout = lo + shortfall;
    return e;
}

PremiumSplit premiums_for(double h_one, const EdcsParams& p) {
    PremiumSplit s;
    s.payout_term = h_one * p.edcs_rate * p.payout_year;
    s.exit_term = (1.0 - h_one) * p.edcs_rate * p.exit_year;
    s.total = s.payout_term + s.exit_term;
    return s;
}

double vb_carried_for(double h_one, const EdcsParams& p) {
    return h_one * p.edcs_rate * carried_annuity(p.vb_carry_rate, p.payout_year) +
           (1.0 - h_one) * p.edcs_rate * carried_annuity(p.vb_carry_rate, p.exit_year);
}

EquitySplit equity_for(const ExpCurveParams& curve, double h_one, const EdcsParams& p) {
    const double total = h_one < 1.0 ? curve_integral(curve, h_one, 1.0) : 0.0;
    return EquitySplit{p.equity_fraction * total, (1.0 - p.equity_fraction) * total};
}

double carry_factor(const EdcsParams& p) { return std::pow(1.0 + p.uw_cost_rate, p.payout_year); }

} // namespace

double edcs_payout(const ExpCurveParams& curve, const EdcsParams& p) { return evaluate(curve, p).payout; }

double payout_with_carry(const ExpCurveParams& curve, const EdcsParams& p) {
    return carry_factor(p) * edcs_payout(curve, p);
}

double clawback_lien(const ExpCurveParams& curve, const EdcsParams& p) {
    return p.clawback_fraction * edcs_payout(curve, p);
}

PremiumSplit premiums_underwriter(const ExpCurveParams& curve, const EdcsParams& p) {
    return premiums_for(evaluate(curve, p).hs.h_one, p);
}

double premiums_vb_carried(const ExpCurveParams& curve, const EdcsParams& p) {
    return vb_carried_for(evaluate(curve, p).hs.h_one, p);
}

EquitySplit equity_split(const ExpCurveParams& curve, const EdcsParams& p) {
    return equity_for(curve, evaluate(curve, p).hs.h_one, p);
}

double vb_earnings(const ExpCurveParams& curve, const EdcsParams& p) { return compute_deal(curve, p).vb_earnings; }
double vb_roi(const ExpCurveParams& curve, const EdcsParams& p) { return compute_deal(curve, p).vb_roi; }
double uw_earnings(const ExpCurveParams& curve, const EdcsParams& p) { return compute_deal(curve, p).uw_earnings; }
RoiResult uw_roi_simple(const ExpCurveParams& curve, const EdcsParams& p) { return compute_deal(curve, p).uw_roi; }

DealComponents compute_deal(const ExpCurveParams& curve, const EdcsParams& p) {
    const Evaluated e = evaluate(curve, p);
    const double h_one = e.hs.h_one;

    DealComponents d;
    d.payout = e.payout;
    d.payout_with_carry = carry_factor(p) * e.payout;
    d.clawback = p.clawback_fraction * e.payout;

    const PremiumSplit prem = premiums_for(h_one, p);
    d.premiums_uw_5yr = prem.payout_term;
    d.premiums_uw_10yr = prem.exit_term;
    d.premiums_uw_total = prem.total;
    d.premiums_vb_carried = vb_carried_for(h_one, p);

    const EquitySplit eq = equity_for(curve, h_one, p);
    d.uw_equity = eq.underwriter;
    d.vb_equity = eq.venture_bank;

    d.vb_earnings = d.vb_equity + d.payout - d.premiums_vb_carried - d.clawback;
    d.vb_roi = d.vb_earnings * p.moc;
    d.uw_earnings = d.premiums_uw_total + d.uw_equity + d.clawback - d.payout_with_carry;
    d.uw_roi = RoiResult::ratio(d.premiums_uw_total + d.uw_equity + d.clawback, d.payout_with_carry);
    return d;
}

} // namespace vbank
