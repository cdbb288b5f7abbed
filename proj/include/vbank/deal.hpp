#pragma once

// Per-unit-principal economics of an EDCS-covered venture loan portfolio.
//
// Funds left of h_one lose money: they pay premiums until the payout year,
// then the underwriter pays face value and takes their equity. Funds right
// of h_one pay premiums until exit and hand the underwriter its share of the
// positive-exit equity. All quantities are fractions of loan principal.

#include <optional>

#include "vbank/returns_model.hpp"

namespace vbank {

struct EdcsParams {
    double edcs_rate = 0.05;         ///< premium, fraction of principal per year
    double clawback_fraction = 0.77; ///< lien as a fraction of the net payout
    double equity_fraction = 0.5;    ///< underwriter share of positive-exit equity
    double vb_carry_rate = 0.02;     ///< venture-bank cost of money on premiums
    double uw_cost_rate = 0.021;     ///< underwriter cost of money on payouts
    double payout_year = 5.0;
    double exit_year = 10.0;
    double moc = 1.0; ///< multiple of original capital

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// A return on investment that may be unbounded when the net cost vanishes.
struct RoiResult {
    std::optional<double> value; ///< present iff !infinite
    bool infinite = false;
    double numerator = 0.0;
    double denominator = 0.0;

    /// Denominators at or below this are treated as zero cost.
    static constexpr double kZeroCost = 1e-12;

    static RoiResult ratio(double numerator, double denominator);
    /// value, or +infinity for the sentinel.
    double as_double() const noexcept;
};

struct PremiumSplit {
    double payout_term = 0.0; ///< losers, paid until the payout year
    double exit_term = 0.0;   ///< winners, paid until exit
    double total = 0.0;
};

struct EquitySplit {
    double underwriter = 0.0;
    double venture_bank = 0.0;
};

struct DealComponents {
    double payout = 0.0;
    double payout_with_carry = 0.0;
    double clawback = 0.0;
    double premiums_uw_5yr = 0.0;
    double premiums_uw_10yr = 0.0;
    double premiums_uw_total = 0.0;
    double premiums_vb_carried = 0.0;
    double uw_equity = 0.0;
    double vb_equity = 0.0;
    double vb_earnings = 0.0;
    double vb_roi = 0.0;
    double uw_earnings = 0.0;
    RoiResult uw_roi;
};

/// Continuous carry of a unit premium stream over n years:
/// integral over [0, n] of (1 + rate)^(n - x) dx. Equals n at rate 0.
double carried_annuity(double rate, double years);

// Each operation has a curve form and a shorthand taking the adjustment P on
// the published Kauffman curve.

/// h_zero + integral of (1 - r) over [h_zero, h_one]: the floored-to-zero
/// funds are paid their full principal.
double edcs_payout(const ExpCurveParams& curve, const EdcsParams& p);
double payout_with_carry(const ExpCurveParams& curve, const EdcsParams& p);
double clawback_lien(const ExpCurveParams& curve, const EdcsParams& p);
PremiumSplit premiums_underwriter(const ExpCurveParams& curve, const EdcsParams& p);
double premiums_vb_carried(const ExpCurveParams& curve, const EdcsParams& p);
/// Positive-exit equity integral over [h_one, 1], split by equity_fraction.
EquitySplit equity_split(const ExpCurveParams& curve, const EdcsParams& p);
double vb_earnings(const ExpCurveParams& curve, const EdcsParams& p);
double vb_roi(const ExpCurveParams& curve, const EdcsParams& p);
double uw_earnings(const ExpCurveParams& curve, const EdcsParams& p);
RoiResult uw_roi_simple(const ExpCurveParams& curve, const EdcsParams& p);
DealComponents compute_deal(const ExpCurveParams& curve, const EdcsParams& p);

inline double edcs_payout(double P, const EdcsParams& p) { return edcs_payout(kauffman_curve(P), p); }
inline double payout_with_carry(double P, const EdcsParams& p) { return payout_with_carry(kauffman_curve(P), p); }
inline double clawback_lien(double P, const EdcsParams& p) { return clawback_lien(kauffman_curve(P), p); }
inline PremiumSplit premiums_underwriter(double P, const EdcsParams& p) {
    return premiums_underwriter(kauffman_curve(P), p);
}
inline double premiums_vb_carried(double P, const EdcsParams& p) { return premiums_vb_carried(kauffman_curve(P), p); }
inline EquitySplit equity_split(double P, const EdcsParams& p) { return equity_split(kauffman_curve(P), p); }
inline double vb_earnings(double P, const EdcsParams& p) { return vb_earnings(kauffman_curve(P), p); }
inline double vb_roi(double P, const EdcsParams& p) { return vb_roi(kauffman_curve(P), p); }
inline double uw_earnings(double P, const EdcsParams& p) { return uw_earnings(kauffman_curve(P), p); }
inline RoiResult uw_roi_simple(double P, const EdcsParams& p) { return uw_roi_simple(kauffman_curve(P), p); }
inline DealComponents compute_deal(double P, const EdcsParams& p) { return compute_deal(kauffman_curve(P), p); }

} // namespace vbank
