#pragma once

// Double-entry books for the single-castle toy model, the VC-with-bank-loan
// counterfactual, and the per-turn simplified walkthrough.
//
// Amounts are signed integer cents, debit positive. Every posted transaction
// sums to zero. A party's net is the credit balance of its income and expense
// entries; value created is the closing net asset position of all parties.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vbank/deal.hpp"

namespace vbank {

/// Currency in integer cents.
class Money {
public:
    constexpr Money() = default;
    constexpr explicit Money(std::int64_t cents) : cents_(cents) {}
    static constexpr Money dollars(std::int64_t d) { return Money(d * 100); }

    constexpr std::int64_t cents() const { return cents_; }
    double as_dollars() const { return static_cast<double>(cents_) / 100.0; }

    /// Rounds half away from zero to whole cents.
    Money scaled(double factor) const;
    /// Rounds half away from zero to a multiple of `unit`.
    Money rounded_to(Money unit) const;

    constexpr Money operator-() const { return Money(-cents_); }
    constexpr Money operator+(Money o) const { return Money(cents_ + o.cents_); }
    constexpr Money operator-(Money o) const { return Money(cents_ - o.cents_); }
    constexpr Money& operator+=(Money o) { cents_ += o.cents_; return *this; }
    constexpr Money& operator-=(Money o) { cents_ -= o.cents_; return *this; }
    constexpr auto operator<=>(const Money&) const = default;

private:
    std::int64_t cents_ = 0;
};

/// "$339,000" or "-$792,408.21" (cents shown only when non-zero).
std::string format_money(Money m);

enum class Party { venture_bank, underwriter, external };
enum class EntryKind { asset, liability, income, expense, suspense };

std::string_view to_string(Party p);
std::string_view to_string(EntryKind k);

struct LedgerEntry {
    Party party = Party::venture_bank;
    int year = 0;
    std::string description;
    Money amount; ///< debit positive
    EntryKind kind = EntryKind::asset;
};

class LedgerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Transaction {
public:
    Transaction(int year, std::string memo) : year_(year), memo_(std::move(memo)) {}

    Transaction& debit(Party party, EntryKind kind, Money amount, std::string_view account);
    Transaction& credit(Party party, EntryKind kind, Money amount, std::string_view account);

    const std::vector<LedgerEntry>& entries() const { return entries_; }
    Money balance() const;

private:
    int year_;
    std::string memo_;
    std::vector<LedgerEntry> entries_;
};

class Ledger {
public:
    /// Throws LedgerError when debits and credits differ.
    void post(const Transaction& t);

    std::span<const LedgerEntry> entries() const { return entries_; }
    std::size_t transaction_count() const { return bounds_.size(); }
    /// Entries of transaction i.
    std::span<const LedgerEntry> transaction(std::size_t i) const;

    /// Balance of a party's suspense entries; zero once every suspended item
    /// has been retired.
    Money suspense_balance(Party p) const;

    /// CSV with header party,year,description,amount_cents,kind.
    void write_csv(std::ostream& out) const;

private:
    std::vector<LedgerEntry> entries_;
    std::vector<std::pair<std::size_t, std::size_t>> bounds_;
};

struct LedgerReport {
    Money vb_net;
    Money uw_net;
    Money external_interest;
    Money value_created;
};

/// Per-party nets of a closed ledger. Throws LedgerError for an unretired
/// suspense item, an unbalanced transaction, or a failed closing identity.
LedgerReport ledger_balance_check(const Ledger& ledger);

// ---------------------------------------------------------------------------
// Castle toy model.

enum class CarryRounding {
    exact,            ///< premium line interest booked to the cent
    nearest_thousand, ///< premium carry booked at the nearest $1,000
};

struct CastleOptions {
    Money loan = Money::dollars(1'000'000);
    double valuation_fraction = 0.5;
    CarryRounding rounding = CarryRounding::nearest_thousand;
};

struct CastleResult {
    Ledger ledger;
    LedgerReport report;
    Money premiums;             ///< paid to the underwriter over the payout term
    Money premium_carry_exact;  ///< premiums compounded to the payout year
    Money premium_carry_booked; ///< after the rounding mode
    Money castle_value;
    Money payout;
    Money clawback_pending; ///< on the full payout
    Money clawback;         ///< revised after the valuation is accepted
};

/// Throws std::invalid_argument for a non-positive loan or a valuation
/// fraction outside [0, 1].
CastleResult castle_venture_bank(const CastleOptions& opts = {}, const EdcsParams& params = {});

struct CounterfactualOptions {
    Money loan = Money::dollars(1'000'000);
    double valuation_fraction = 0.5;
    double loan_rate = 0.025; ///< interest-only bank loan, accrued as a balloon
    CarryRounding rounding = CarryRounding::nearest_thousand;
};

struct CounterfactualResult {
    Ledger ledger;
    LedgerReport report; ///< vb_net is the VC's position
    double interest_factor = 0.0;
    Money balloon_interest;
    Money premium_carry_booked;
    Money clawback;
    double breakeven_multiple = 0.0; ///< (loan + interest + premium carry) / loan
};

CounterfactualResult castle_vc_counterfactual(const CounterfactualOptions& opts = {},
                                              const EdcsParams& params = {});

// ---------------------------------------------------------------------------
// Simplified per-turn walkthrough with discrete annual compounding.

/// Sum over k in [0, years) of (1 + rate)^k.
double discrete_annuity(double rate, int years);

struct WalkthroughInputs {
    double payout_fraction = 0.1361;
    double positive_exit_equity = 1.028089;
    double portfolio_multiple = 1.3875;
    double loser_share = 0.5;
    std::vector<double> mocs{3, 4, 5, 30, 43, 47};
    /// Round each term's premium cost to 0.01% of principal before weighting.
    bool round_premium_costs = true;
};

struct WalkthroughReport {
    double premium_cost_exit_term_exact = 0.0;
    double premium_cost_payout_term_exact = 0.0;
    double premium_cost_exit_term = 0.0;
    double premium_cost_payout_term = 0.0;
    double premium_cost = 0.0; ///< weighted by loser share
    double payouts = 0.0;
    double uw_equity = 0.0;
    double vb_equity_remainder = 0.0;
    double after_premiums = 0.0;
    double clawback_payback = 0.0;
    double net_per_turn = 0.0;
    std::vector<std::pair<double, double>> moc_table;

    double uw_premiums = 0.0;
    double uw_payout_carry = 0.0;
    double uw_earnings = 0.0;
    double uw_roi_multiplier = 0.0;
};

WalkthroughReport simplified_walkthrough(const EdcsParams& params = {}, const WalkthroughInputs& in = {});

} // namespace vbank
