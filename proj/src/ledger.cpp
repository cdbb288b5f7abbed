#include "vbank/ledger.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace vbank {

Money Money::scaled(double factor) const {
    return Money(std::llround(static_cast<double>(cents_) * factor));
}

Money Money::rounded_to(Money unit) const {
    if (unit.cents_ <= 0)
        throw std::invalid_argument("rounding unit must be positive");
    const double q = static_cast<double>(cents_) / static_cast<double>(unit.cents_);
    return Money(std::llround(q) * unit.cents_);
}

std::string format_money(Money m) {
    const bool neg = m.cents() < 0;
    const std::int64_t abs = neg ? -m.cents() : m.cents();
    std::string digits = std::to_string(abs / 100);
    std::string grouped;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && (digits.size() - i) % 3 == 0)
            grouped += ',';
        grouped += digits[i];
    }
    std::string out = (neg ? "-$" : "$") + grouped;
    if (const auto c = abs % 100; c != 0)
        out += (c < 10 ? ".0" : ".") + std::to_string(c);
    return out;
}

std::string_view to_string(Party p) {
    switch (p) {
    case Party::venture_bank: return "venture_bank";
    case Party::underwriter: return "underwriter";
    case Party::external: return "external";
    }
    return "?";
}

std::string_view to_string(EntryKind k) {
    switch (k) {
    case EntryKind::asset: return "asset";
    case EntryKind::liability: return "liability";
    case EntryKind::income: return "income";
    case EntryKind::expense: return "expense";
    case EntryKind::suspense: return "suspense";
    }
    return "?";
}

Transaction& Transaction::debit(Party party, EntryKind kind, Money amount, std::string_view account) {
    entries_.push_back(LedgerEntry{party, year_, memo_ + ": " + std::string(account), amount, kind});
    return *this;
}

Transaction& Transaction::credit(Party party, EntryKind kind, Money amount, std::string_view account) {
    return debit(party, kind, -amount, account);
}

Money Transaction::balance() const {
    Money sum;
    for (const auto& e : entries_)
        sum += e.amount;
    return sum;
}

void Ledger::post(const Transaction& t) {
    if (t.balance() != Money{})
        throw LedgerError("unbalanced transaction (" + format_money(t.balance()) + "): " +
                          (t.entries().empty() ? std::string("<empty>") : t.entries().front().description));
    const std::size_t begin = entries_.size();
    entries_.insert(entries_.end(), t.entries().begin(), t.entries().end());
    bounds_.emplace_back(begin, entries_.size());
}

std::span<const LedgerEntry> Ledger::transaction(std::size_t i) const {
    const auto [b, e] = bounds_.at(i);
    return std::span<const LedgerEntry>(entries_).subspan(b, e - b);
}

Money Ledger::suspense_balance(Party p) const {
    Money sum;
    for (const auto& e : entries_) {
        if (e.party == p && e.kind == EntryKind::suspense)
            sum += e.amount;
    }
    return sum;
}

namespace {

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

void Ledger::write_csv(std::ostream& out) const {
    out << "party,year,description,amount_cents,kind\n";
    for (const auto& e : entries_) {
        out << to_string(e.party) << ',' << e.year << ',' << csv_field(e.description) << ','
            << e.amount.cents() << ',' << to_string(e.kind) << '\n';
    }
}

LedgerReport ledger_balance_check(const Ledger& ledger) {
    for (std::size_t i = 0; i < ledger.transaction_count(); ++i) {
        Money sum;
        for (const auto& e : ledger.transaction(i))
            sum += e.amount;
        if (sum != Money{})
            throw LedgerError("transaction " + std::to_string(i) + " does not balance");
    }
    for (auto p : {Party::venture_bank, Party::underwriter, Party::external}) {
        if (const Money s = ledger.suspense_balance(p); s != Money{})
            throw LedgerError("unretired suspense item for " + std::string(to_string(p)) + ": " + format_money(s));
    }

    Money nets[3];
    Money net_assets;
    for (const auto& e : ledger.entries()) {
        switch (e.kind) {
        case EntryKind::income:
        case EntryKind::expense:
            nets[static_cast<int>(e.party)] -= e.amount;
            break;
        case EntryKind::asset:
        case EntryKind::liability:
        case EntryKind::suspense:
            net_assets += e.amount;
            break;
        }
    }

    LedgerReport r;
    r.vb_net = nets[static_cast<int>(Party::venture_bank)];
    r.uw_net = nets[static_cast<int>(Party::underwriter)];
    r.external_interest = nets[static_cast<int>(Party::external)];
    r.value_created = net_assets;
    if (r.vb_net + r.uw_net + r.external_interest != r.value_created)
        throw LedgerError("closing identity failed: party nets do not sum to value created");
    return r;
}

// ---------------------------------------------------------------------------

namespace {

constexpr auto VB = Party::venture_bank;
constexpr auto UW = Party::underwriter;
constexpr auto EXT = Party::external;
using K = EntryKind;

int whole_years(double y, const char* name) {
    const double r = std::round(y);
    if (std::abs(r - y) > 1e-9 || r < 1)
        throw std::invalid_argument(std::string(name) + " must be a positive whole number of years here");
    return static_cast<int>(r);
}

struct PremiumLeg {
    Money premiums;
    Money carry_exact;
    Money carry_booked;
};

// Premiums paid yearly to the underwriter, funded by an external line of
// credit that is settled with interest at the payout year.
PremiumLeg book_premiums(Ledger& ledger, Party payer, Money loan, const EdcsParams& params, CarryRounding rounding) {
    const int years = whole_years(params.payout_year, "payout_year");
    const Money yearly = loan.scaled(params.edcs_rate);

    PremiumLeg leg;
    for (int y = 1; y <= years; ++y) {
        Transaction t(y, "EDCS premium");
        t.debit(payer, K::asset, yearly, "cash drawn on premium line")
            .credit(payer, K::liability, yearly, "premium line of credit")
            .debit(EXT, K::asset, yearly, "premium line receivable")
            .credit(EXT, K::asset, yearly, "cash lent")
            .debit(payer, K::expense, yearly, "premium paid")
            .credit(payer, K::asset, yearly, "cash")
            .debit(UW, K::asset, yearly, "cash")
            .credit(UW, K::income, yearly, "premium income");
        ledger.post(t);
        leg.premiums += yearly;
    }

    leg.carry_exact = leg.premiums.scaled(std::pow(1.0 + params.vb_carry_rate, years));
    leg.carry_booked = rounding == CarryRounding::nearest_thousand ? leg.carry_exact.rounded_to(Money::dollars(1000))
                                                                   : leg.carry_exact;
    const Money interest = leg.carry_booked - leg.premiums;

    Transaction t(years, "EDCS premiums loan interest");
    t.debit(payer, K::expense, interest, "interest on premium line")
        .credit(payer, K::liability, interest, "premium line of credit")
        .debit(EXT, K::asset, interest, "premium line receivable")
        .credit(EXT, K::income, interest, "interest income");
    ledger.post(t);
    return leg;
}

void settle_premium_line(Ledger& ledger, Party payer, int year, Money amount) {
    Transaction t(year, "EDCS loan & interest paid");
    t.debit(payer, K::liability, amount, "premium line of credit")
        .credit(payer, K::asset, amount, "cash")
        .debit(EXT, K::asset, amount, "cash")
        .credit(EXT, K::asset, amount, "premium line receivable");
    ledger.post(t);
}

struct LossLeg {
    Money payout;
    Money clawback_pending;
    Money clawback;
};

// Castle handed over at its assessed value, face value paid out, clawback
// lien raised on the full payout and then cut to the accepted shortfall.
LossLeg book_loss(Ledger& ledger, Party insured, int year, Money loan, Money castle_value, const EdcsParams& params,
                  bool retire_suspense) {
    LossLeg leg;
    leg.payout = loan;
    leg.clawback_pending = loan.scaled(params.clawback_fraction);
    leg.clawback = (loan - castle_value).scaled(params.clawback_fraction);

    if (castle_value != Money{}) {
        Transaction t(year, "Transfer castle, assessment pending");
        t.debit(insured, K::expense, castle_value, "castle handed to underwriter")
            .credit(insured, K::asset, castle_value, "castle")
            .debit(UW, K::asset, castle_value, "castle")
            .credit(UW, K::income, castle_value, "castle equity received");
        ledger.post(t);
    }
    {
        Transaction t(year, "EDCS payout");
        t.debit(UW, K::expense, loan, "payout on EDCS contract")
            .credit(UW, K::asset, loan, "cash")
            .debit(insured, K::asset, loan, "cash")
            .credit(insured, K::income, loan, "EDCS payout received");
        if (retire_suspense) {
            t.debit(insured, K::liability, loan, "investment loan")
                .credit(insured, K::suspense, loan, "loan asset retired");
        }
        ledger.post(t);
    }
    {
        Transaction t(year, "Clawback lien pending");
        t.debit(insured, K::expense, leg.clawback_pending, "clawback lien")
            .credit(insured, K::liability, leg.clawback_pending, "clawback lien payable")
            .debit(UW, K::asset, leg.clawback_pending, "clawback lien receivable")
            .credit(UW, K::income, leg.clawback_pending, "clawback lien");
        ledger.post(t);
    }
    if (const Money relief = leg.clawback_pending - leg.clawback; relief != Money{}) {
        Transaction t(year, "Clawback lien, castle equity accepted");
        t.debit(insured, K::liability, relief, "clawback lien payable")
            .credit(insured, K::income, relief, "lien base cut by accepted valuation")
            .debit(UW, K::income, relief, "lien base cut by accepted valuation")
            .credit(UW, K::asset, relief, "clawback lien receivable");
        ledger.post(t);
    }
    return leg;
}

void settle_clawback(Ledger& ledger, Party insured, int year, Money clawback) {
    if (clawback == Money{})
        return;
    Transaction t(year, "Clawback paid");
    t.debit(insured, K::liability, clawback, "clawback lien payable")
        .credit(insured, K::asset, clawback, "cash")
        .debit(UW, K::asset, clawback, "cash")
        .credit(UW, K::asset, clawback, "clawback lien receivable");
    ledger.post(t);
}

void check_castle_inputs(Money loan, double valuation_fraction) {
    if (loan <= Money{})
        throw std::invalid_argument("loan must be positive");
    if (!(valuation_fraction >= 0.0 && valuation_fraction <= 1.0))
        throw std::invalid_argument("valuation_fraction must lie in [0, 1]");
}

} // namespace

CastleResult castle_venture_bank(const CastleOptions& opts, const EdcsParams& params) {
    params.validate();
    check_castle_inputs(opts.loan, opts.valuation_fraction);
    const int payout_year = whole_years(params.payout_year, "payout_year");

    CastleResult r;
    const Money loan = opts.loan;
    r.castle_value = loan.scaled(opts.valuation_fraction);

    {
        // the bank lends to itself: new money, asset held in suspense
        Transaction t(0, "Investment loan");
        t.debit(VB, K::suspense, loan, "loan asset").credit(VB, K::liability, loan, "investment loan");
        r.ledger.post(t);
    }

    const PremiumLeg prem = book_premiums(r.ledger, VB, loan, params, opts.rounding);
    r.premiums = prem.premiums;
    r.premium_carry_exact = prem.carry_exact;
    r.premium_carry_booked = prem.carry_booked;

    if (r.castle_value != Money{}) {
        Transaction t(payout_year, "Castle valuation");
        t.debit(VB, K::asset, r.castle_value, "castle").credit(VB, K::income, r.castle_value, "equity created");
        r.ledger.post(t);
    }

    if (r.castle_value < loan) {
        const LossLeg loss = book_loss(r.ledger, VB, payout_year, loan, r.castle_value, params, true);
        r.payout = loss.payout;
        r.clawback_pending = loss.clawback_pending;
        r.clawback = loss.clawback;
    } else {
        {
            Transaction t(payout_year, "Exit, investment loan retired from equity");
            t.debit(VB, K::liability, loan, "investment loan").credit(VB, K::suspense, loan, "loan asset retired");
            r.ledger.post(t);
        }
        const Money share = r.castle_value.scaled(params.equity_fraction);
        if (share != Money{}) {
            Transaction t(payout_year, "Underwriter equity share");
            t.debit(VB, K::expense, share, "equity owed to underwriter")
                .credit(VB, K::asset, share, "castle")
                .debit(UW, K::asset, share, "castle equity")
                .credit(UW, K::income, share, "exit equity share");
            r.ledger.post(t);
        }
    }

    settle_premium_line(r.ledger, VB, payout_year, prem.carry_booked);
    settle_clawback(r.ledger, VB, payout_year, r.clawback);
    r.report = ledger_balance_check(r.ledger);
    return r;
}

CounterfactualResult castle_vc_counterfactual(const CounterfactualOptions& opts, const EdcsParams& params) {
    params.validate();
    check_castle_inputs(opts.loan, opts.valuation_fraction);
    if (!(opts.loan_rate >= 0.0))
        throw std::invalid_argument("loan_rate must be >= 0");
    const int term = whole_years(params.payout_year, "payout_year");

    CounterfactualResult r;
    const Money loan = opts.loan;
    const Money castle_value = loan.scaled(opts.valuation_fraction);
    // the VC sits in the venture_bank slot; the lending bank is external
    const Party vc = VB;

    {
        Transaction t(0, "Bank loan to VC");
        t.debit(vc, K::asset, loan, "cash")
            .credit(vc, K::liability, loan, "bank loan")
            .debit(EXT, K::asset, loan, "loan receivable")
            .credit(EXT, K::asset, loan, "cash lent");
        r.ledger.post(t);
    }
    {
        Transaction t(0, "Castle construction");
        t.debit(vc, K::asset, loan, "castle at cost").credit(vc, K::asset, loan, "cash");
        r.ledger.post(t);
    }

    const PremiumLeg prem = book_premiums(r.ledger, vc, loan, params, opts.rounding);
    r.premium_carry_booked = prem.carry_booked;

    r.interest_factor = std::pow(1.0 + opts.loan_rate, term);
    r.balloon_interest = loan.scaled(r.interest_factor - 1.0);
    {
        Transaction t(term, "Balloon interest accrued");
        t.debit(vc, K::expense, r.balloon_interest, "interest on bank loan")
            .credit(vc, K::liability, r.balloon_interest, "bank loan")
            .debit(EXT, K::asset, r.balloon_interest, "loan receivable")
            .credit(EXT, K::income, r.balloon_interest, "interest income");
        r.ledger.post(t);
    }
    if (const Money writedown = loan - castle_value; writedown != Money{}) {
        Transaction t(term, "Castle written down to assessed value");
        t.debit(vc, K::expense, writedown, "castle write-down").credit(vc, K::asset, writedown, "castle at cost");
        r.ledger.post(t);
    }

    if (castle_value < loan) {
        r.clawback = book_loss(r.ledger, vc, term, loan, castle_value, params, false).clawback;
    } else if (const Money share = castle_value.scaled(params.equity_fraction); share != Money{}) {
        Transaction t(term, "Underwriter equity share");
        t.debit(vc, K::expense, share, "equity owed to underwriter")
            .credit(vc, K::asset, share, "castle at cost")
            .debit(UW, K::asset, share, "castle equity")
            .credit(UW, K::income, share, "exit equity share");
        r.ledger.post(t);
    }

    {
        const Money due = loan + r.balloon_interest;
        Transaction t(term, "Bank loan and interest repaid");
        t.debit(vc, K::liability, due, "bank loan")
            .credit(vc, K::asset, due, "cash")
            .debit(EXT, K::asset, due, "cash")
            .credit(EXT, K::asset, due, "loan receivable");
        r.ledger.post(t);
    }
    settle_premium_line(r.ledger, vc, term, prem.carry_booked);
    settle_clawback(r.ledger, vc, term, r.clawback);

    r.report = ledger_balance_check(r.ledger);
    r.breakeven_multiple =
        static_cast<double>((loan + r.balloon_interest + prem.carry_booked).cents()) / static_cast<double>(loan.cents());
    return r;
}

double discrete_annuity(double rate, int years) {
    double sum = 0.0;
    double growth = 1.0;
    for (int k = 0; k < years; ++k) {
        sum += growth;
        growth *= 1.0 + rate;
    }
    return sum;
}

WalkthroughReport simplified_walkthrough(const EdcsParams& params, const WalkthroughInputs& in) {
    params.validate();
    if (in.payout_fraction < 0 || in.positive_exit_equity < 0 || in.portfolio_multiple < 0)
        throw std::invalid_argument("walkthrough inputs must be >= 0");
    if (!(in.loser_share >= 0.0 && in.loser_share <= 1.0))
        throw std::invalid_argument("loser_share must lie in [0, 1]");
    const int payout_years = whole_years(params.payout_year, "payout_year");
    const int exit_years = whole_years(params.exit_year, "exit_year");
    auto shown = [&](double v) { return in.round_premium_costs ? std::round(v * 1e4) / 1e4 : v; };

    WalkthroughReport w;
    w.premium_cost_exit_term_exact = params.edcs_rate * discrete_annuity(params.vb_carry_rate, exit_years);
    w.premium_cost_payout_term_exact = params.edcs_rate * discrete_annuity(params.vb_carry_rate, payout_years);
    w.premium_cost_exit_term = shown(w.premium_cost_exit_term_exact);
    w.premium_cost_payout_term = shown(w.premium_cost_payout_term_exact);
    w.premium_cost =
        w.premium_cost_exit_term * (1.0 - in.loser_share) + w.premium_cost_payout_term * in.loser_share;

    w.payouts = in.payout_fraction;
    w.uw_equity = in.positive_exit_equity * params.equity_fraction;
    w.vb_equity_remainder = in.portfolio_multiple - w.uw_equity;
    w.after_premiums = w.vb_equity_remainder - w.premium_cost;
    w.clawback_payback = w.payouts * params.clawback_fraction;
    w.net_per_turn = w.after_premiums - w.clawback_payback;
    for (double m : in.mocs)
        w.moc_table.emplace_back(m, m * w.net_per_turn);

    w.uw_premiums = params.edcs_rate * (params.exit_year * (1.0 - in.loser_share) + params.payout_year * in.loser_share);
    w.uw_payout_carry = w.payouts * (std::pow(1.0 + params.vb_carry_rate, params.payout_year) - 1.0);
    w.uw_earnings = w.uw_premiums - w.payouts - w.uw_payout_carry + w.clawback_payback + w.uw_equity;
    const double cost = w.payouts + w.uw_payout_carry;
    w.uw_roi_multiplier = cost > 0.0 ? w.uw_earnings / cost : HUGE_VAL;
    return w;
}

} // namespace vbank
