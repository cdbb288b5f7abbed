#include "doctest.h"

#include <random>
#include <sstream>

#include "vbank/ledger.hpp"

using namespace vbank;

TEST_CASE("money formatting and rounding") {
    CHECK(format_money(Money::dollars(339'000)) == "$339,000");
    CHECK(format_money(Money(-79'240'821)) == "-$792,408.21");
    CHECK(format_money(Money(5)) == "$0.05");
    CHECK(Money(150).rounded_to(Money(100)) == Money(200));
    CHECK(Money(-150).rounded_to(Money(100)) == Money(-200));
    CHECK(Money::dollars(1'000'000).scaled(1.131408212890625) == Money(113'140'821));
}

TEST_CASE("unbalanced transactions are refused") {
    Ledger l;
    Transaction t(0, "bad");
    t.debit(Party::venture_bank, EntryKind::asset, Money(100), "cash");
    CHECK_THROWS_AS(l.post(t), LedgerError);
    t.credit(Party::external, EntryKind::asset, Money(100), "cash");
    CHECK_NOTHROW(l.post(t));
    CHECK(l.transaction_count() == 1);
    CHECK(l.transaction(0).size() == 2);
    CHECK(l.entries()[0].description == "bad: cash");
}

TEST_CASE("castle ledger") {
    const auto r = castle_venture_bank();
    CHECK(r.report.vb_net == Money::dollars(339'000));
    CHECK(r.report.uw_net == Money::dollars(135'000));
    CHECK(r.report.external_interest == Money::dollars(26'000));
    CHECK(r.report.value_created == Money::dollars(500'000));
    CHECK(r.report.vb_net + r.report.uw_net + r.report.external_interest == r.report.value_created);
    CHECK(r.premiums == Money::dollars(250'000));
    CHECK(r.payout == Money::dollars(1'000'000));
    CHECK(r.clawback == Money::dollars(385'000));
    for (auto p : {Party::venture_bank, Party::underwriter, Party::external})
        CHECK(r.ledger.suspense_balance(p) == Money{});
    CHECK_NOTHROW(ledger_balance_check(r.ledger));
}

TEST_CASE("castle ledger with exact carry keeps the identity") {
    CastleOptions o;
    o.rounding = CarryRounding::exact;
    const auto r = castle_venture_bank(o);
    CHECK(r.premium_carry_booked == r.premium_carry_exact);
    CHECK(r.report.vb_net + r.report.uw_net + r.report.external_interest == r.report.value_created);
    CHECK(r.report.value_created == Money::dollars(500'000));
}

TEST_CASE("venture-capital counterfactual") {
    const auto r = castle_vc_counterfactual();
    CHECK(r.interest_factor == doctest::Approx(1.131408212890625).epsilon(1e-15));
    CHECK(r.report.vb_net == Money(-79'240'821));
    CHECK(r.report.vb_net.rounded_to(Money::dollars(1)) == Money::dollars(-792'408));
    CHECK(r.report.value_created == Money::dollars(-500'000));
    CHECK(r.breakeven_multiple == doctest::Approx(1.407408).epsilon(1e-6));
    CHECK(r.report.vb_net + r.report.uw_net + r.report.external_interest == r.report.value_created);
}

TEST_CASE("castle input checks") {
    CastleOptions o;
    o.valuation_fraction = 1.5;
    CHECK_THROWS_AS(castle_venture_bank(o), std::invalid_argument);
    o = {};
    o.loan = Money{};
    CHECK_THROWS_AS(castle_venture_bank(o), std::invalid_argument);
}

TEST_CASE("ledger balances on randomized castles") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::int64_t> loan(1'000, 50'000'000);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        CastleOptions o;
        o.loan = Money::dollars(loan(rng));
        o.valuation_fraction = i % 10 == 0 ? 1.0 : frac(rng);
        o.rounding = i % 2 ? CarryRounding::exact : CarryRounding::nearest_thousand;
        CAPTURE(o.loan.cents());
        CAPTURE(o.valuation_fraction);
        const auto r = castle_venture_bank(o);
        for (std::size_t t = 0; t < r.ledger.transaction_count(); ++t) {
            Money sum;
            for (const auto& e : r.ledger.transaction(t))
                sum += e.amount;
            CHECK(sum == Money{});
        }
        const auto rep = ledger_balance_check(r.ledger);
        CHECK(rep.vb_net + rep.uw_net + rep.external_interest == rep.value_created);

        CounterfactualOptions c;
        c.loan = o.loan;
        c.valuation_fraction = o.valuation_fraction;
        c.rounding = o.rounding;
        const auto v = castle_vc_counterfactual(c);
        const auto vrep = ledger_balance_check(v.ledger);
        CHECK(vrep.vb_net + vrep.uw_net + vrep.external_interest == vrep.value_created);
    }
}

TEST_CASE("ledger csv") {
    const auto r = castle_venture_bank();
    std::ostringstream os;
    r.ledger.write_csv(os);
    const auto text = os.str();
    CHECK(text.rfind("party,year,description,amount_cents,kind\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : text)
        lines += c == '\n';
    CHECK(lines == r.ledger.entries().size() + 1);
}

TEST_CASE("walkthrough") {
    const auto w = simplified_walkthrough();
    CHECK(w.premium_cost_exit_term == doctest::Approx(0.5475));
    CHECK(w.premium_cost_payout_term == doctest::Approx(0.2602));
    CHECK(w.net_per_turn == doctest::Approx(0.3648085).epsilon(1e-9));
    REQUIRE(w.moc_table.size() == 6);
    CHECK(w.moc_table[0].second == doctest::Approx(1.09).epsilon(0.01));
    CHECK(w.moc_table[1].second == doctest::Approx(1.459).epsilon(0.01));
    CHECK(w.moc_table[5].second == doctest::Approx(17.14).epsilon(0.01));
    CHECK(w.uw_earnings == doctest::Approx(0.8438).epsilon(3e-4));
    CHECK(w.uw_roi_multiplier == doctest::Approx(5.62).epsilon(0.002));
    CHECK(discrete_annuity(0.02, 5) == doctest::Approx(5.20404016));
    CHECK(discrete_annuity(0.0, 5) == 5.0);
}

TEST_CASE("walkthrough without basis-point rounding") {
    WalkthroughInputs in;
    in.round_premium_costs = false;
    const auto w = simplified_walkthrough({}, in);
    CHECK(w.premium_cost_exit_term == w.premium_cost_exit_term_exact);
    CHECK(w.net_per_turn == doctest::Approx(0.3648085).epsilon(1e-3));
}
