#include "doctest.h"

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "vbank/deal.hpp"

using namespace vbank;

namespace {
const EdcsParams kDefaults{};
}

TEST_CASE("deal components at P = 1.55") {
    const auto d = compute_deal(1.55, kDefaults);
    CHECK(d.payout == doctest::Approx(0.2054307077).epsilon(1e-9));
    CHECK(d.clawback == doctest::Approx(0.1581816449).epsilon(1e-9));
    CHECK(d.premiums_uw_5yr == doctest::Approx(0.1151163575).epsilon(1e-9));
    CHECK(d.premiums_uw_10yr == doctest::Approx(0.2697672850).epsilon(1e-9));
    CHECK(d.premiums_uw_total == doctest::Approx(0.3848836425).epsilon(1e-9));
    CHECK(d.premiums_vb_carried == doctest::Approx(0.4193399934).epsilon(1e-9));
    CHECK(d.uw_equity == doctest::Approx(0.6475155435).epsilon(1e-9));
    CHECK(d.vb_equity == doctest::Approx(0.6475155435).epsilon(1e-9));
    CHECK(d.vb_earnings == doctest::Approx(0.275424613).epsilon(1e-8));
    CHECK(d.payout_with_carry == doctest::Approx(0.2279261069).epsilon(1e-8));
    REQUIRE_FALSE(d.uw_roi.infinite);
    CHECK(*d.uw_roi.value == doctest::Approx(5.2235).epsilon(4e-4));
    CHECK(d.vb_roi == d.vb_earnings);
}

TEST_CASE("deal components at P = -3") {
    const auto d = compute_deal(-3.0, kDefaults);
    CHECK(d.payout == doctest::Approx(0.9987995023).epsilon(1e-8));
    CHECK(d.clawback == doctest::Approx(0.7690756168).epsilon(1e-8));
    CHECK(d.premiums_vb_carried == doctest::Approx(0.2627954404).epsilon(1e-8));
    CHECK(d.premiums_uw_total == 0.25);
    CHECK(d.uw_equity == 0.0);
    CHECK(d.uw_earnings == doctest::Approx(-0.089096012).epsilon(1e-4));
    // sum of the printed components
    CHECK(d.vb_earnings == doctest::Approx(-0.0330716).epsilon(1e-4));
}

TEST_CASE("single-operation entry points agree with compute_deal") {
    for (double P : {-2.0, 0.3, 1.55}) {
        const auto d = compute_deal(P, kDefaults);
        CHECK(edcs_payout(P, kDefaults) == d.payout);
        CHECK(payout_with_carry(P, kDefaults) == d.payout_with_carry);
        CHECK(clawback_lien(P, kDefaults) == d.clawback);
        CHECK(premiums_underwriter(P, kDefaults).total == d.premiums_uw_total);
        CHECK(premiums_vb_carried(P, kDefaults) == d.premiums_vb_carried);
        CHECK(equity_split(P, kDefaults).underwriter == d.uw_equity);
        CHECK(vb_earnings(P, kDefaults) == d.vb_earnings);
        CHECK(vb_roi(P, kDefaults) == d.vb_roi);
        CHECK(uw_earnings(P, kDefaults) == d.uw_earnings);
        CHECK(uw_roi_simple(P, kDefaults).as_double() == d.uw_roi.as_double());
    }
}

TEST_CASE("closed forms match adaptive quadrature") {
    for (double P : {-3.0, -1.5, 0.0, 0.775, 1.55, 2.2845}) {
        CAPTURE(P);
        const auto d = compute_deal(P, kDefaults);
        CHECK(std::abs(d.payout - oracle::payout(P)) <= 1e-9);
        CHECK(std::abs(d.clawback - 0.77 * oracle::payout(P)) <= 1e-9);
        CHECK(std::abs(d.premiums_uw_total - oracle::uw_premiums(P)) <= 1e-9);
        CHECK(std::abs(d.premiums_vb_carried - oracle::vb_carried(P)) <= 1e-9);
        CHECK(std::abs(d.uw_equity - 0.5 * oracle::equity_total(P)) <= 1e-9);
    }
}

TEST_CASE("carried annuity") {
    CHECK(carried_annuity(0.0, 5.0) == 5.0);
    for (double n : {1.0, 5.0, 10.0})
        CHECK(carried_annuity(0.02, n) == doctest::Approx(oracle::carried_annuity(0.02, n)).epsilon(1e-12));
}

TEST_CASE("payout is clamped at the ends of the adjustment range") {
    CHECK(edcs_payout(2.2845, kDefaults) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(edcs_payout(3.0, kDefaults) == 0.0);
    CHECK(edcs_payout(-4.0, kDefaults) == 1.0);
    const auto d = compute_deal(3.0, kDefaults);
    CHECK(d.uw_roi.value.has_value() == false);
    CHECK(d.uw_roi.infinite);
    CHECK(std::isinf(d.uw_roi.as_double()));
}

TEST_CASE("RoiResult sentinel") {
    CHECK(RoiResult::ratio(1.0, 0.0).infinite);
    CHECK(RoiResult::ratio(1.0, 1e-13).infinite);
    CHECK(*RoiResult::ratio(3.0, 2.0).value == 1.5);
}

TEST_CASE("parameter validation") {
    EdcsParams p;
    p.edcs_rate = -0.1;
    CHECK_THROWS_AS(compute_deal(1.0, p), std::invalid_argument);
    p = {};
    p.clawback_fraction = 1.5;
    CHECK_THROWS_AS(compute_deal(1.0, p), std::invalid_argument);
    p = {};
    p.equity_fraction = NAN;
    CHECK_THROWS_AS(compute_deal(1.0, p), std::invalid_argument);
    p = {};
    p.moc = -1;
    CHECK_THROWS_AS(compute_deal(1.0, p), std::invalid_argument);
}

TEST_CASE("payout is non-increasing in the adjustment") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-4.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        double a = u(rng), b = u(rng);
        if (a > b)
            std::swap(a, b);
        CHECK(edcs_payout(a, kDefaults) >= edcs_payout(b, kDefaults) - 1e-15);
    }
}

TEST_CASE("venture-bank ROI scales linearly with MOC") {
    EdcsParams p;
    p.moc = 4.0;
    CHECK(vb_roi(1.55, p) == doctest::Approx(4.0 * vb_earnings(1.55, kDefaults)));
    CHECK(vb_roi(1.55, p) > 1.0);
}
