#include "doctest.h"

#include <random>

#include "vbank/config.hpp"

using namespace vbank;

TEST_CASE("config defaults round trip") {
    const ModelConfig c;
    CHECK(parse_config(dump_config(c)) == c);
}

TEST_CASE("config overrides and rejects unknown keys") {
    const auto c = parse_config(R"({"uw_cost_rate": 0.03, "moc": 4})");
    CHECK(c.params.uw_cost_rate == 0.03);
    CHECK(c.params.moc == 4.0);
    CHECK(c.params.edcs_rate == 0.05);
    CHECK_THROWS_AS(parse_config(R"({"uw_cost_rat": 0.03})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"moc": "four"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"([1, 2])"), ConfigError);
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"frac_equity_sold": 0.9})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), std::runtime_error);
}

TEST_CASE("randomized config round trip") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ModelConfig c;
        c.params.edcs_rate = u(rng) * 0.2;
        c.params.clawback_fraction = u(rng);
        c.params.equity_fraction = u(rng);
        c.params.vb_carry_rate = u(rng) * 0.1;
        c.params.uw_cost_rate = u(rng) * 0.1;
        c.params.payout_year = 1 + u(rng) * 9;
        c.params.exit_year = c.params.payout_year + u(rng) * 10;
        c.params.moc = 1 + u(rng) * 46;
        c.scenario.frac_clawback_sold = u(rng);
        c.scenario.frac_equity_sold = u(rng) * SaleScenario::kMaxEquitySold;
        c.scenario.sale_discount_rate = u(rng) * 0.1;
        c.scenario.discount_horizon_years = u(rng) * 20;
        const auto back = parse_config(dump_config(c));
        CHECK(back == c);
        CHECK(back.params.clawback_fraction == c.params.clawback_fraction);
        CHECK(back.scenario.discount_horizon_years == c.scenario.discount_horizon_years);
    }
}
