#include "doctest.h"

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "vbank/returns_model.hpp"

using namespace vbank;

TEST_CASE("curve value and closed-form integral") {
    const auto c = kauffman_curve(1.55);
    CHECK(curve_value(c, 0.0) == doctest::Approx(0.2655));
    CHECK(curve_value(c, 1.0) == doctest::Approx(0.2655 * std::exp(2.88)));
    for (double P : {-3.0, 0.0, 1.55}) {
        const auto cp = kauffman_curve(P);
        const double q = oracle::integrate([P](double h) { return oracle::raw(P, h); }, 0.2, 0.9);
        CHECK(curve_integral(cp, 0.2, 0.9) == doctest::Approx(q).epsilon(1e-12));
    }
}

TEST_CASE("eval_curve checks its domain and floors on request") {
    const auto c = kauffman_curve(-3.0);
    CHECK_THROWS_AS(eval_curve(c, -0.01, false), std::out_of_range);
    CHECK_THROWS_AS(eval_curve(c, 1.01, true), std::out_of_range);
    CHECK(eval_curve(c, 0.0, false) < 0.0);
    CHECK(eval_curve(c, 0.0, true) == 0.0);
}

TEST_CASE("intercepts at the carry-adjusted portfolio") {
    const auto hs = intercepts(kauffman_curve(1.55));
    CHECK(hs.h_zero == 0.0);
    CHECK(hs.clamped_zero);
    CHECK(hs.h_one == doctest::Approx(std::log(1.0 / 0.2655) / 2.88));
    CHECK_FALSE(hs.clamped_one);
}

TEST_CASE("intercepts clamp at the domain edges") {
    CHECK(intercept_one(2.2845) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(intercept_one(-2.179689529) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(intercept_zero(1.2845) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(intercept_zero(-3.179689529) == doctest::Approx(1.0).epsilon(1e-9));
    // beyond the edges the log argument is non-positive or the root leaves [0, 1]
    CHECK(intercept_zero(5.0) == 0.0);
    CHECK(intercept_one(-10.0) == 1.0);
    CHECK(intercept_zero(-10.0) == 1.0);
}

TEST_CASE("intercepts agree with a bracketing root finder") {
    for (double P : {-3.0, -2.0, -1.0, 0.0, 0.5, 1.0, 1.55, 2.0}) {
        CAPTURE(P);
        CHECK(intercept_zero(P) == doctest::Approx(oracle::crossing(P, 0.0)).epsilon(1e-12));
        CHECK(intercept_one(P) == doctest::Approx(oracle::crossing(P, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("net portfolio return") {
    CHECK(net_portfolio_return(0.0) == doctest::Approx(0.5).epsilon(0.01));
    CHECK(net_portfolio_return(-3.0) <= 0.0015);
    CHECK(net_portfolio_return(1.55) == doctest::Approx(1.5500658).epsilon(1e-7));
    CHECK(net_portfolio_return(-10.0) == 0.0);
    for (double P : {-3.0, -1.5, 0.0, 0.775, 1.55, 2.2845})
        CHECK(net_portfolio_return(P) == doctest::Approx(oracle::net_return(P)).epsilon(1e-10));
}

TEST_CASE("close-fit polynomial") {
    const PolyCurveParams p;
    CHECK(poly_eval(p, 0.0) == doctest::Approx(-0.377));
    CHECK(poly_integral(p, 0.0, 1.0) == doctest::Approx(1.310174408).epsilon(1e-9));
    CHECK(poly_integral(p, 0.0, 1.0) == doctest::Approx(oracle::poly_integral(p.coefficients, 0.0, 1.0)));
    CHECK(poly_integral(p, 0.3, 0.3) == 0.0);
    CHECK_THROWS_AS(poly_integral(p, 0.6, 0.2), std::invalid_argument);
}

TEST_CASE("quantile positions") {
    const auto h = quantile_positions(4);
    REQUIRE(h.size() == 4);
    CHECK(h[0] == doctest::Approx(0.125));
    CHECK(h[3] == doctest::Approx(0.875));
}

TEST_CASE("exponential fit recovers noiseless parameters") {
    const auto h = quantile_positions(50);
    std::vector<double> v;
    for (double x : h)
        v.push_back(0.3 * std::exp(2.5 * x));
    const auto ds = make_dataset("synthetic", v);
    for (auto m : {FitMethod::log_linear, FitMethod::nonlinear_least_squares}) {
        const auto f = fit_exponential(ds, m);
        CHECK(f.scale == doctest::Approx(0.3).epsilon(1e-9));
        CHECK(f.rate == doctest::Approx(2.5).epsilon(1e-9));
        CHECK(f.rms_residual < 1e-9);
    }
}

TEST_CASE("exponential fit of the revised listing is close to the published shape") {
    const auto f = fit_exponential(load_dataset(kKauffmanRevised));
    CHECK(f.scale == doctest::Approx(0.2655).epsilon(0.05));
    CHECK(f.rate == doctest::Approx(2.88).epsilon(0.05));
    const auto gn = fit_exponential(load_dataset(kKauffmanRevised), FitMethod::nonlinear_least_squares);
    CHECK(gn.rms_residual <= f.rms_residual + 1e-12);
}

TEST_CASE("exponential fit input checks") {
    CHECK_THROWS_AS(fit_exponential(make_dataset("x", {1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponential(make_dataset("x", {0, 1, 2})), std::invalid_argument);
}

TEST_CASE("degree-7 fit recovers an exact polynomial") {
    PolyCurveParams truth;
    truth.coefficients = {0.1, 1.0, -2.0, 3.0, 0.5, -0.25, 0.125, 0.0625};
    const auto h = quantile_positions(40);
    std::vector<double> v;
    for (double x : h)
        v.push_back(poly_eval(truth, x) + 5.0); // keep values non-negative
    truth.coefficients[0] += 5.0;
    const auto f = fit_poly7(make_dataset("poly", v));
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(f.params.coefficients[k] == doctest::Approx(truth.coefficients[k]).epsilon(1e-5));
    CHECK(f.rms_residual < 1e-9);
    CHECK_THROWS_AS(fit_poly7(make_dataset("x", {1, 2, 3})), std::invalid_argument);
}

TEST_CASE("degree-7 fit of the revised listing integrates to its mean") {
    const auto ds = load_dataset(kKauffmanRevised);
    const auto f = fit_poly7(ds);
    CHECK(poly_integral(f.params, 0.0, 1.0) == doctest::Approx(dataset_stats(ds).mean).epsilon(0.01));
}

TEST_CASE("net return is non-decreasing in the adjustment") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-4.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        double a = u(rng), b = u(rng);
        if (a > b)
            std::swap(a, b);
        CHECK(net_portfolio_return(a) <= net_portfolio_return(b) + 1e-15);
    }
}
