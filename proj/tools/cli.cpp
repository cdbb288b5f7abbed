#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "vbank/config.hpp"
#include "vbank/dataset.hpp"
#include "vbank/deal.hpp"
#include "vbank/ledger.hpp"
#include "vbank/returns_model.hpp"
#include "vbank/scenarios.hpp"
#include "vbank/sweep.hpp"
#include "vbank/text.hpp"

namespace vbank {

namespace {

// Bad input files and specs: reported like a usage error.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string config_path;
    std::string out_path;
};

void row(std::ostream& os, std::string_view key, double v) {
    os << std::left << std::setw(24) << key << ' ' << format_number(v) << '\n';
}
void row(std::ostream& os, std::string_view key, std::string_view v) {
    os << std::left << std::setw(24) << key << ' ' << v << '\n';
}
void row(std::ostream& os, std::string_view key, const RoiResult& r) {
    row(os, key, r.infinite ? std::string_view("inf") : std::string_view(format_number(*r.value)));
}

ModelConfig load_model(const Globals& g) {
    if (g.config_path.empty())
        return {};
    try {
        return load_config(g.config_path);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

ReturnDataset load_input_dataset(const std::string& name) {
    try {
        return load_dataset(name);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

// Runs `body` against stdout or the --out file.
template <class F>
void with_output(const Globals& g, std::ostream& out, F&& body) {
    if (g.out_path.empty()) {
        body(out);
        return;
    }
    std::ofstream file(g.out_path);
    if (!file)
        throw std::runtime_error("cannot write " + g.out_path);
    body(file);
    if (!file.flush())
        throw std::runtime_error("write failed: " + g.out_path);
}

void print_deal(std::ostream& os, double P, const DealComponents& d) {
    const auto hs = intercepts(kauffman_curve(P));
    row(os, "P", P);
    row(os, "h_zero", hs.h_zero);
    row(os, "h_one", hs.h_one);
    row(os, "net_return", net_portfolio_return(P));
    row(os, "payout", d.payout);
    row(os, "payout_with_carry", d.payout_with_carry);
    row(os, "clawback", d.clawback);
    row(os, "premiums_uw_5yr", d.premiums_uw_5yr);
    row(os, "premiums_uw_10yr", d.premiums_uw_10yr);
    row(os, "premiums_uw_total", d.premiums_uw_total);
    row(os, "premiums_vb_carried", d.premiums_vb_carried);
    row(os, "uw_equity", d.uw_equity);
    row(os, "vb_equity", d.vb_equity);
    row(os, "vb_earnings", d.vb_earnings);
    row(os, "vb_roi", d.vb_roi);
    row(os, "uw_earnings", d.uw_earnings);
    row(os, "uw_roi", d.uw_roi);
}

void print_stats(std::ostream& os, const ReturnDataset& ds) {
    const auto s = dataset_stats(ds);
    row(os, "dataset", ds.label);
    row(os, "count", static_cast<double>(s.count));
    row(os, "mean", s.mean);
    row(os, "min", s.min);
    row(os, "max", s.max);
    for (std::size_t i = 0; i < s.quartile_means.size(); ++i)
        row(os, "quartile_mean_" + std::to_string(i + 1), s.quartile_means[i]);
    for (std::size_t i = 0; i < s.octile_means.size(); ++i)
        row(os, "octile_mean_" + std::to_string(i + 1), s.octile_means[i]);
}

void print_report(std::ostream& os, const LedgerReport& r, std::string_view first) {
    row(os, first, format_money(r.vb_net));
    row(os, "underwriter_net", format_money(r.uw_net));
    row(os, "external_interest", format_money(r.external_interest));
    row(os, "value_created", format_money(r.value_created));
}

} // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Venture-bank and EDCS underwriter economics"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "JSON parameter file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out_path, "Write output to this file instead of stdout");

    // stats
    auto* stats = app.add_subcommand("stats", "Summary statistics of a return dataset");
    std::string stats_ds;
    double stats_carry = 0.0;
    stats->add_option("dataset", stats_ds, "kauffman-original, kauffman-revised or a CSV path")->required();
    stats->add_option("--carry", stats_carry, "Apply the carry adjustment first")->check(CLI::Range(0.0, 0.99));

    // fit
    auto* fit = app.add_subcommand("fit", "Fit a return curve to a dataset");
    std::string fit_ds, fit_model = "exp", fit_method = "log-linear";
    fit->add_option("dataset", fit_ds)->required();
    fit->add_option("--model", fit_model)->check(CLI::IsMember({"exp", "poly7"}))->capture_default_str();
    fit->add_option("--method", fit_method, "Exponential fit method")
        ->check(CLI::IsMember({"log-linear", "gauss-newton"}))
        ->capture_default_str();

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate one quantity at an adjustment");
    double eval_p = 0.0;
    std::string eval_q = "vb_roi";
    eval->add_option("--P", eval_p, "Portfolio adjustment")->required();
    eval->add_option("--quantity", eval_q)->check(CLI::IsMember(quantity_names()))->capture_default_str();

    // deal
    auto* deal = app.add_subcommand("deal", "All deal components at an adjustment");
    double deal_p = 0.0;
    deal->add_option("--P", deal_p)->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Grid sweep to CSV (and optionally SVG)");
    std::string sweep_spec, sweep_svg, sweep_style, sweep_title;
    unsigned sweep_threads = 1;
    std::optional<double> sweep_cap;
    sweep->add_option("--spec", sweep_spec, "JSON sweep spec")->required()->check(CLI::ExistingFile);
    sweep->add_option("--threads", sweep_threads, "Worker threads, 0 = all cores")->capture_default_str();
    sweep->add_option("--svg", sweep_svg, "Also write an SVG figure");
    sweep->add_option("--style", sweep_style, "line or heatmap (default by dimension)")
        ->check(CLI::IsMember({"line", "heatmap"}));
    sweep->add_option("--title", sweep_title);
    sweep->add_option("--cap", sweep_cap, "Clip plotted values");

    // scenario
    auto* scenario = app.add_subcommand("scenario", "Underwriter ROI under the sale scenarios");
    double sc_p = 0.0;
    std::optional<double> sc_cb, sc_eq;
    scenario->add_option("--P", sc_p)->required();
    scenario->add_option("--frac-cb", sc_cb, "Fraction of the clawback lien sold");
    scenario->add_option("--frac-eq", sc_eq, "Fraction of the equity sold");

    // breakeven
    auto* breakeven = app.add_subcommand("breakeven", "Adjustment where underwriter ROI equals 1");
    std::string be_kind = "simple";
    double be_lo = -3.0, be_hi = 0.0;
    breakeven->add_option("--scenario", be_kind)
        ->check(CLI::IsMember({"simple", "clawback", "equity", "combined"}))
        ->capture_default_str();
    breakeven->add_option("--lo", be_lo)->capture_default_str();
    breakeven->add_option("--hi", be_hi)->capture_default_str();

    // castle
    auto* castle = app.add_subcommand("castle", "Single-castle ledger");
    bool castle_vc = false, castle_exact = false;
    double castle_fraction = 0.5;
    std::string castle_ledger;
    castle->add_flag("--vc-counterfactual", castle_vc, "VC funded by an interest-only bank loan");
    castle->add_flag("--exact", castle_exact, "Book premium carry to the cent");
    castle->add_option("--valuation-fraction", castle_fraction)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    castle->add_option("--ledger", castle_ledger, "Write the journal as CSV");

    // walkthrough
    auto* walk = app.add_subcommand("walkthrough", "Per-turn simplified example");
    bool walk_exact = false;
    walk->add_flag("--exact", walk_exact, "Do not round premium costs to basis points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        const ModelConfig cfg = load_model(g);

        if (stats->parsed()) {
            auto ds = load_input_dataset(stats_ds);
            if (stats_carry > 0.0)
                ds = adjust_for_carry(ds, stats_carry);
            with_output(g, out, [&](std::ostream& os) { print_stats(os, ds); });
        } else if (fit->parsed()) {
            const auto ds = load_input_dataset(fit_ds);
            with_output(g, out, [&](std::ostream& os) {
                row(os, "dataset", ds.label);
                if (fit_model == "poly7") {
                    const auto f = fit_poly7(ds);
                    for (std::size_t i = 0; i < f.params.coefficients.size(); ++i)
                        row(os, "c" + std::to_string(i), f.params.coefficients[i]);
                    row(os, "rms_residual", f.rms_residual);
                    row(os, "integral", poly_integral(f.params, 0.0, 1.0));
                } else {
                    const auto method =
                        fit_method == "gauss-newton" ? FitMethod::nonlinear_least_squares : FitMethod::log_linear;
                    const auto f = fit_exponential(ds, method);
                    row(os, "scale", f.scale);
                    row(os, "rate", f.rate);
                    row(os, "rms_residual", f.rms_residual);
                    row(os, "iterations", static_cast<double>(f.iterations));
                }
            });
        } else if (eval->parsed()) {
            const double v = evaluate_quantity(parse_quantity(eval_q), eval_p, cfg);
            with_output(g, out, [&](std::ostream& os) { row(os, eval_q, v); });
        } else if (deal->parsed()) {
            const auto d = compute_deal(deal_p, cfg.params);
            with_output(g, out, [&](std::ostream& os) { print_deal(os, deal_p, d); });
        } else if (sweep->parsed()) {
            SweepSpec spec;
            try {
                spec = load_sweep_spec(sweep_spec, cfg);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            const auto grid = run_sweep(spec, sweep_threads);
            with_output(g, out, [&](std::ostream& os) { write_grid_csv(grid.table, os); });
            if (!sweep_svg.empty()) {
                SvgStyle style = grid.table.two_dimensional() ? SvgStyle::heatmap : SvgStyle::line;
                if (!sweep_style.empty())
                    style = sweep_style == "heatmap" ? SvgStyle::heatmap : SvgStyle::line;
                SvgOptions opts;
                opts.title = sweep_title;
                opts.value_cap = sweep_cap;
                emit_svg(grid, sweep_svg, style, opts);
            }
        } else if (scenario->parsed()) {
            ModelConfig c = cfg;
            if (sc_cb)
                c.scenario.frac_clawback_sold = *sc_cb;
            if (sc_eq)
                c.scenario.frac_equity_sold = *sc_eq;
            try {
                c.scenario.validate();
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            const auto d = compute_deal(sc_p, c.params);
            with_output(g, out, [&](std::ostream& os) {
                row(os, "P", sc_p);
                row(os, "frac_clawback_sold", c.scenario.frac_clawback_sold);
                row(os, "frac_equity_sold", c.scenario.frac_equity_sold);
                row(os, "discount_factor", c.scenario.discount_factor());
                for (auto k : {ScenarioKind::simple, ScenarioKind::clawback_sales, ScenarioKind::equity_sales,
                               ScenarioKind::combined})
                    row(os, "uw_roi_" + std::string(to_string(k)), uw_roi_from(k, d, c.scenario));
            });
        } else if (breakeven->parsed()) {
            const auto kind = parse_scenario_kind(be_kind);
            const auto b = breakeven_adjustment(kind, cfg.params, cfg.scenario, be_lo, be_hi);
            with_output(g, out, [&](std::ostream& os) {
                row(os, "scenario", be_kind);
                row(os, "adjustment", b.adjustment);
                row(os, "net_return", b.net_return);
            });
        } else if (castle->parsed()) {
            const auto rounding = castle_exact ? CarryRounding::exact : CarryRounding::nearest_thousand;
            const Ledger* journal = nullptr;
            std::optional<CastleResult> cr;
            std::optional<CounterfactualResult> vr;
            if (castle_vc) {
                CounterfactualOptions o;
                o.valuation_fraction = castle_fraction;
                o.rounding = rounding;
                vr = castle_vc_counterfactual(o, cfg.params);
                journal = &vr->ledger;
            } else {
                CastleOptions o;
                o.valuation_fraction = castle_fraction;
                o.rounding = rounding;
                cr = castle_venture_bank(o, cfg.params);
                journal = &cr->ledger;
            }
            with_output(g, out, [&](std::ostream& os) {
                if (vr) {
                    print_report(os, vr->report, "vc_net");
                    row(os, "vc_net_rounded", format_money(vr->report.vb_net.rounded_to(Money::dollars(1))));
                    row(os, "interest_factor", vr->interest_factor);
                    row(os, "balloon_interest", format_money(vr->balloon_interest));
                    row(os, "premium_carry", format_money(vr->premium_carry_booked));
                    row(os, "clawback", format_money(vr->clawback));
                    row(os, "breakeven_multiple", vr->breakeven_multiple);
                } else {
                    print_report(os, cr->report, "venture_bank_net");
                    row(os, "premiums", format_money(cr->premiums));
                    row(os, "premium_carry_exact", format_money(cr->premium_carry_exact));
                    row(os, "premium_carry_booked", format_money(cr->premium_carry_booked));
                    row(os, "castle_value", format_money(cr->castle_value));
                    row(os, "payout", format_money(cr->payout));
                    row(os, "clawback", format_money(cr->clawback));
                }
            });
            if (!castle_ledger.empty()) {
                std::ofstream f(castle_ledger);
                if (!f)
                    throw std::runtime_error("cannot write " + castle_ledger);
                journal->write_csv(f);
            }
        } else if (walk->parsed()) {
            WalkthroughInputs in;
            in.round_premium_costs = !walk_exact;
            const auto w = simplified_walkthrough(cfg.params, in);
            with_output(g, out, [&](std::ostream& os) {
                row(os, "premium_cost_exit_term", w.premium_cost_exit_term);
                row(os, "premium_cost_payout_term", w.premium_cost_payout_term);
                row(os, "premium_cost", w.premium_cost);
                row(os, "payouts", w.payouts);
                row(os, "uw_equity", w.uw_equity);
                row(os, "vb_equity_remainder", w.vb_equity_remainder);
                row(os, "after_premiums", w.after_premiums);
                row(os, "clawback_payback", w.clawback_payback);
                row(os, "net_per_turn", w.net_per_turn);
                for (const auto& [moc, v] : w.moc_table)
                    row(os, "moc_" + format_number(moc), v);
                row(os, "uw_premiums", w.uw_premiums);
                row(os, "uw_payout_carry", w.uw_payout_carry);
                row(os, "uw_earnings", w.uw_earnings);
                row(os, "uw_roi_multiplier", w.uw_roi_multiplier);
            });
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("vbank-cli");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage)
        argv.push_back(s.data());
    argv.push_back(nullptr);
    return cli_main(static_cast<int>(storage.size()), argv.data(), out, err);
}

} // namespace vbank
