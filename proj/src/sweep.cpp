#include "vbank/sweep.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace vbank {

namespace {

constexpr std::pair<SweepAxis, std::string_view> kAxisNames[] = {
    {SweepAxis::adjustment, "P"},
    {SweepAxis::moc, "MOC"},
    {SweepAxis::frac_clawback, "frac_clawback"},
    {SweepAxis::frac_equity, "frac_equity"},
};

constexpr std::pair<Quantity, std::string_view> kQuantityNames[] = {
    {Quantity::vb_roi, "vb_roi"},
    {Quantity::vb_earnings, "vb_earnings"},
    {Quantity::uw_roi_simple, "uw_roi_simple"},
    {Quantity::uw_roi_clawback, "uw_roi_clawback"},
    {Quantity::uw_roi_equity, "uw_roi_equity"},
    {Quantity::uw_roi_combined, "uw_roi_combined"},
    {Quantity::payout, "payout"},
    {Quantity::clawback, "clawback"},
    {Quantity::premiums, "premiums"},
    {Quantity::net_return, "net_return"},
};

} // namespace

std::string_view to_string(SweepAxis a) {
    for (auto [k, name] : kAxisNames)
        if (k == a)
            return name;
    return "?";
}

std::string_view to_string(Quantity q) {
    for (auto [k, name] : kQuantityNames)
        if (k == q)
            return name;
    return "?";
}

SweepAxis parse_axis(std::string_view name) {
    for (auto [k, n] : kAxisNames)
        if (n == name)
            return k;
    throw std::invalid_argument("unknown sweep axis: " + std::string(name));
}

Quantity parse_quantity(std::string_view name) {
    for (auto [k, n] : kQuantityNames)
        if (n == name)
            return k;
    throw std::invalid_argument("unknown quantity: " + std::string(name));
}

const std::vector<std::string>& quantity_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (auto [_, n] : kQuantityNames)
            v.emplace_back(n);
        return v;
    }();
    return names;
}

double AxisRange::at(int i) const {
    if (i == steps - 1)
        return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::vector<double> AxisRange::points() const {
    std::vector<double> v(static_cast<std::size_t>(std::max(steps, 0)));
    for (int i = 0; i < steps; ++i)
        v[static_cast<std::size_t>(i)] = at(i);
    return v;
}

namespace {

struct Point {
    double adjustment;
    ModelConfig config;
};

void apply(SweepAxis axis, double v, Point& pt) {
    switch (axis) {
    case SweepAxis::adjustment: pt.adjustment = v; break;
    case SweepAxis::moc: pt.config.params.moc = v; break;
    case SweepAxis::frac_clawback: pt.config.scenario.frac_clawback_sold = v; break;
    case SweepAxis::frac_equity: pt.config.scenario.frac_equity_sold = v; break;
    }
}

void check_range(const AxisRange& r, const char* which) {
    if (r.steps < 2)
        throw std::invalid_argument(std::string(which) + " axis needs at least 2 steps");
    if (!(r.min < r.max))
        throw std::invalid_argument(std::string(which) + " axis needs min < max");
}

} // namespace

void SweepSpec::validate() const {
    check_range(x, "x");
    if (y) {
        check_range(*y, "y");
        if (y->axis == x.axis)
            throw std::invalid_argument("sweep axes must be distinct");
    }
    // the domain is a box, so its corners cover every grid point
    for (double xv : {x.min, x.max}) {
        for (double yv : y ? std::vector<double>{y->min, y->max} : std::vector<double>{0.0}) {
            Point pt{adjustment, config};
            apply(x.axis, xv, pt);
            if (y)
                apply(y->axis, yv, pt);
            pt.config.params.validate();
            pt.config.scenario.validate();
        }
    }
}

double evaluate_quantity(Quantity q, double adjustment, const ModelConfig& config) {
    const auto& p = config.params;
    if (q == Quantity::net_return)
        return net_portfolio_return(adjustment);
    const DealComponents d = compute_deal(adjustment, p);
    switch (q) {
    case Quantity::vb_roi: return d.vb_roi;
    case Quantity::vb_earnings: return d.vb_earnings;
    case Quantity::uw_roi_simple: return d.uw_roi.as_double();
    case Quantity::uw_roi_clawback: return uw_roi_from(ScenarioKind::clawback_sales, d, config.scenario).as_double();
    case Quantity::uw_roi_equity: return uw_roi_from(ScenarioKind::equity_sales, d, config.scenario).as_double();
    case Quantity::uw_roi_combined: return uw_roi_from(ScenarioKind::combined, d, config.scenario).as_double();
    case Quantity::payout: return d.payout;
    case Quantity::clawback: return d.clawback;
    case Quantity::premiums: return d.premiums_uw_total;
    case Quantity::net_return: break;
    }
    throw std::logic_error("unhandled quantity");
}

SweepGrid run_sweep(const SweepSpec& spec, unsigned threads) {
    spec.validate();
    SweepGrid g;
    g.x_axis = spec.x.axis;
    g.quantity = spec.quantity;
    g.table.xs = spec.x.points();
    if (spec.y) {
        g.y_axis = spec.y->axis;
        g.table.ys = spec.y->points();
    }
    const std::size_t nx = g.table.xs.size();
    const std::size_t cells = nx * g.table.rows();
    g.table.values.assign(cells, 0.0);

    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            Point pt{spec.adjustment, spec.config};
            apply(spec.x.axis, g.table.xs[c % nx], pt);
            if (spec.y)
                apply(spec.y->axis, g.table.ys[c / nx], pt);
            g.table.values[c] = evaluate_quantity(spec.quantity, pt.adjustment, pt.config);
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
    if (threads <= 1) {
        fill(0, cells);
        return g;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (cells + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t b = t * chunk;
        const std::size_t e = std::min(cells, b + chunk);
        if (b < e)
            pool.emplace_back(fill, b, e);
    }
    pool.clear(); // joins
    return g;
}

namespace {

using json = nlohmann::json;

double number_field(const json& obj, const char* key, double fallback) {
    auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    if (!it->is_number())
        throw std::invalid_argument(std::string("sweep spec: '") + key + "' must be a number");
    return it->get<double>();
}

AxisRange parse_range(const json& obj, const char* which) {
    if (!obj.is_object())
        throw std::invalid_argument(std::string("sweep spec: '") + which + "' must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (key != "axis" && key != "min" && key != "max" && key != "steps")
            throw std::invalid_argument("sweep spec: unknown key '" + key + "' in " + which);
    }
    AxisRange r;
    if (!obj.contains("axis") || !obj["axis"].is_string())
        throw std::invalid_argument(std::string("sweep spec: ") + which + ".axis must be a string");
    r.axis = parse_axis(obj["axis"].get<std::string>());
    // defaults follow the published figure ranges
    switch (r.axis) {
    case SweepAxis::adjustment: r.min = -3.0; r.max = 3.0; r.steps = 61; break;
    case SweepAxis::moc: r.min = 1.0; r.max = 47.0; r.steps = 47; break;
    case SweepAxis::frac_clawback: r.min = 0.0; r.max = 1.0; r.steps = 21; break;
    case SweepAxis::frac_equity: r.min = 0.0; r.max = 0.7; r.steps = 15; break;
    }
    r.min = number_field(obj, "min", r.min);
    r.max = number_field(obj, "max", r.max);
    const double steps = number_field(obj, "steps", r.steps);
    if (steps != static_cast<int>(steps))
        throw std::invalid_argument("sweep spec: steps must be an integer");
    r.steps = static_cast<int>(steps);
    return r;
}

} // namespace

SweepSpec parse_sweep_spec(std::string_view text, const ModelConfig& base) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("sweep spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("sweep spec must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "x" && key != "y" && key != "quantity" && key != "adjustment" && key != "params")
            throw std::invalid_argument("sweep spec: unknown key '" + key + "'");
    }
    if (!doc.contains("x"))
        throw std::invalid_argument("sweep spec: missing 'x'");

    SweepSpec spec;
    spec.config = base;
    spec.x = parse_range(doc["x"], "x");
    if (doc.contains("y") && !doc["y"].is_null())
        spec.y = parse_range(doc["y"], "y");
    if (doc.contains("quantity")) {
        if (!doc["quantity"].is_string())
            throw std::invalid_argument("sweep spec: quantity must be a string");
        spec.quantity = parse_quantity(doc["quantity"].get<std::string>());
    }
    spec.adjustment = number_field(doc, "adjustment", spec.adjustment);
    if (doc.contains("params"))
        spec.config = parse_config(doc["params"].dump(), base);
    spec.validate();
    return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path, const ModelConfig& base) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read sweep spec: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_sweep_spec(ss.str(), base);
}

} // namespace vbank
