#include "vbank/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vbank {

namespace {

using json = nlohmann::json;

template <class F>
void for_each_field(ModelConfig& c, F&& f) {
    f("edcs_rate", c.params.edcs_rate);
    f("clawback_fraction", c.params.clawback_fraction);
    f("equity_fraction", c.params.equity_fraction);
    f("vb_carry_rate", c.params.vb_carry_rate);
    f("uw_cost_rate", c.params.uw_cost_rate);
    f("payout_year", c.params.payout_year);
    f("exit_year", c.params.exit_year);
    f("moc", c.params.moc);
    f("frac_clawback_sold", c.scenario.frac_clawback_sold);
    f("frac_equity_sold", c.scenario.frac_equity_sold);
    f("sale_discount_rate", c.scenario.sale_discount_rate);
    f("discount_horizon_years", c.scenario.discount_horizon_years);
}

} // namespace

bool operator==(const ModelConfig& a, const ModelConfig& b) { return dump_config(a) == dump_config(b); }

ModelConfig parse_config(std::string_view text, const ModelConfig& base) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");

    ModelConfig out = base;
    std::size_t known = 0;
    for_each_field(out, [&](const char* key, double& field) {
        auto it = doc.find(key);
        if (it == doc.end())
            return;
        if (!it->is_number())
            throw ConfigError(std::string("config key '") + key + "' must be a number");
        field = it->get<double>();
        ++known;
    });
    if (known != doc.size()) {
        ModelConfig probe;
        for (const auto& [key, _] : doc.items()) {
            bool found = false;
            for_each_field(probe, [&](const char* k, double&) { found = found || key == k; });
            if (!found)
                throw ConfigError("unknown config key '" + key + "'");
        }
    }
    try {
        out.params.validate();
        out.scenario.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return out;
}

ModelConfig load_config(const std::filesystem::path& path, const ModelConfig& base) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), base);
}

std::string dump_config(const ModelConfig& c) {
    json doc = json::object();
    ModelConfig copy = c;
    for_each_field(copy, [&](const char* key, double& field) { doc[key] = field; });
    return doc.dump(2);
}

} // namespace vbank
