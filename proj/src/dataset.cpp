#include "vbank/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "vbank/text.hpp"

namespace vbank {

namespace {

// Kauffman Foundation fund multiples, net of fees and carry, as published.
constexpr double kOriginal[] = {
    0.04, .10, .10, .15, .15, .20, .30, .30, .30, .30, .40, .50, .60, .60, .60,
    .65, .65, .65, .65, .65, .65, .70, .70, .70, .70, .75, .75, .75, .75, .75,
    .75, .80, .80, .85, .90, .90, .90, .90, .90, .90, .90, .90, .90, .99, .99,
    .99, 1.05, 1.10, 1.10, 1.10, 1.10, 1.10, 1.20, 1.20, 1.24, 1.25, 1.25,
    1.30, 1.30, 1.30, 1.35, 1.35, 1.35, 1.35, 1.35, 1.35, 1.40, 1.50, 1.50,
    1.50, 1.60, 1.60, 1.70, 1.70, 1.70, 1.70, 1.80, 2.10, 2.10, 2.20, 2.20,
    2.20, 2.20, 2.30, 2.30, 2.30, 2.60, 3.00, 3.20, 3.20, 3.20, 3.80, 6.00,
    8.00
};

// Published revision with winners grossed up for a 20% carry. It is not
// exactly adjust_for_carry(kOriginal): it carries one extra 1.625 and 2.125.
constexpr double kRevised[] = {
    0.04, .10, .10, .15, .15, .20, .30, .30, .30, .30, .40, .50, .60, .60, .60,
    .65, .65, .65, .65, .65, .65, .70, .70, .70, .70, .75, .75, .75, .75, .75,
    .75, .80, .80, .85, .90, .90, .90, .90, .90, .90, .90, .90, .90, .99, .99,
    .99, 1.3125, 1.375, 1.375, 1.375, 1.375, 1.375, 1.5, 1.5, 1.55, 1.5625,
    1.5625, 1.625, 1.625, 1.625, 1.625, 1.6875, 1.6875, 1.6875, 1.6875, 1.6875,
    1.6875, 1.75, 1.875, 1.875, 1.875, 2.0, 2.0, 2.125, 2.125, 2.125, 2.125,
    2.125, 2.25, 2.625, 2.625, 2.75, 2.75, 2.75, 2.75, 2.875, 2.875, 2.875,
    3.25, 3.75, 4, 4, 4, 4.75, 7.5, 10
};

} // namespace

std::span<const double> kauffman_original_values() { return kOriginal; }
std::span<const double> kauffman_revised_values() { return kRevised; }

ReturnDataset make_dataset(std::string label, std::vector<double> values) {
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("dataset '" + label + "': return multiples must be finite and >= 0");
    }
    std::sort(values.begin(), values.end());
    return ReturnDataset{std::move(label), std::move(values)};
}

ReturnDataset load_dataset(std::string_view name_or_path) {
    if (name_or_path == kKauffmanOriginal) {
        auto v = kauffman_original_values();
        return make_dataset(std::string(name_or_path), {v.begin(), v.end()});
    }
    if (name_or_path == kKauffmanRevised) {
        auto v = kauffman_revised_values();
        return make_dataset(std::string(name_or_path), {v.begin(), v.end()});
    }

    std::ifstream in{std::string(name_or_path)};
    if (!in)
        throw std::runtime_error("unknown dataset or unreadable file: " + std::string(name_or_path));

    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = trim(std::string_view(line).substr(0, line.find('#')));
        if (body.empty())
            continue;
        auto v = parse_number(body);
        if (!v)
            throw std::invalid_argument(std::string(name_or_path) + ":" + std::to_string(lineno) +
                                        ": not a number: '" + std::string(body) + "'");
        if (*v < 0.0)
            throw std::invalid_argument(std::string(name_or_path) + ":" + std::to_string(lineno) +
                                        ": negative return multiple");
        values.push_back(*v);
    }
    if (in.bad())
        throw std::runtime_error("read error: " + std::string(name_or_path));
    return make_dataset(std::string(name_or_path), std::move(values));
}

ReturnDataset adjust_for_carry(const ReturnDataset& ds, double carry) {
    if (!(carry >= 0.0 && carry < 1.0))
        throw std::invalid_argument("carry must lie in [0, 1)");
    const double keep = 1.0 - carry;
    ReturnDataset out{ds.label + "/carry-adjusted", ds.returns};
    for (double& r : out.returns) {
        if (r >= 1.0)
            r /= keep;
    }
    // monotone map, order is preserved
    return out;
}

std::vector<double> bin_means(std::span<const double> sorted, std::size_t bins) {
    if (bins == 0 || sorted.size() < bins)
        throw std::invalid_argument("bin_means: need at least one element per bin");
    const std::size_t base = sorted.size() / bins;
    const std::size_t extra = sorted.size() % bins;
    std::vector<double> means;
    means.reserve(bins);
    std::size_t start = 0;
    for (std::size_t b = 0; b < bins; ++b) {
        const std::size_t n = base + (b < extra ? 1 : 0);
        auto slice = sorted.subspan(start, n);
        means.push_back(std::accumulate(slice.begin(), slice.end(), 0.0) / static_cast<double>(n));
        start += n;
    }
    return means;
}

DatasetStats dataset_stats(const ReturnDataset& ds) {
    if (ds.returns.empty())
        throw std::invalid_argument("dataset_stats: empty dataset");
    if (ds.returns.size() < 8)
        throw std::invalid_argument("dataset_stats: octile means need at least 8 returns");
    const auto& r = ds.returns;
    DatasetStats s;
    s.count = r.size();
    s.mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
    s.min = r.front();
    s.max = r.back();
    auto oct = bin_means(r, 8);
    auto quart = bin_means(r, 4);
    std::copy(oct.begin(), oct.end(), s.octile_means.begin());
    std::copy(quart.begin(), quart.end(), s.quartile_means.begin());
    return s;
}

} // namespace vbank
