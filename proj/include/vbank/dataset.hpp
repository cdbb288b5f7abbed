#pragma once

// Fund-return datasets: the two built-in Kauffman listings, CSV ingestion,
// the carry adjustment that recovers gross fund multiples, and bin statistics.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vbank {

/// Fund return multiples (principal = 1.0), stored sorted ascending.
struct ReturnDataset {
    std::string label;
    std::vector<double> returns;
};

struct DatasetStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::array<double, 8> octile_means{};
    std::array<double, 4> quartile_means{};
    std::size_t count = 0;
};

inline constexpr std::string_view kKauffmanOriginal = "kauffman-original";
inline constexpr std::string_view kKauffmanRevised = "kauffman-revised";

/// The published listings, in their printed order.
std::span<const double> kauffman_original_values();
std::span<const double> kauffman_revised_values();

/// Validates (finite, >= 0) and sorts. Throws std::invalid_argument.
ReturnDataset make_dataset(std::string label, std::vector<double> values);

/// Built-in name or path to a one-value-per-line CSV (`#` starts a comment).
/// Throws std::invalid_argument for bad content, std::runtime_error for I/O.
ReturnDataset load_dataset(std::string_view name_or_path);

/// Values >= 1 are divided by (1 - carry); values below 1 are unchanged.
ReturnDataset adjust_for_carry(const ReturnDataset& ds, double carry = 0.20);

/// Means of `bins` contiguous slices of `sorted`. Slice sizes differ by at
/// most one; the earlier slices take the extra elements.
std::vector<double> bin_means(std::span<const double> sorted, std::size_t bins);

DatasetStats dataset_stats(const ReturnDataset& ds);

} // namespace vbank
