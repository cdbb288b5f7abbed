#pragma once

// Parameter sweeps over (P, MOC, sale fractions) producing the grids behind
// the phase-space figures, plus CSV and SVG emission.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vbank/config.hpp"

namespace vbank {

enum class SweepAxis { adjustment, moc, frac_clawback, frac_equity };

enum class Quantity {
    vb_roi,
    vb_earnings,
    uw_roi_simple,
    uw_roi_clawback,
    uw_roi_equity,
    uw_roi_combined,
    payout,
    clawback,
    premiums,
    net_return,
};

std::string_view to_string(SweepAxis a);
std::string_view to_string(Quantity q);
/// "P" names the adjustment axis. Throws std::invalid_argument.
SweepAxis parse_axis(std::string_view name);
Quantity parse_quantity(std::string_view name);
const std::vector<std::string>& quantity_names();

struct AxisRange {
    SweepAxis axis = SweepAxis::adjustment;
    double min = -3.0;
    double max = 3.0;
    int steps = 61;

    double at(int i) const;
    std::vector<double> points() const;
};

struct SweepSpec {
    AxisRange x;
    std::optional<AxisRange> y;
    Quantity quantity = Quantity::vb_roi;
    ModelConfig config;
    /// Adjustment used when P is not one of the axes.
    double adjustment = 1.55;

    /// Throws std::invalid_argument: steps >= 2, min < max, distinct axes,
    /// and every grid point a valid model input.
    void validate() const;
};

/// Rectangular table of values; values[iy * xs.size() + ix]. `ys` is empty
/// for a one-dimensional sweep. +infinity is the unbounded-ROI sentinel.
struct GridTable {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> values;

    bool two_dimensional() const { return !ys.empty(); }
    std::size_t rows() const { return ys.empty() ? 1 : ys.size(); }
    double at(std::size_t ix, std::size_t iy = 0) const { return values.at(iy * xs.size() + ix); }
    bool operator==(const GridTable&) const = default;
};

struct SweepGrid {
    SweepAxis x_axis = SweepAxis::adjustment;
    std::optional<SweepAxis> y_axis;
    Quantity quantity = Quantity::vb_roi;
    GridTable table;
};

/// One model evaluation; ROI quantities return +infinity for zero net cost.
double evaluate_quantity(Quantity q, double adjustment, const ModelConfig& config);

/// Deterministic; cells are independent and split across `threads` workers
/// (0 picks the hardware concurrency). Results do not depend on `threads`.
SweepGrid run_sweep(const SweepSpec& spec, unsigned threads = 1);

/// Sweep spec document: {"x": {"axis","min","max","steps"}, "y": {...} or
/// null, "quantity": name, "adjustment": P, "params": {flat config keys}}.
/// Everything except "x" is optional; unknown keys are rejected.
SweepSpec parse_sweep_spec(std::string_view text, const ModelConfig& base = {});
SweepSpec load_sweep_spec(const std::filesystem::path& path, const ModelConfig& base = {});

// ---------------------------------------------------------------------------
// Output.

/// Header "x,value" or "x,y,value"; numbers via format_number, `inf` for
/// the sentinel.
void write_grid_csv(const GridTable& g, std::ostream& out);
GridTable read_grid_csv(std::istream& in);
void emit_csv(const SweepGrid& g, const std::filesystem::path& path);

enum class SvgStyle { line, heatmap };

struct SvgOptions {
    std::string title;
    /// Reference line (1-D) or contour (2-D) at value 1.
    bool breakeven_reference = true;
    /// Clip the value range; unbounded ROI spikes otherwise flatten the plot.
    std::optional<double> value_cap;
};

/// SVG 1.1 document. A 2-D grid rendered as `line` draws one line per row.
void write_grid_svg(const SweepGrid& g, std::ostream& out, SvgStyle style, const SvgOptions& opts = {});
void emit_svg(const SweepGrid& g, const std::filesystem::path& path, SvgStyle style, const SvgOptions& opts = {});

} // namespace vbank
