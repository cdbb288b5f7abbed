#include "vbank/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vbank/text.hpp"

namespace vbank {

void write_grid_csv(const GridTable& g, std::ostream& out) {
    const std::size_t nx = g.xs.size();
    if (g.values.size() != nx * g.rows())
        throw std::invalid_argument("grid values do not match its axes");
    out << (g.two_dimensional() ? "x,y,value\n" : "x,value\n");
    for (std::size_t iy = 0; iy < g.rows(); ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            out << format_number(g.xs[ix]) << ',';
            if (g.two_dimensional())
                out << format_number(g.ys[iy]) << ',';
            out << format_number(g.at(ix, iy)) << '\n';
        }
    }
}

GridTable read_grid_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("grid CSV: missing header");
    const auto header = trim(line);
    bool two_d = false;
    if (header == "x,y,value")
        two_d = true;
    else if (header != "x,value")
        throw std::invalid_argument("grid CSV: unexpected header '" + std::string(header) + "'");

    std::vector<std::array<double, 3>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        std::array<double, 3> row{};
        std::size_t col = 0;
        std::string_view rest = line;
        const std::size_t want = two_d ? 3 : 2;
        while (true) {
            const auto comma = rest.find(',');
            const auto tok = rest.substr(0, comma);
            auto v = parse_number(tok);
            if (!v || col >= want)
                throw std::invalid_argument("grid CSV line " + std::to_string(lineno) + ": bad field");
            row[col++] = *v;
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (col != want)
            throw std::invalid_argument("grid CSV line " + std::to_string(lineno) + ": wrong field count");
        if (!two_d)
            row[2] = row[1];
        rows.push_back(row);
    }

    GridTable g;
    if (rows.empty())
        return g;
    std::size_t nx = rows.size();
    if (two_d) {
        nx = 0;
        while (nx < rows.size() && rows[nx][1] == rows[0][1])
            ++nx;
        if (rows.size() % nx != 0)
            throw std::invalid_argument("grid CSV: rows do not form a rectangle");
    }
    for (std::size_t ix = 0; ix < nx; ++ix)
        g.xs.push_back(rows[ix][0]);
    const std::size_t ny = rows.size() / nx;
    for (std::size_t iy = 0; iy < ny; ++iy) {
        if (two_d)
            g.ys.push_back(rows[iy * nx][1]);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const auto& r = rows[iy * nx + ix];
            if (r[0] != g.xs[ix] || (two_d && r[1] != g.ys[iy]))
                throw std::invalid_argument("grid CSV: rows do not form a rectangle");
            g.values.push_back(r[2]);
        }
    }
    return g;
}

void emit_csv(const SweepGrid& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    write_grid_csv(g.table, out);
    if (!out.flush())
        throw std::runtime_error("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr double kWidth = 800, kHeight = 520;
constexpr double kLeft = 80, kRight = 130, kTop = 50, kBottom = 60;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

struct Rgb {
    double r, g, b;
};

// viridis, five stops
Rgb colormap(double t) {
    static constexpr std::array<Rgb, 5> stops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
    t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
    const double f = t - static_cast<double>(i);
    const auto& a = stops[i];
    const auto& b = stops[i + 1];
    return {a.r + (b.r - a.r) * f, a.g + (b.g - a.g) * f, a.b + (b.b - a.b) * f};
}

std::string hex(Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(c.r)),
                  static_cast<int>(std::lround(c.g)), static_cast<int>(std::lround(c.b)));
    return buf;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo, hi;
    double frac(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.5; }
};

Range value_range(const GridTable& t, const SvgOptions& opts, bool include_one) {
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (double v : t.values) {
        if (!std::isfinite(v))
            continue;
        if (opts.value_cap)
            v = std::min(v, *opts.value_cap);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo > hi)
        lo = 0, hi = 1;
    if (include_one) {
        lo = std::min(lo, 1.0);
        hi = std::max(hi, 1.0);
    }
    if (hi - lo < 1e-12)
        hi = lo + 1.0;
    return {lo, hi};
}

double px_x(double f) { return kLeft + f * kPlotW; }
double px_y(double f) { return kTop + (1.0 - f) * kPlotH; }

void header(std::ostream& out, const SweepGrid& g, const SvgOptions& opts, std::string_view y_name) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const std::string title = opts.title.empty() ? std::string(to_string(g.quantity)) : opts.title;
    out << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
        << "</text>\n";
    out << "<text x=\"" << px_x(0.5) << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
        << escape(to_string(g.x_axis)) << "</text>\n";
    out << "<text transform=\"translate(20," << px_y(0.5) << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(y_name) << "</text>\n";
}

void axes(std::ostream& out, Range xr, Range yr) {
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kPlotW << "\" height=\"" << kPlotH
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double f = i / 5.0;
        const double xv = xr.lo + f * (xr.hi - xr.lo);
        const double yv = yr.lo + f * (yr.hi - yr.lo);
        out << "<line x1=\"" << num(px_x(f)) << "\" y1=\"" << kTop + kPlotH << "\" x2=\"" << num(px_x(f))
            << "\" y2=\"" << kTop + kPlotH + 5 << "\" stroke=\"black\"/>"
            << "<text x=\"" << num(px_x(f)) << "\" y=\"" << kTop + kPlotH + 18 << "\" text-anchor=\"middle\">"
            << label(xv) << "</text>\n";
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(px_y(f)) << "\" x2=\"" << kLeft << "\" y2=\""
            << num(px_y(f)) << "\" stroke=\"black\"/>"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(px_y(f) + 4) << "\" text-anchor=\"end\">" << label(yv)
            << "</text>\n";
    }
}

void line_chart(const SweepGrid& g, std::ostream& out, const SvgOptions& opts) {
    const GridTable& t = g.table;
    const Range xr{t.xs.front(), t.xs.back()};
    const Range yr = value_range(t, opts, opts.breakeven_reference);
    header(out, g, opts, to_string(g.quantity));
    axes(out, xr, yr);

    for (std::size_t iy = 0; iy < t.rows(); ++iy) {
        const std::string colour = t.rows() == 1 ? "#c0392b" : hex(colormap(iy / double(t.rows() - 1)));
        std::string path;
        bool pen_down = false;
        for (std::size_t ix = 0; ix < t.xs.size(); ++ix) {
            double v = t.at(ix, iy);
            if (!std::isfinite(v)) {
                pen_down = false; // unbounded: leave a gap
                continue;
            }
            if (opts.value_cap)
                v = std::min(v, *opts.value_cap);
            path += (pen_down ? " L" : " M") + num(px_x(xr.frac(t.xs[ix]))) + ',' + num(px_y(yr.frac(v)));
            pen_down = true;
        }
        out << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"/>\n";
        if (t.two_dimensional()) {
            out << "<text x=\"" << kLeft + kPlotW + 8 << "\" y=\"" << num(kTop + 14 + 14.0 * iy) << "\" fill=\""
                << colour << "\">" << escape(to_string(*g.y_axis)) << '=' << label(t.ys[iy]) << "</text>\n";
        }
    }
    if (opts.breakeven_reference) {
        out << "<line x1=\"" << kLeft << "\" y1=\"" << num(px_y(yr.frac(1.0))) << "\" x2=\"" << kLeft + kPlotW
            << "\" y2=\"" << num(px_y(yr.frac(1.0))) << "\" stroke=\"#1f5fbf\" stroke-dasharray=\"6,4\"/>\n";
    }
}

void heatmap(const SweepGrid& g, std::ostream& out, const SvgOptions& opts) {
    const GridTable& t = g.table;
    const std::size_t nx = t.xs.size();
    const std::size_t ny = t.rows();
    const Range xr{t.xs.front(), t.xs.back()};
    const Range yr = t.two_dimensional() ? Range{t.ys.front(), t.ys.back()} : Range{0.0, 1.0};
    const Range vr = value_range(t, opts, false);
    header(out, g, opts, g.y_axis ? to_string(*g.y_axis) : std::string_view{});
    const double cw = kPlotW / static_cast<double>(nx);
    const double ch = kPlotH / static_cast<double>(ny);

    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            double v = t.at(ix, iy);
            std::string fill = "#dddddd"; // unbounded
            if (std::isfinite(v))
                fill = hex(colormap(vr.frac(opts.value_cap ? std::min(v, *opts.value_cap) : v)));
            else if (opts.value_cap)
                fill = hex(colormap(1.0));
            out << "<rect x=\"" << num(kLeft + ix * cw) << "\" y=\"" << num(kTop + (ny - 1 - iy) * ch)
                << "\" width=\"" << num(cw + 0.05) << "\" height=\"" << num(ch + 0.05) << "\" fill=\"" << fill
                << "\"/>\n";
        }
    }
    axes(out, xr, yr);

    if (opts.breakeven_reference) {
        auto above = [](double v) { return v >= 1.0; };
        std::string path;
        for (std::size_t iy = 0; iy < ny; ++iy) {
            for (std::size_t ix = 0; ix < nx; ++ix) {
                const bool here = above(t.at(ix, iy));
                const double x0 = kLeft + ix * cw;
                const double y0 = kTop + (ny - 1 - iy) * ch;
                if (ix + 1 < nx && above(t.at(ix + 1, iy)) != here)
                    path += " M" + num(x0 + cw) + ',' + num(y0) + " v" + num(ch);
                if (iy + 1 < ny && above(t.at(ix, iy + 1)) != here)
                    path += " M" + num(x0) + ',' + num(y0) + " h" + num(cw);
            }
        }
        if (!path.empty())
            out << "<path d=\"" << path << "\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\"/>\n";
    }

    // colour bar
    const double bx = kLeft + kPlotW + 30;
    for (int i = 0; i < 50; ++i) {
        out << "<rect x=\"" << bx << "\" y=\"" << num(kTop + kPlotH * (1.0 - (i + 1) / 50.0)) << "\" width=\"18\" height=\""
            << num(kPlotH / 50.0 + 0.05) << "\" fill=\"" << hex(colormap((i + 0.5) / 50.0)) << "\"/>\n";
    }
    out << "<text x=\"" << bx + 24 << "\" y=\"" << kTop + 10 << "\">" << label(vr.hi) << "</text>\n"
        << "<text x=\"" << bx + 24 << "\" y=\"" << kTop + kPlotH << "\">" << label(vr.lo) << "</text>\n"
        << "<rect x=\"" << bx << "\" y=\"" << kTop + kPlotH + 20 << "\" width=\"18\" height=\"10\" fill=\"#dddddd\"/>"
        << "<text x=\"" << bx + 24 << "\" y=\"" << kTop + kPlotH + 30 << "\">inf</text>\n";
}

} // namespace

void write_grid_svg(const SweepGrid& g, std::ostream& out, SvgStyle style, const SvgOptions& opts) {
    if (g.table.xs.size() < 2 || g.table.values.size() != g.table.xs.size() * g.table.rows())
        throw std::invalid_argument("grid is not plottable");
    if (style == SvgStyle::heatmap)
        heatmap(g, out, opts);
    else
        line_chart(g, out, opts);
    out << "</svg>\n";
}

void emit_svg(const SweepGrid& g, const std::filesystem::path& path, SvgStyle style, const SvgOptions& opts) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    write_grid_svg(g, out, style, opts);
    if (!out.flush())
        throw std::runtime_error("write failed: " + path.string());
}

} // namespace vbank
