#include "oneshot/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oneshot::io {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

int column_index(const Table& t, const std::string& name) {
    for (size_t c = 0; c < t.columns.size(); ++c)
        if (t.columns[c] == name) return int(c);
    throw validation_error("plot: missing column '" + name + "'");
}

std::pair<double, double> column_range(const Table& t, int col) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& row : t.rows) {
        const double v = row[static_cast<size_t>(col)];
        if (!std::isfinite(v)) throw validation_error("plot: non-finite value in plotted column");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (t.rows.empty()) throw validation_error("plot: empty table");
    if (hi - lo < 1e-300) {
        lo -= 1.0;
        hi += 1.0;
    }
    return {lo, hi};
}

AxisTransform make_transform(double lo, double hi, double pix_lo, double pix_hi) {
    AxisTransform tr;
    tr.scale = (pix_hi - pix_lo) / (hi - lo);
    tr.offset = pix_lo - tr.scale * lo;
    return tr;
}

}  // namespace

AxisTransform x_transform(const Table& table, const std::string& x_col, const PlotLayout& ly) {
    const auto [lo, hi] = column_range(table, column_index(table, x_col));
    return make_transform(lo, hi, ly.margin_left, ly.width - ly.margin_right);
}

AxisTransform y_transform(const Table& table, const std::string& y_col, const PlotLayout& ly) {
    const auto [lo, hi] = column_range(table, column_index(table, y_col));
    // pixel y grows downward
    return make_transform(lo, hi, ly.height - ly.margin_bottom, ly.margin_top);
}

std::string plot_svg(const Table& table, const std::string& x_col, const std::string& y_col,
                     const std::string& series_col, const PlotLayout& ly) {
    const int xc = column_index(table, x_col);
    const int yc = column_index(table, y_col);
    const int sc = column_index(table, series_col);
    const AxisTransform tx = x_transform(table, x_col, ly);
    const AxisTransform ty = y_transform(table, y_col, ly);

    // series keys in order of first appearance
    std::vector<double> keys;
    for (const auto& row : table.rows)
        if (std::find(keys.begin(), keys.end(), row[static_cast<size_t>(sc)]) == keys.end())
            keys.push_back(row[static_cast<size_t>(sc)]);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << ly.width << "\" height=\""
        << ly.height << "\" viewBox=\"0 0 " << ly.width << " " << ly.height << "\">\n";
    svg << "  <rect width=\"" << ly.width << "\" height=\"" << ly.height
        << "\" fill=\"white\"/>\n";

    // axes
    const double x0 = ly.margin_left;
    const double x1 = ly.width - ly.margin_right;
    const double y0 = ly.height - ly.margin_bottom;
    const double y1 = ly.margin_top;
    svg << "  <line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
        << "\" stroke=\"black\"/>\n";

    const auto [xlo, xhi] = column_range(table, xc);
    const auto [ylo, yhi] = column_range(table, yc);
    svg << "  <text x=\"" << x0 << "\" y=\"" << (y0 + 18) << "\" font-size=\"11\">"
        << format_number(xlo) << "</text>\n";
    svg << "  <text x=\"" << x1 << "\" y=\"" << (y0 + 18)
        << "\" font-size=\"11\" text-anchor=\"end\">" << format_number(xhi) << "</text>\n";
    svg << "  <text x=\"" << (x0 - 6) << "\" y=\"" << y0
        << "\" font-size=\"11\" text-anchor=\"end\">" << format_number(ylo) << "</text>\n";
    svg << "  <text x=\"" << (x0 - 6) << "\" y=\"" << (y1 + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << format_number(yhi) << "</text>\n";
    svg << "  <text x=\"" << (0.5 * (x0 + x1)) << "\" y=\"" << (ly.height - 10)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << x_col << "</text>\n";

    for (size_t k = 0; k < keys.size(); ++k) {
        const char* color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
        std::vector<std::pair<double, double>> pts;
        for (const auto& row : table.rows)
            if (row[static_cast<size_t>(sc)] == keys[k])
                pts.emplace_back(tx.apply(row[static_cast<size_t>(xc)]), ty.apply(row[static_cast<size_t>(yc)]));
        if (pts.size() == 1) {
            svg << "  <circle cx=\"" << format_number(pts[0].first) << "\" cy=\""
                << format_number(pts[0].second) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        } else {
            svg << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
                << "points=\"";
            for (size_t i = 0; i < pts.size(); ++i) {
                if (i) svg << ' ';
                svg << format_number(pts[i].first) << ',' << format_number(pts[i].second);
            }
            svg << "\"/>\n";
        }
        // legend entry
        const double lx = x1 - 150.0;
        const double lyy = y1 + 14.0 * double(k) + 8.0;
        svg << "  <rect x=\"" << lx << "\" y=\"" << (lyy - 8) << "\" width=\"10\" height=\"10\" "
            << "fill=\"" << color << "\"/>\n";
        svg << "  <text x=\"" << (lx + 14) << "\" y=\"" << lyy << "\" font-size=\"11\">"
            << series_col << " = " << format_number(keys[k]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace oneshot::io
