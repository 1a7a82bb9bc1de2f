#pragma once

#include <string>

#include "oneshot/io.hpp"

namespace oneshot::io {

struct PlotLayout {
    double width = 640.0;
    double height = 420.0;
    double margin_left = 70.0;
    double margin_right = 20.0;
    double margin_top = 20.0;
    double margin_bottom = 50.0;
};

// One polyline per distinct value of the series column (single points become
// markers). Deterministic layout, no external assets.
std::string plot_svg(const Table& table, const std::string& x_col, const std::string& y_col,
                     const std::string& series_col, const PlotLayout& layout = {});

// The affine data->pixel transform used by plot_svg, exposed so tests can
// invert it.
struct AxisTransform {
    double scale = 1.0;
    double offset = 0.0;
    double apply(double v) const { return scale * v + offset; }
};
AxisTransform x_transform(const Table& table, const std::string& x_col, const PlotLayout& layout);
AxisTransform y_transform(const Table& table, const std::string& y_col, const PlotLayout& layout);

}  // namespace oneshot::io
