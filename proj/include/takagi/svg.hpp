#pragma once

#include <optional>
#include <string>

#include "takagi/rational.hpp"

namespace takagi {

/// Static SVG rendering of the graph: a polyline through every dyadic graph
/// point at the given depth, optional shaded base-times-height rectangles for
/// humps up to `hump_orders`, and an optional horizontal level line. Byte
/// output is deterministic for fixed inputs (exact coordinates rendered at a
/// fixed decimal precision).
struct PlotRequest {
    unsigned depth{10};                 // curve sampling depth, <= 16
    std::optional<Rational> level;      // horizontal line at this height
    unsigned hump_orders{0};            // shade humps of order 1..hump_orders
    unsigned width{880};
    unsigned height{640};
};

std::string render_svg(const PlotRequest& req);

}  // namespace takagi
