#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sst/chart.hpp"
#include "sst/geometry.hpp"

namespace sst {

struct OverlayLine {
    Line line;
    std::string style_id;
};

struct RenderSpec {
    std::shared_ptr<const Chart> chart;
    Int page = 2;
    std::vector<OverlayLine> overlays;
    std::optional<Window> window_override;
    Int scale = 36; // pixels per chart unit
};

/// Deterministic SVG of one page: cells as dots labeled with their canonical
/// group strings, d_r arrows, overlay lines clipped to the window.  Pure
/// integer layout; identical inputs give byte-identical output.
std::string render_svg(const RenderSpec& rs);

} // namespace sst
