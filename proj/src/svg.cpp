#include "sst/svg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sst {

namespace {

constexpr Int kMargin = 48;

// Rounded division for pixel placement of rational chart coordinates.
Int round_div(Int num, Int den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Int half = den / 2;
    return num >= 0 ? (num + half) / den : -((-num + half) / den);
}

struct Layout {
    Window w;
    Int scale;

    Int width() const { return 2 * kMargin + (w.x_max - w.x_min) * scale; }
    Int height() const { return 2 * kMargin + (w.y_max - w.y_min) * scale; }

    Int px(Int x) const { return kMargin + (x - w.x_min) * scale; }
    Int py(Int y) const { return kMargin + (w.y_max - y) * scale; }

    // Pixel position of the rational chart point (xn/xd, yn/yd).
    Int px_rat(Int xn, Int xd) const {
        return round_div(checked_mul(kMargin, xd) +
                             checked_mul(checked_sub(xn, checked_mul(w.x_min, xd)), scale),
                         xd);
    }
    Int py_rat(Int yn, Int yd) const {
        return round_div(checked_mul(kMargin, yd) +
                             checked_mul(checked_sub(checked_mul(w.y_max, yd), yn), scale),
                         yd);
    }
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

// Clip y = slope x + intercept to the window box; endpoints come out as
// rationals over the slope.
struct Segment {
    Int x0n, x0d, y0n, y0d;
    Int x1n, x1d, y1n, y1d;
    bool visible = false;
};

Segment clip_line(const Line& line, const Window& w) {
    Segment s;
    Int ya = line.y_at(w.x_min), yb = line.y_at(w.x_max);
    if ((ya < w.y_min && yb < w.y_min) || (ya > w.y_max && yb > w.y_max)) return s;

    // Left endpoint.
    Int x0n = w.x_min, x0d = 1, y0n = ya, y0d = 1;
    Int x1n = w.x_max, x1d = 1, y1n = yb, y1d = 1;
    if (line.slope != 0) {
        if (ya < w.y_min) {
            x0n = checked_sub(w.y_min, line.intercept);
            x0d = line.slope;
            y0n = w.y_min;
        } else if (ya > w.y_max) {
            x0n = checked_sub(w.y_max, line.intercept);
            x0d = line.slope;
            y0n = w.y_max;
        }
        if (yb > w.y_max) {
            x1n = checked_sub(w.y_max, line.intercept);
            x1d = line.slope;
            y1n = w.y_max;
        } else if (yb < w.y_min) {
            x1n = checked_sub(w.y_min, line.intercept);
            x1d = line.slope;
            y1n = w.y_min;
        }
    }
    s = {x0n, x0d, y0n, y0d, x1n, x1d, y1n, y1d, true};
    return s;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_svg(const RenderSpec& rs) {
    if (!rs.chart) throw error("bad-argument", "render needs a chart");
    if (rs.scale < 1) throw error("bad-argument", "scale must be at least 1");
    if (rs.page < 2) throw error("page-not-computed", "pages start at 2");

    const Chart& chart = *rs.chart;
    Layout layout{rs.window_override.value_or(chart.window), rs.scale};

    PageTurner turner(chart);
    turner.run_to(rs.page);
    const PageView& view = turner.view(rs.page);

    // Level order for the dot stagger at shared bidegrees.
    std::vector<std::string> level_order;
    for (const auto& c : chart.group->classes()) level_order.push_back(c.id);
    auto level_index = [&](const std::string& id) {
        for (size_t i = 0; i < level_order.size(); ++i)
            if (level_order[i] == id) return Int(i);
        return Int(0);
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << layout.width()
        << "\" height=\"" << layout.height() << "\" viewBox=\"0 0 " << layout.width() << " "
        << layout.height() << "\">\n";
    out << "<defs><marker id=\"arrow\" viewBox=\"0 0 8 8\" refX=\"7\" refY=\"4\" "
           "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">"
           "<path d=\"M 0 0 L 8 4 L 0 8 z\" fill=\"#333333\"/></marker></defs>\n";
    out << "<rect width=\"" << layout.width() << "\" height=\"" << layout.height()
        << "\" fill=\"#ffffff\"/>\n";

    // Grid.
    out << "<g stroke=\"#e0e0e0\" stroke-width=\"1\">\n";
    for (Int x = layout.w.x_min; x <= layout.w.x_max; ++x)
        out << "<line x1=\"" << layout.px(x) << "\" y1=\"" << layout.py(layout.w.y_min)
            << "\" x2=\"" << layout.px(x) << "\" y2=\"" << layout.py(layout.w.y_max) << "\"/>\n";
    for (Int y = layout.w.y_min; y <= layout.w.y_max; ++y)
        out << "<line x1=\"" << layout.px(layout.w.x_min) << "\" y1=\"" << layout.py(y)
            << "\" x2=\"" << layout.px(layout.w.x_max) << "\" y2=\"" << layout.py(y) << "\"/>\n";
    out << "</g>\n";

    // Axes.
    out << "<g stroke=\"#999999\" stroke-width=\"2\">\n";
    if (layout.w.x_min <= 0 && 0 <= layout.w.x_max)
        out << "<line x1=\"" << layout.px(0) << "\" y1=\"" << layout.py(layout.w.y_min)
            << "\" x2=\"" << layout.px(0) << "\" y2=\"" << layout.py(layout.w.y_max) << "\"/>\n";
    if (layout.w.y_min <= 0 && 0 <= layout.w.y_max)
        out << "<line x1=\"" << layout.px(layout.w.x_min) << "\" y1=\"" << layout.py(0)
            << "\" x2=\"" << layout.px(layout.w.x_max) << "\" y2=\"" << layout.py(0) << "\"/>\n";
    out << "</g>\n";

    // Axis tick labels.
    out << "<g font-family=\"monospace\" font-size=\"10\" fill=\"#777777\">\n";
    for (Int x = layout.w.x_min; x <= layout.w.x_max; ++x)
        out << "<text x=\"" << layout.px(x) - 4 << "\" y=\"" << layout.py(layout.w.y_min) + 16
            << "\">" << x << "</text>\n";
    for (Int y = layout.w.y_min; y <= layout.w.y_max; ++y)
        out << "<text x=\"" << layout.px(layout.w.x_min) - 28 << "\" y=\"" << layout.py(y) + 4
            << "\">" << y << "</text>\n";
    out << "</g>\n";

    // Overlay lines, colored per style id in order of first appearance.
    std::map<std::string, const char*> styles;
    for (const auto& ov : rs.overlays)
        if (!styles.count(ov.style_id))
            styles[ov.style_id] = kPalette[styles.size() % (sizeof(kPalette) / sizeof(char*))];
    for (const auto& ov : rs.overlays) {
        Segment s = clip_line(ov.line, layout.w);
        if (!s.visible) continue;
        out << "<line x1=\"" << layout.px_rat(s.x0n, s.x0d) << "\" y1=\""
            << layout.py_rat(s.y0n, s.y0d) << "\" x2=\"" << layout.px_rat(s.x1n, s.x1d)
            << "\" y2=\"" << layout.py_rat(s.y1n, s.y1d) << "\" stroke=\""
            << styles[ov.style_id] << "\" stroke-width=\"2\" stroke-dasharray=\"6 3\"/>\n";
    }

    // Differentials acting on this page.
    out << "<g stroke=\"#333333\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\">\n";
    for (const Differential* d : chart.differentials_on_page(rs.page)) {
        if (!layout.w.contains(d->source) || !layout.w.contains(d->target)) continue;
        out << "<line x1=\"" << layout.px(d->source.x) << "\" y1=\"" << layout.py(d->source.y)
            << "\" x2=\"" << layout.px(d->target.x) << "\" y2=\"" << layout.py(d->target.y)
            << "\"/>\n";
    }
    out << "</g>\n";

    // Cells: dots with canonical labels, staggered per level.
    out << "<g font-family=\"monospace\" font-size=\"11\">\n";
    for (const auto& [key, cell] : view.cells) {
        if (!layout.w.contains(key)) continue;
        if (cell.group.is_zero()) continue;
        Int dx = level_index(key.level) * (rs.scale / 5);
        Int cx = layout.px(key.x) + dx;
        Int cy = layout.py(key.y);
        out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"4\" fill=\""
            << (cell.indeterminate ? "#cc8800" : "#222222") << "\"/>\n";
        std::string label = canonical_string(cell.group);
        if (cell.indeterminate) label += "?";
        out << "<text x=\"" << cx + 6 << "\" y=\"" << cy - 6 << "\">" << escape(label)
            << "</text>\n";
    }
    out << "</g>\n";

    out << "</svg>\n";
    return out.str();
}

} // namespace sst
