#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "subex/common.hpp"
#include "subex/polygon.hpp"

namespace subex {

// Layered SVG figures: fixed 800x800 viewport, gray source, colored bodies,
// a legend block and no timestamps, so outputs diff cleanly.
class SvgFigure {
  public:
    void add_polygon(const Polygon2& poly, const std::string& label, bool is_source = false) {
        if (poly.is_empty()) return;
        Layer l;
        l.kind = Layer::Poly;
        l.pts = poly.vertices();
        l.label = label;
        l.source = is_source;
        layers_.push_back(std::move(l));
        grow_bounds(layers_.back().pts);
    }

    void add_outline(const std::vector<Vec2>& pts, const std::string& label,
                     bool is_source = false) {
        if (pts.empty()) return;
        Layer l;
        l.kind = Layer::Poly;
        l.pts = pts;
        l.label = label;
        l.source = is_source;
        layers_.push_back(std::move(l));
        grow_bounds(pts);
    }

    void add_points(const std::vector<Vec2>& pts, const std::string& label) {
        Layer l;
        l.kind = Layer::Dots;
        l.pts.assign(pts.begin(), pts.begin() + std::min<size_t>(pts.size(), 2000));
        l.label = label;
        l.source = true;
        layers_.push_back(std::move(l));
        grow_bounds(layers_.back().pts);
    }

    std::string render() const {
        double spanx = std::max(xmax_ - xmin_, 1e-9);
        double spany = std::max(ymax_ - ymin_, 1e-9);
        double span = std::max(spanx, spany) * 1.1;
        double cx = 0.5 * (xmin_ + xmax_), cy = 0.5 * (ymin_ + ymax_);
        auto tx = [&](double x) { return 400.0 + (x - cx) / span * 760.0; };
        auto ty = [&](double y) { return 400.0 - (y - cy) / span * 760.0; };

        std::string out;
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
               "viewBox=\"0 0 800 800\">\n";
        out += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
        int color_idx = 0;
        std::vector<std::pair<std::string, std::string>> legend;
        for (const auto& l : layers_) {
            std::string color = l.source ? "#888888" : kPalette[color_idx++ % kNumColors];
            legend.emplace_back(l.label, color);
            if (l.kind == Layer::Poly) {
                out += "<polygon points=\"";
                for (Vec2 p : l.pts) out += fmt(tx(p.x)) + "," + fmt(ty(p.y)) + " ";
                out += "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
            } else {
                for (Vec2 p : l.pts)
                    out += "<circle cx=\"" + fmt(tx(p.x)) + "\" cy=\"" + fmt(ty(p.y)) +
                           "\" r=\"1.5\" fill=\"" + color + "\"/>\n";
            }
        }
        double ly = 24.0;
        for (const auto& [label, color] : legend) {
            out += "<rect x=\"16\" y=\"" + fmt(ly - 10) + "\" width=\"14\" height=\"14\" fill=\"" +
                   color + "\"/>\n";
            out += "<text x=\"36\" y=\"" + fmt(ly + 2) +
                   "\" font-family=\"monospace\" font-size=\"14\">" + label + "</text>\n";
            ly += 22.0;
        }
        out += "</svg>\n";
        return out;
    }

  private:
    struct Layer {
        enum Kind { Poly, Dots } kind = Poly;
        std::vector<Vec2> pts;
        std::string label;
        bool source = false;
    };

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", v);
        return buf;
    }

    void grow_bounds(const std::vector<Vec2>& pts) {
        for (Vec2 p : pts) {
            xmin_ = std::min(xmin_, p.x);
            xmax_ = std::max(xmax_, p.x);
            ymin_ = std::min(ymin_, p.y);
            ymax_ = std::max(ymax_, p.y);
        }
    }

    static constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                               "#9467bd", "#ff7f0e", "#17becf"};
    static constexpr int kNumColors = 6;

    std::vector<Layer> layers_;
    double xmin_ = kInf, xmax_ = -kInf, ymin_ = kInf, ymax_ = -kInf;
};

}  // namespace subex
