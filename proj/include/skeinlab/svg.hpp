/**
 * @file svg.hpp
 * @brief Static SVG drawing of circle packings.
 *
 * The picture is fitted into a fixed 800x800 viewBox, so the same packing
 * always produces the same bytes.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include "skeinlab/apollonian.hpp"

namespace skeinlab {

struct PackingSvgOptions {
    bool labels = true;       ///< write the label curvature inside disks large enough to hold it
    double min_radius_px = 0.3;  ///< skip disks smaller than this on screen
};

inline std::string render_packing_svg(const CirclePacking& p, const PackingSvgOptions& opt = {}) {
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_x;
    for (const auto& d : p.disks) {
        if (d.is_line) continue;
        lo_x = std::min(lo_x, d.center.x - d.radius);
        hi_x = std::max(hi_x, d.center.x + d.radius);
        lo_y = std::min(lo_y, d.center.y - d.radius);
        hi_y = std::max(hi_y, d.center.y + d.radius);
    }
    if (!std::isfinite(lo_x)) lo_x = lo_y = -1, hi_x = hi_y = 1;
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    const double scale = 760 / span;
    const double cx = (lo_x + hi_x) / 2, cy = (lo_y + hi_y) / 2;
    auto X = [&](double x) { return 400 + (x - cx) * scale; };
    auto Y = [&](double y) { return 400 - (y - cy) * scale; };

    std::ostringstream os;
    char buf[256];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\" width=\"800\" height=\"800\">\n";
    os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    for (const auto& d : p.disks) {
        if (d.is_line) {
            // Clip the line n . p = offset to a generous window around the picture.
            Point foot{d.normal.x * d.offset, d.normal.y * d.offset};
            Point dir{-d.normal.y, d.normal.x};
            double reach = 2 * span;
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"black\" stroke-width=\"1\"/>\n",
                          X(foot.x - reach * dir.x), Y(foot.y - reach * dir.y), X(foot.x + reach * dir.x),
                          Y(foot.y + reach * dir.y));
            os << buf;
            continue;
        }
        double r = d.radius * scale;
        if (r < opt.min_radius_px) continue;
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
                      X(d.center.x), Y(d.center.y), r);
        os << buf;
        std::string text = d.curvature.to_string();
        double size = std::min(r * 0.8, 1.6 * r / static_cast<double>(text.size()));
        if (opt.labels && size >= 6 && !d.bounding()) {
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%.3f\" y=\"%.3f\" font-size=\"%.1f\" text-anchor=\"middle\" "
                          "dominant-baseline=\"central\">",
                          X(d.center.x), Y(d.center.y), size);
            os << buf << text << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace skeinlab
