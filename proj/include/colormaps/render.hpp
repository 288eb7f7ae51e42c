#pragma once

#include <cmath>
#include <string>

#include "colormaps/colormap.hpp"
#include "colormaps/lattice.hpp"

// SVG rendering of a color map: one line segment per lattice edge, colored by
// label. The output is deterministic, so rendering the same map twice gives
// byte-identical files.

namespace colormaps {

namespace detail {

// pixels per unit edge and whitespace around the triangle
inline constexpr long long render_unit = 80;
inline constexpr long long render_margin = 40;

// sin(pi/3), the vertical spacing of lattice rows in edge units
inline constexpr double render_row = 0.8660254037844386;

inline const char* svg_color(color c)
{
    switch (c) {
        case color::c0: return "blue";
        case color::c1: return "red";
        case color::c3: return "green";
        default: return "black";
    }
}

struct pixel {
    long long x = 0;
    long long y = 0;
};

// lattice vertex r + s*xi to screen coordinates, y growing downward
inline pixel to_pixel(vertex v, long long height)
{
    long long x = render_margin + render_unit * v.r + (render_unit / 2) * v.s;
    long long y = height - (render_margin + std::llround(static_cast<double>(v.s) *
                                                         static_cast<double>(render_unit) *
                                                         render_row));
    return {x, y};
}

}  // namespace detail

// render C as a standalone SVG document
inline std::string render_svg(const color_map& C)
{
    const lattice& lat = C.lat();
    long long n = C.size();
    long long w = 2 * detail::render_margin + detail::render_unit * n;
    long long h = 2 * detail::render_margin +
                  std::llround(static_cast<double>(n) *
                               static_cast<double>(detail::render_unit) * detail::render_row);

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
           std::to_string(h) + "\">\n";
    out += "<rect width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h) +
           "\" fill=\"white\"/>\n";

    for (std::size_t ei = 0; ei < lat.edges.size(); ++ei) {
        edge_id e = lat.edges[ei];
        detail::pixel a = detail::to_pixel(e.o, h);
        detail::pixel b = detail::to_pixel(e.target(), h);
        out += "<line x1=\"" + std::to_string(a.x) + "\" y1=\"" + std::to_string(a.y) +
               "\" x2=\"" + std::to_string(b.x) + "\" y2=\"" + std::to_string(b.y) +
               "\" stroke=\"" + detail::svg_color(C.at(static_cast<int>(ei))) +
               "\" stroke-width=\"6\" stroke-linecap=\"round\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace colormaps
