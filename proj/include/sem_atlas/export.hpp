#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "constructions.hpp"
#include "polyhedral_map.hpp"

namespace sem_atlas {

// 1-skeleton as an undirected DOT graph.
inline std::string to_dot(const PolyhedralMap& m, const std::string& name = "map") {
    std::ostringstream out;
    out << "graph \"" << name << "\" {\n";
    for (int v = 0; v < m.n_vertices(); ++v) out << "  " << v << ";\n";
    for (auto [u, v] : m.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

// Grid parameters when the map is an unmodified 4^4 or 3^6 series map.
inline std::optional<SeriesParams> svg_grid(const PolyhedralMap& m) {
    try {
        SeriesParams p = detail::require_grid(m, std::nullopt);
        if (p.family == Family::Hex) return std::nullopt;
        return p;
    } catch (const NotGridMap&) {
        return std::nullopt;
    }
}

// Fundamental polygon of a grid map. Every grid point carries its vertex
// label, so labels repeated on the boundary show the identifications.
inline std::string to_svg(const PolyhedralMap& m) {
    auto p = svg_grid(m);
    if (!p) throw NotGridMap("svg export needs an unmodified 4^4 or 3^6 grid map");
    const int rows = grid_rows(*p), cell = 60, pad = 30;
    const int w = 2 * pad + p->n * cell, h = 2 * pad + rows * cell;
    auto X = [&](int c) { return pad + c * cell; };
    auto Y = [&](int r) { return pad + (rows - r) * cell; };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
        << " " << h << "\">\n";
    out << "<title>" << grid_tag(*p) << "</title>\n";
    out << "<g stroke=\"black\" stroke-width=\"1.5\" fill=\"none\">\n";
    for (int c = 0; c < p->n; ++c)
        for (int r = 0; r < rows; ++r) {
            out << "<rect x=\"" << X(c) << "\" y=\"" << Y(r + 1) << "\" width=\"" << cell << "\" height=\"" << cell
                << "\"/>\n";
            if (p->family == Family::Tri)
                out << "<line x1=\"" << X(c) << "\" y1=\"" << Y(r) << "\" x2=\"" << X(c + 1) << "\" y2=\"" << Y(r + 1)
                    << "\"/>\n";
        }
    out << "</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
    for (int c = 0; c <= p->n; ++c)
        for (int r = 0; r <= rows; ++r) {
            out << "<circle cx=\"" << X(c) << "\" cy=\"" << Y(r) << "\" r=\"3\"/>\n";
            out << "<text x=\"" << X(c) + 9 << "\" y=\"" << Y(r) - 6 << "\">" << grid_point(*p, c, r) << "</text>\n";
        }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace sem_atlas
