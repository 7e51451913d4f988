#pragma once

#include "model.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace mctp {

    struct PlotStyle {
        double size = 600.0;    // drawing square, pixels
        double margin = 20.0;
    };

    namespace detail {

        inline constexpr const char *route_colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                                        "#8c564b", "#e377c2", "#17becf"};

        inline std::string fmt3(double v) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.3f", v);
            return buf;
        }

    }  // namespace detail

    /// SVG drawing of a solution: one polyline per route (closed through the base), a square
    /// for the base, circles for T, small dots for V \ T, crosses for W, and a dashed disk of
    /// radius c around each W node. Output depends only on the inputs.
    inline void emit_plot(const Solution &sol, const Instance &inst, std::ostream &out, const PlotStyle &style = {}) {
        double x0 = inst.point(0).x, x1 = x0, y0 = inst.point(0).y, y1 = y0;
        for (const auto &p : inst.coords()) {
            x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
        }
        const double span = std::max({x1 - x0, y1 - y0, 1e-9});
        const double scale = (style.size - 2.0 * style.margin) / span;
        auto px = [&](double x) { return style.margin + (x - x0) * scale; };
        auto py = [&](double y) { return style.size - style.margin - (y - y0) * scale; };
        auto sx = [&](double x) { return detail::fmt3(px(x)); };
        auto sy = [&](double y) { return detail::fmt3(py(y)); };
        const std::string side = detail::fmt3(style.size);

        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
            << "\" viewBox=\"0 0 " << side << ' ' << side << "\">\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

        out << "<g id=\"coverage\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"3 3\">\n";
        for (NodeId j : inst.w_nodes()) {
            out << "<circle cx=\"" << sx(inst.point(j).x) << "\" cy=\"" << sy(inst.point(j).y) << "\" r=\""
                << detail::fmt3(inst.c() * scale) << "\"/>\n";
        }
        out << "</g>\n";

        out << "<g id=\"routes\" fill=\"none\" stroke-width=\"2\">\n";
        for (std::size_t k = 0; k < sol.routes.size(); ++k) {
            const auto &seq = sol.routes[k].seq;
            out << "<polyline class=\"route\" stroke=\"" << detail::route_colours[k % std::size(detail::route_colours)]
                << "\" points=\"";
            for (std::size_t a = 0; a <= seq.size(); ++a) {
                const Point &p = inst.point(seq[a % seq.size()]);
                out << (a ? " " : "") << sx(p.x) << ',' << sy(p.y);
            }
            out << "\"/>\n";
        }
        out << "</g>\n";

        out << "<g id=\"nodes\">\n";
        for (NodeId i = 0; i < inst.num_nodes(); ++i) {
            const double xp = px(inst.point(i).x), yp = py(inst.point(i).y);
            const std::string x = detail::fmt3(xp), y = detail::fmt3(yp);
            const std::string label = std::to_string(inst.label(i));
            if (i == base_node) {
                out << "<rect class=\"base\" data-id=\"" << label << "\" x=\"" << detail::fmt3(xp - 6)
                    << "\" y=\"" << detail::fmt3(yp - 6) << "\" width=\"12\" height=\"12\" fill=\"black\"/>\n";
            } else if (inst.is_t(i)) {
                out << "<circle class=\"T\" data-id=\"" << label << "\" cx=\"" << x << "\" cy=\"" << y
                    << "\" r=\"4\" fill=\"black\"/>\n";
            } else if (inst.is_v(i)) {
                out << "<circle class=\"V\" data-id=\"" << label << "\" cx=\"" << x << "\" cy=\"" << y
                    << "\" r=\"2.5\" fill=\"white\" stroke=\"black\"/>\n";
            } else {
                out << "<path class=\"W\" data-id=\"" << label << "\" d=\"M" << detail::fmt3(xp - 3) << ','
                    << detail::fmt3(yp - 3) << " l6,6 m-6,0 l6,-6\" stroke=\"black\"/>\n";
            }
        }
        out << "</g>\n</svg>\n";
    }

    inline void emit_plot(const Solution &sol, const Instance &inst, const std::filesystem::path &path,
                          const PlotStyle &style = {}) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        emit_plot(sol, inst, out, style);
        if (!out) throw std::runtime_error("failed writing " + path.string());
    }

}  // namespace mctp
