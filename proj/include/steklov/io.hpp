#ifndef STEKLOV_IO_HPP
#define STEKLOV_IO_HPP

// Body descriptions in JSON and the SVG figure of a solved domain.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "steklov/analytic_shell.hpp"
#include "steklov/eigensolver.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

/**
 * Accepted forms:
 *   {"type":"fourier","a0":1.0,"cos":[...],"sin":[...],"M":512}
 *   {"type":"ellipse","a":1.0,"b":1.2}            (optional "M")
 *   {"type":"hull","points":[[x,y],...]}          (optional "M")
 * M defaults to `default_M` when absent.
 */
inline StarBody2D body_from_json(const nlohmann::json& j, int default_M = 512) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw std::invalid_argument("body JSON: expected an object with a string \"type\"");
    }
    const std::string type = j["type"].get<std::string>();
    const int M = j.value("M", default_M);
    try {
        if (type == "fourier") {
            return StarBody2D(j.at("a0").get<double>(), j.value("cos", std::vector<double>{}),
                              j.value("sin", std::vector<double>{}), M);
        }
        if (type == "ellipse") {
            return body_from_ellipse(j.at("a").get<double>(), j.at("b").get<double>(), M);
        }
        if (type == "hull") {
            std::vector<Point2> pts;
            for (const auto& p : j.at("points")) {
                if (!p.is_array() || p.size() != 2) throw std::invalid_argument("body JSON: hull points must be [x, y]");
                pts.emplace_back(p[0].get<double>(), p[1].get<double>());
            }
            return body_from_hull(pts, M);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("body JSON: ") + e.what());
    }
    throw std::invalid_argument("body JSON: unknown type \"" + type + "\"");
}

inline StarBody2D body_from_json(const std::string& text, int default_M = 512) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("body JSON: ") + e.what());
    }
    return body_from_json(j, default_M);
}

inline StarBody2D body_from_json(const char* text, int default_M = 512) {
    return body_from_json(std::string(text), default_M);
}

inline nlohmann::json body_to_json(const StarBody2D& body) {
    return {{"type", "fourier"},
            {"a0", body.a0()},
            {"cos", std::vector<double>(body.cos_coeffs().begin(), body.cos_coeffs().end())},
            {"sin", std::vector<double>(body.sin_coeffs().begin(), body.sin_coeffs().end())},
            {"M", body.quadrature_size()}};
}

namespace detail {

inline std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// blue -> white -> red over [0, 1]
inline std::string band_color(double s) {
    s = std::clamp(s, 0.0, 1.0);
    const auto mix = [](double a, double b, double t) { return static_cast<int>(std::lround(a + (b - a) * t)); };
    int r = 0;
    int g = 0;
    int bl = 0;
    if (s < 0.5) {
        const double t = s / 0.5;
        r = mix(33, 247, t);
        g = mix(102, 247, t);
        bl = mix(172, 247, t);
    } else {
        const double t = (s - 0.5) / 0.5;
        r = mix(247, 178, t);
        g = mix(247, 24, t);
        bl = mix(247, 43, t);
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, bl);
    return buf;
}

}  // namespace detail

/**
 * @brief SVG with the outer boundary, the inner circle, the rbar circle and
 * the eigenfunction boundary trace drawn as a colored band.
 */
inline std::string render_svg(const AnnularDomain2D& domain, const std::vector<double>& trace) {
    const StarBody2D& body = domain.outer;
    const int M = static_cast<int>(trace.size());
    const StarBody2D grid = body.with_quadrature(M);
    const double rb = rbar(2, domain.R1);
    const double extent = 1.08 * std::max(rb, body.max_radius());
    constexpr double size = 600.0;
    const double scale = size / (2.0 * extent);
    const auto X = [&](double x) { return detail::fmt_coord(size / 2.0 + scale * x); };
    const auto Y = [&](double y) { return detail::fmt_coord(size / 2.0 - scale * y); };

    const auto [lo_it, hi_it] = std::minmax_element(trace.begin(), trace.end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<circle id=\"rbar\" cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"" << detail::fmt_coord(scale * rb)
       << "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
    os << "<circle id=\"inner\" cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\""
       << detail::fmt_coord(scale * domain.R1) << "\" fill=\"#dddddd\" stroke=\"black\"/>\n";
    os << "<g id=\"trace\" stroke-width=\"8\" stroke-linecap=\"round\">\n";
    for (int i = 0; i < M; ++i) {
        const Point2 p = grid.point(i);
        const Point2 q = grid.point((i + 1) % M);
        const double s = span > 0.0 ? (0.5 * (trace[i] + trace[(i + 1) % M]) - lo) / span : 0.5;
        os << "<line x1=\"" << X(p.x()) << "\" y1=\"" << Y(p.y()) << "\" x2=\"" << X(q.x()) << "\" y2=\""
           << Y(q.y()) << "\" stroke=\"" << detail::band_color(s) << "\"/>\n";
    }
    os << "</g>\n";
    os << "<path id=\"outer\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
    for (int i = 0; i < M; ++i) {
        const Point2 p = grid.point(i);
        os << (i == 0 ? "M" : " L") << X(p.x()) << ',' << Y(p.y());
    }
    os << " Z\"/>\n</svg>\n";
    return os.str();
}

}  // namespace steklov

#endif  // STEKLOV_IO_HPP
