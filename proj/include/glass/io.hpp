#pragma once

// Artifact writers: DOT and JSON for graphs, JSON and cross-section CSV
// for cones.  All iteration orders are deterministic so identical inputs
// produce byte-identical files.

#include <glass/cones.hpp>
#include <glass/estimate.hpp>
#include <glass/graph.hpp>
#include <glass/refine.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

namespace glass {

using ojson = nlohmann::ordered_json;

inline double round6(double x) {
    if (x == 0) return 0;
    std::ostringstream ss;
    ss << std::setprecision(6) << x;
    return std::stod(ss.str());
}

inline std::string to_dot(const BoxGraph& g, const std::string& name = "tg") {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (const auto& v : g.vertices) out << "  \"" << v.str() << "\";\n";
    for (const auto& [u, v] : g.edges)
        out << "  \"" << g.vertices[static_cast<std::size_t>(u)].str() << "\" -> \""
            << g.vertices[static_cast<std::size_t>(v)].str() << "\";\n";
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const RefinedGraph& g, const std::string& name = "tgr") {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        out << "  \"" << g.vertex_label(i) << "\";\n";
    for (const auto& [u, v] : g.edges)
        out << "  \"" << g.vertex_label(static_cast<std::size_t>(u)) << "\" -> \""
            << g.vertex_label(static_cast<std::size_t>(v)) << "\";\n";
    out << "}\n";
    return out.str();
}

inline ojson graph_json(const BoxGraph& g) {
    ojson j;
    std::vector<std::string> vs;
    for (const auto& v : g.vertices) vs.push_back(v.str());
    j["vertices"] = vs;
    std::vector<std::vector<std::string>> es;
    for (const auto& [u, v] : g.edges)
        es.push_back({g.vertices[static_cast<std::size_t>(u)].str(),
                      g.vertices[static_cast<std::size_t>(v)].str()});
    j["edges"] = es;
    return j;
}

inline ojson graph_json(const RefinedGraph& g) {
    ojson j;
    j["level"] = g.level;
    j["words"] = g.words;
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) vs.push_back(g.vertex_label(i));
    j["vertices"] = vs;
    std::vector<std::vector<std::string>> es;
    for (const auto& [u, v] : g.edges)
        es.push_back({g.vertex_label(static_cast<std::size_t>(u)),
                      g.vertex_label(static_cast<std::size_t>(v))});
    j["edges"] = es;
    return j;
}

inline ojson cone_json(const Cone& c) {
    ojson j;
    j["wall"] = c.wall.str();
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : c.ineqs) {
        std::vector<std::string> row;
        for (const auto& x : r) row.push_back(rat_str(x));
        rows.push_back(row);
    }
    j["ineqs"] = rows;
    std::vector<std::vector<std::string>> rays;
    for (const auto& r : c.rays) {
        std::vector<std::string> row;
        for (const auto& x : r) row.push_back(rat_str(x));
        rays.push_back(row);
    }
    j["rays"] = rays;
    j["empty"] = is_empty(c);
    return j;
}

// Cross-section polygon vertices (first two reduced coordinates), ordered
// around the centroid for direct plotting.
inline std::string cross_section_csv(const Cone& c) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : c.rays)
        pts.emplace_back(rat_double(r[0]), r.size() > 1 ? rat_double(r[1]) : 0.0);
    double cx = 0, cy = 0;
    for (auto [x, y] : pts) {
        cx += x;
        cy += y;
    }
    if (!pts.empty()) {
        cx /= static_cast<double>(pts.size());
        cy /= static_cast<double>(pts.size());
    }
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
    });
    std::ostringstream out;
    out << "y1,y2\n" << std::setprecision(17);
    for (auto [x, y] : pts) out << x << "," << y << "\n";
    return out.str();
}

inline ojson condition_report_json(const ConditionReport& rep) {
    ojson j = ojson::array();
    for (const auto& c : rep.checks) {
        ojson e;
        e["condition"] = c.condition;
        e["pass"] = c.pass;
        if (!c.detail.empty()) e["detail"] = c.detail;
        j.push_back(e);
    }
    return j;
}

}  // namespace glass
