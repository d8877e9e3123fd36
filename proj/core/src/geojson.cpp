#include <json.hpp>

#include "arcjoin/errors.hpp"
#include "arcjoin/scene.hpp"

namespace arcjoin {

namespace {

using nlohmann::json;

Polyline coordinates_to_polyline(const json& coords) {
    if (!coords.is_array()) {
        throw ValidationError("LineString coordinates must be an array");
    }
    Polyline line;
    line.vertices.reserve(coords.size());
    for (const json& pos : coords) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
            throw ValidationError("position must be an array of at least two numbers");
        }
        // Components past x/y (elevation etc.) are ignored.
        line.vertices.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
    if (line.vertices.size() < 2) {
        throw ValidationError("LineString needs at least 2 positions");
    }
    return line;
}

void collect_geometry(const json& geometry, std::vector<Polyline>& out) {
    if (!geometry.is_object()) {
        return;
    }
    const auto type_it = geometry.find("type");
    if (type_it == geometry.end() || !type_it->is_string()) {
        return;
    }
    const std::string type = type_it->get<std::string>();
    const auto coords_it = geometry.find("coordinates");
    if (type == "LineString") {
        if (coords_it == geometry.end()) {
            throw ValidationError("LineString without coordinates");
        }
        out.push_back(coordinates_to_polyline(*coords_it));
    } else if (type == "MultiLineString") {
        if (coords_it == geometry.end() || !coords_it->is_array()) {
            throw ValidationError("MultiLineString without coordinate arrays");
        }
        for (const json& part : *coords_it) {
            out.push_back(coordinates_to_polyline(part));
        }
    }
    // Points, polygons and the rest are not stroked centerlines: skip.
}

void collect_node(const json& node, std::vector<Polyline>& out) {
    if (!node.is_object()) {
        return;
    }
    const auto type_it = node.find("type");
    if (type_it == node.end() || !type_it->is_string()) {
        return;
    }
    const std::string type = type_it->get<std::string>();
    if (type == "FeatureCollection") {
        const auto features = node.find("features");
        if (features != node.end() && features->is_array()) {
            for (const json& feature : *features) {
                collect_node(feature, out);
            }
        }
    } else if (type == "Feature") {
        const auto geometry = node.find("geometry");
        if (geometry != node.end()) {
            collect_geometry(*geometry, out);
        }
    } else {
        collect_geometry(node, out);
    }
}

} // namespace

Scene parse_geojson_lines(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("GeoJSON: ") + e.what(), 0, e.byte);
    } catch (const json::exception& e) {
        throw ParseError(std::string("GeoJSON: ") + e.what());
    }

    std::vector<Polyline> polylines;
    collect_node(doc, polylines);
    if (polylines.empty()) {
        throw ValidationError("GeoJSON document contains no line geometries");
    }
    return make_scene(std::move(polylines));
}

} // namespace arcjoin
