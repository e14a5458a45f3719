#pragma once

#include <string>

#include <json.hpp>

#include "dcs/gauge.hpp"
#include "dcs/structures.hpp"
#include "dcs/surface.hpp"

namespace dcs {

/// Mesh file: {"vertex_count": n, "faces": [[i,j,k], ...]}.
TriangulatedSurface load_mesh(const std::string& path);

/// Structure file:
///   {"geometry": "euclidean"|"hyperbolic"|"spherical",
///    "family": "b1" | {"0-1": "c1", ...},
///    "f": [...], "alpha": [...],
///    "eta": {"0-1": value, ...},          // keys in min-max order
///    "C":   {"0,1": value, ...}}          // oriented keys; either or both
///                                         // orientations may appear
/// "alpha" and "C" are optional and default to zero.
ConformalData load_structure(const std::string& path, const TriangulatedSurface& S);

nlohmann::ordered_json structure_to_json(const TriangulatedSurface& S, const ConformalData& data);
nlohmann::ordered_json weighted_to_json(const TriangulatedSurface& S,
                                        const WeightedConformalData& data);
nlohmann::ordered_json metric_to_json(const TriangulatedSurface& S, const PartialMetric& m);

void save_structure(const std::string& path, const TriangulatedSurface& S,
                    const ConformalData& data);

/// Target file for the curvature solver: {"K": [...]}.
std::vector<double> load_target(const std::string& path, const TriangulatedSurface& S);

/// Serializes with insertion key order and %.17g floats, so identical inputs
/// produce byte-identical files.
std::string dump_deterministic(const nlohmann::ordered_json& j, int indent = 2);

void write_file(const std::string& path, const std::string& content);

}  // namespace dcs
