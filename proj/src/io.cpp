#include "dcs/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dcs/error.hpp"

namespace dcs {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::SchemaError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::SchemaError, path + ": " + e.what());
  }
  return j;
}

std::pair<int, int> parse_edge_key(const std::string& key, char sep) {
  const auto pos = key.find(sep);
  if (pos == std::string::npos || pos == 0 || pos + 1 >= key.size())
    fail(Errc::SchemaError, "bad edge key '" + key + "'");
  try {
    return {std::stoi(key.substr(0, pos)), std::stoi(key.substr(pos + 1))};
  } catch (const std::exception&) {
    fail(Errc::SchemaError, "bad edge key '" + key + "'");
  }
}

std::string eta_key(const TriangulatedSurface& S, int e) {
  auto [a, b] = S.edges()[e];
  return std::to_string(a) + "-" + std::to_string(b);
}

std::string C_key(const TriangulatedSurface& S, int e) {
  auto [a, b] = S.edges()[e];
  return std::to_string(a) + "," + std::to_string(b);
}

Geometry geometry_from_name(const std::string& name) {
  if (name == "euclidean") return Geometry::Euclidean;
  if (name == "hyperbolic") return Geometry::Hyperbolic;
  if (name == "spherical") return Geometry::Spherical;
  fail(Errc::SchemaError, "unknown geometry '" + name + "'");
}

std::vector<double> read_vertex_array(const json& j, const std::string& field, int n) {
  if (!j.contains(field)) return {};
  const auto& a = j.at(field);
  if (!a.is_array() || static_cast<int>(a.size()) != n)
    fail(Errc::SchemaError, "'" + field + "' must be an array of length " + std::to_string(n));
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    if (!a[i].is_number()) fail(Errc::SchemaError, "'" + field + "' holds a non-number");
    v[i] = a[i].get<double>();
  }
  return v;
}

void format_number(std::string& out, const ordered_json& j) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
      out += "null";
      return;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
  } else {
    out += j.dump();
  }
}

void dump_rec(std::string& out, const ordered_json& j, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<size_t>(indent) * depth, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + ordered_json(it.key()).dump() + ": ";
      dump_rec(out, it.value(), indent, depth + 1);
    }
    out += "\n" + close_pad + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& v : j) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      dump_rec(out, v, indent, depth + 1);
    }
    out += "\n" + close_pad + "]";
  } else if (j.is_number()) {
    format_number(out, j);
  } else {
    out += j.dump();
  }
}

}  // namespace

TriangulatedSurface load_mesh(const std::string& path) {
  const json j = parse_file(path);
  if (!j.is_object() || !j.contains("vertex_count") || !j.contains("faces"))
    fail(Errc::SchemaError, path + ": mesh needs 'vertex_count' and 'faces'");
  if (!j["vertex_count"].is_number_integer())
    fail(Errc::SchemaError, path + ": 'vertex_count' must be an integer");
  const int n = j["vertex_count"].get<int>();
  if (!j["faces"].is_array()) fail(Errc::SchemaError, path + ": 'faces' must be an array");
  std::vector<std::array<int, 3>> faces;
  for (const auto& f : j["faces"]) {
    if (!f.is_array() || f.size() != 3 || !f[0].is_number_integer() ||
        !f[1].is_number_integer() || !f[2].is_number_integer())
      fail(Errc::SchemaError, path + ": each face must be three vertex ids");
    faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
  }
  return TriangulatedSurface::build(n, std::move(faces));
}

ConformalData load_structure(const std::string& path, const TriangulatedSurface& S) {
  const json j = parse_file(path);
  if (!j.is_object()) fail(Errc::SchemaError, path + ": structure must be an object");
  ConformalData d;
  if (!j.contains("geometry") || !j["geometry"].is_string())
    fail(Errc::SchemaError, path + ": missing 'geometry'");
  d.geometry = geometry_from_name(j["geometry"].get<std::string>());

  d.f = read_vertex_array(j, "f", S.vertex_count());
  if (d.f.empty()) fail(Errc::SchemaError, path + ": missing 'f'");
  d.alpha = read_vertex_array(j, "alpha", S.vertex_count());

  if (!j.contains("family")) fail(Errc::SchemaError, path + ": missing 'family'");
  d.family.assign(S.edge_count(), FamilyTag::EuclideanA);
  if (j["family"].is_string()) {
    const FamilyTag t = family_from_name(j["family"].get<std::string>());
    d.family.assign(S.edge_count(), t);
  } else if (j["family"].is_object()) {
    std::vector<char> seen(S.edge_count(), 0);
    for (const auto& [key, val] : j["family"].items()) {
      auto [a, b] = parse_edge_key(key, '-');
      const int e = S.edge_id(a, b);
      if (e < 0) fail(Errc::SchemaError, path + ": '" + key + "' is not an edge");
      if (!val.is_string()) fail(Errc::SchemaError, path + ": family values must be tags");
      d.family[e] = family_from_name(val.get<std::string>());
      seen[e] = 1;
    }
    for (int e = 0; e < S.edge_count(); ++e)
      if (!seen[e]) fail(Errc::SchemaError, path + ": family missing for edge " + eta_key(S, e));
  } else {
    fail(Errc::SchemaError, path + ": 'family' must be a tag or an edge map");
  }
  for (FamilyTag t : d.family)
    if (family_geometry(t) != d.geometry)
      fail(Errc::SchemaError, std::string(path) + ": family " + family_name(t) +
                                  " does not match geometry " + geometry_name(d.geometry));

  if (!j.contains("eta") || !j["eta"].is_object())
    fail(Errc::SchemaError, path + ": missing 'eta' map");
  d.eta.assign(S.edge_count(), 0.0);
  std::vector<char> have_eta(S.edge_count(), 0);
  for (const auto& [key, val] : j["eta"].items()) {
    auto [a, b] = parse_edge_key(key, '-');
    if (a > b) fail(Errc::SchemaError, path + ": eta key '" + key + "' must be min-max ordered");
    const int e = S.edge_id(a, b);
    if (e < 0) fail(Errc::SchemaError, path + ": '" + key + "' is not an edge");
    if (!val.is_number()) fail(Errc::SchemaError, path + ": eta values must be numbers");
    d.eta[e] = val.get<double>();
    have_eta[e] = 1;
  }
  for (int e = 0; e < S.edge_count(); ++e)
    if (!have_eta[e]) fail(Errc::SchemaError, path + ": eta missing for edge " + eta_key(S, e));

  if (j.contains("C")) {
    if (!j["C"].is_object()) fail(Errc::SchemaError, path + ": 'C' must be an edge map");
    d.C.assign(S.edge_count(), 0.0);
    std::vector<char> have_C(S.edge_count(), 0);
    for (const auto& [key, val] : j["C"].items()) {
      auto [a, b] = parse_edge_key(key, ',');
      const int e = S.edge_id(a, b);
      if (e < 0) fail(Errc::SchemaError, path + ": '" + key + "' is not an edge");
      if (!val.is_number()) fail(Errc::SchemaError, path + ": C values must be numbers");
      const double canonical = a < b ? val.get<double>() : -val.get<double>();
      if (have_C[e] && std::abs(canonical - d.C[e]) > 1e-12)
        fail(Errc::SchemaError, path + ": C given for both orientations of " + eta_key(S, e) +
                                    " and not antisymmetric");
      d.C[e] = canonical;
      have_C[e] = 1;
    }
  }
  return d;
}

nlohmann::ordered_json structure_to_json(const TriangulatedSurface& S,
                                         const ConformalData& data) {
  ordered_json j;
  j["geometry"] = geometry_name(data.geometry);
  bool uniform = true;
  for (FamilyTag t : data.family) uniform = uniform && t == data.family[0];
  if (uniform) {
    j["family"] = family_name(data.family[0]);
  } else {
    ordered_json fam = ordered_json::object();
    for (int e = 0; e < S.edge_count(); ++e) fam[eta_key(S, e)] = family_name(data.family[e]);
    j["family"] = fam;
  }
  j["f"] = data.f;
  if (!data.alpha.empty()) j["alpha"] = data.alpha;
  ordered_json eta = ordered_json::object();
  for (int e = 0; e < S.edge_count(); ++e) eta[eta_key(S, e)] = data.eta[e];
  j["eta"] = eta;
  if (!data.C.empty()) {
    ordered_json C = ordered_json::object();
    for (int e = 0; e < S.edge_count(); ++e) C[C_key(S, e)] = data.C[e];
    j["C"] = C;
  }
  return j;
}

nlohmann::ordered_json weighted_to_json(const TriangulatedSurface& S,
                                        const WeightedConformalData& data) {
  ordered_json j;
  j["geometry"] = geometry_name(data.geometry);
  j["u"] = data.u;
  j["epsilon"] = data.epsilon;
  ordered_json zeta = ordered_json::object();
  for (int e = 0; e < S.edge_count(); ++e) zeta[eta_key(S, e)] = data.zeta[e];
  j["zeta"] = zeta;
  return j;
}

nlohmann::ordered_json metric_to_json(const TriangulatedSurface& S, const PartialMetric& m) {
  ordered_json j;
  ordered_json l = ordered_json::object();
  for (int e = 0; e < S.edge_count(); ++e) l[eta_key(S, e)] = m.l[e];
  j["l"] = l;
  ordered_json d = ordered_json::object();
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [a, b] = S.edges()[e];
    d[std::to_string(a) + "," + std::to_string(b)] = m.d_fwd[e];
    d[std::to_string(b) + "," + std::to_string(a)] = m.d_bwd[e];
  }
  j["d"] = d;
  return j;
}

void save_structure(const std::string& path, const TriangulatedSurface& S,
                    const ConformalData& data) {
  write_file(path, dump_deterministic(structure_to_json(S, data)));
}

std::vector<double> load_target(const std::string& path, const TriangulatedSurface& S) {
  const json j = parse_file(path);
  if (!j.is_object() || !j.contains("K"))
    fail(Errc::SchemaError, path + ": target needs a 'K' array");
  auto K = read_vertex_array(j, "K", S.vertex_count());
  if (K.empty()) fail(Errc::SchemaError, path + ": target needs a 'K' array");
  return K;
}

std::string dump_deterministic(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  dump_rec(out, j, indent, 0);
  out += "\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::SchemaError, "cannot write " + path);
  out << content;
}

}  // namespace dcs
