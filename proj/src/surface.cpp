#include "dcs/surface.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "dcs/error.hpp"

namespace dcs {

TriangulatedSurface TriangulatedSurface::build(int vertex_count,
                                               std::vector<std::array<int, 3>> faces) {
  if (vertex_count <= 0) fail(Errc::DegenerateFace, "vertex_count must be positive");
  if (faces.empty()) fail(Errc::NonManifold, "empty face list");

  std::set<std::array<int, 3>> seen;
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& f = faces[fi];
    for (int v : f) {
      if (v < 0 || v >= vertex_count)
        fail(Errc::DegenerateFace,
             "face " + std::to_string(fi) + " references vertex " + std::to_string(v));
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      fail(Errc::DegenerateFace, "face " + std::to_string(fi) + " has a repeated vertex");
    std::array<int, 3> key = f;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second)
      fail(Errc::DegenerateFace, "face " + std::to_string(fi) + " duplicates another face");
  }

  // Edge -> incident faces, keyed (min,max); lexicographic map order fixes edge ids.
  std::map<std::pair<int, int>, std::vector<int>> incident;
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& f = faces[fi];
    for (int c = 0; c < 3; ++c) {
      int a = f[c], b = f[(c + 1) % 3];
      incident[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(fi));
    }
  }
  for (const auto& [e, fs] : incident) {
    if (fs.size() != 2)
      fail(Errc::NonManifold, "edge {" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                  "} lies in " + std::to_string(fs.size()) + " faces");
  }

  TriangulatedSurface s;
  s.vertex_count_ = vertex_count;
  s.faces_ = std::move(faces);
  s.edges_.reserve(incident.size());
  s.edge_faces_.reserve(incident.size());
  for (const auto& [e, fs] : incident) {
    s.edges_.push_back(e);
    s.edge_faces_.push_back({fs[0], fs[1]});
  }

  s.neighbors_.resize(vertex_count);
  s.edge_of_neighbor_.resize(vertex_count);
  for (int e = 0; e < static_cast<int>(s.edges_.size()); ++e) {
    auto [a, b] = s.edges_[e];
    s.neighbors_[a].push_back(b);
    s.neighbors_[b].push_back(a);
  }
  for (int v = 0; v < vertex_count; ++v) {
    std::sort(s.neighbors_[v].begin(), s.neighbors_[v].end());
    s.edge_of_neighbor_[v].resize(s.neighbors_[v].size());
  }
  for (int e = 0; e < static_cast<int>(s.edges_.size()); ++e) {
    auto [a, b] = s.edges_[e];
    for (auto [u, w] : {std::pair{a, b}, std::pair{b, a}}) {
      auto& nb = s.neighbors_[u];
      auto it = std::lower_bound(nb.begin(), nb.end(), w);
      s.edge_of_neighbor_[u][it - nb.begin()] = e;
    }
  }

  s.vertex_faces_.resize(vertex_count);
  for (int fi = 0; fi < static_cast<int>(s.faces_.size()); ++fi)
    for (int v : s.faces_[fi]) s.vertex_faces_[v].push_back(fi);

  // Connectivity of the 1-skeleton (isolated vertices count as disconnected).
  std::vector<char> visited(vertex_count, 0);
  std::queue<int> q;
  q.push(0);
  visited[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : s.neighbors_[v]) {
      if (!visited[w]) {
        visited[w] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  if (reached != vertex_count)
    fail(Errc::Disconnected, "1-skeleton has unreachable vertices (" +
                                 std::to_string(vertex_count - reached) + " of " +
                                 std::to_string(vertex_count) + ")");
  return s;
}

int TriangulatedSurface::edge_id(int i, int j) const {
  if (i < 0 || j < 0 || i >= vertex_count_ || j >= vertex_count_ || i == j) return -1;
  const auto& nb = neighbors_[i];
  auto it = std::lower_bound(nb.begin(), nb.end(), j);
  if (it == nb.end() || *it != j) return -1;
  return edge_of_neighbor_[i][it - nb.begin()];
}

std::array<int, 3> TriangulatedSurface::face_edges(int f) const {
  const auto& v = faces_[f];
  return {edge_id(v[0], v[1]), edge_id(v[1], v[2]), edge_id(v[2], v[0])};
}

int TriangulatedSurface::euler_characteristic() const {
  return vertex_count_ - edge_count() + face_count();
}

SpanningTree TriangulatedSurface::spanning_tree(int root) const {
  SpanningTree t;
  t.root = root;
  t.parent.assign(vertex_count_, -1);
  std::vector<char> visited(vertex_count_, 0);
  std::queue<int> q;
  q.push(root);
  visited[root] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    t.bfs_order.push_back(v);
    for (int w : neighbors_[v]) {  // ascending
      if (!visited[w]) {
        visited[w] = 1;
        t.parent[w] = v;
        t.edges.emplace_back(v, w);
        q.push(w);
      }
    }
  }
  return t;
}

}  // namespace dcs
