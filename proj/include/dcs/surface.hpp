#pragma once

#include <array>
#include <utility>
#include <vector>

namespace dcs {

/// Breadth-first spanning tree of the 1-skeleton.
struct SpanningTree {
  int root = 0;
  std::vector<int> parent;                // parent[v]; -1 at the root
  std::vector<int> bfs_order;             // vertices in visit order
  std::vector<std::pair<int, int>> edges; // (parent, child) in discovery order
};

/// Combinatorics of a triangulated connected closed surface.
///
/// Faces are stored as given. Each undirected edge is keyed by its
/// (min,max) vertex pair; edge ids enumerate those pairs in lexicographic
/// order, so identical face lists always produce identical derived data.
/// Instances are immutable after build() and safe to share across threads.
class TriangulatedSurface {
 public:
  /// Validates and builds the surface. Throws NonManifold if any edge is
  /// not incident to exactly two faces, DegenerateFace for repeated
  /// vertices or duplicated faces, Disconnected if the 1-skeleton is not
  /// connected.
  static TriangulatedSurface build(int vertex_count, std::vector<std::array<int, 3>> faces);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Edge id of the unordered pair {i,j}, or -1 if not an edge.
  int edge_id(int i, int j) const;
  const std::array<int, 2>& edge_faces(int e) const { return edge_faces_[e]; }
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }     // ascending
  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[v]; }
  std::array<int, 3> face_edges(int f) const;

  int euler_characteristic() const;
  /// Closed connected surface is simply connected iff it is a sphere.
  bool is_sphere() const { return euler_characteristic() == 2; }

  /// BFS tree from `root`; neighbors are visited in ascending vertex index
  /// so the result is reproducible.
  SpanningTree spanning_tree(int root) const;

 private:
  TriangulatedSurface() = default;

  int vertex_count_ = 0;
  std::vector<std::array<int, 3>> faces_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::array<int, 2>> edge_faces_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> edge_of_neighbor_;  // parallel to neighbors_
  std::vector<std::vector<int>> vertex_faces_;
};

}  // namespace dcs
