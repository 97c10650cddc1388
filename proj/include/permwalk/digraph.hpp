#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace permwalk {

// Directed multigraph on dense vertex labels 0..num_vertices-1. Parallel
// edges and self-loops are represented by repetition in the per-vertex
// out-lists, which are kept sorted so that equality and serialization are
// canonical.
class DirectedMultigraph {
 public:
  DirectedMultigraph() = default;
  explicit DirectedMultigraph(int num_vertices);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return num_edges_; }

  // Inserts tail->head keeping the out-list sorted.
  void add_edge(int tail, int head);

  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }

  // Number of parallel tail->head edges.
  int multiplicity(int tail, int head) const;

  // All in-degrees in one pass over the edge lists.
  std::vector<int> in_degrees() const;
  int in_degree(int v) const { return in_degrees()[v]; }

  bool operator==(const DirectedMultigraph&) const = default;

 private:
  int num_vertices_ = 0;
  int num_edges_ = 0;
  std::vector<std::vector<int>> out_;
};

struct DegreeProfile {
  std::vector<int> in_degree;
  std::vector<int> out_degree;

  std::pair<int, int> at(int v) const { return {in_degree[v], out_degree[v]}; }
};

DegreeProfile degree_profile(const DirectedMultigraph& g);

// in == out at every vertex.
bool is_balanced(const DirectedMultigraph& g);

// in == out == d at every vertex; returns d, or nullopt when degrees are not
// uniform.
std::optional<int> uniform_degree(const DirectedMultigraph& g);

// in(i) - out(i) == sum over x != i of (out(x) - in(x)); holds in every
// directed multigraph because total in equals total out.
bool degree_identity_holds(const DirectedMultigraph& g, int i);

// The extremal line graph: vertices 0..n, d-1 self-loops at 0 and n, d-2 at
// interior vertices, and both-direction line edges. Requires d >= 2, n >= 1.
DirectedMultigraph build_ldn(int d, int n);

bool is_strongly_connected(const DirectedMultigraph& g);
bool is_connected_undirected(const DirectedMultigraph& g);

// If g is isomorphic to L(d,n), returns the witness relabeling: the vector
// maps each vertex of g to its position 0..n on the line. L(d,n) is rigid
// enough that locating the two endpoint candidates and walking the unique
// non-loop chain decides the question without general isomorphism search.
std::optional<std::vector<int>> ldn_isomorphism(const DirectedMultigraph& g, int d, int n);

inline bool is_isomorphic_to_ldn(const DirectedMultigraph& g, int d, int n) {
  return ldn_isomorphism(g, d, n).has_value();
}

// Superposition of d independent uniform permutations of the vertex set: one
// out-edge per vertex per permutation, so in == out == d by construction.
// Deterministic for a fixed seed.
DirectedMultigraph random_eulerian(int num_vertices, int d, std::uint64_t seed);

struct RejectionSample {
  DirectedMultigraph graph;
  int rejections = 0;
};

// Resamples until the graph is strongly connected, reporting how many draws
// were rejected.
RejectionSample random_eulerian_strongly_connected(int num_vertices, int d,
                                                   std::uint64_t seed);

}  // namespace permwalk
