#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "permwalk/chain.hpp"
#include "permwalk/digraph.hpp"

namespace permwalk {

// Result of a graph rewriting step. vertex_map takes new labels back to
// labels of the input graph; added_edges are recorded in input labels.
struct SurgeryOutcome {
  DirectedMultigraph graph;
  std::vector<std::pair<int, int>> added_edges;
  std::optional<int> removed_vertex;
  std::vector<int> vertex_map;
};

// Balancing construction: requires in(i) >= out(i) and in(x) <= out(x) for
// all x != i on a strongly connected graph. Adds edges from i to each
// deficient vertex until every vertex is balanced; the number added equals
// in(i) - out(i).
SurgeryOutcome add_fictitious_edges(const DirectedMultigraph& g, int i);

struct ReturnBoundCertificate {
  bool holds = false;
  int vertex = 0;
  Rational expected_return;
  Rational bound;  // (sum_x out(x) + out(i) - in(i)) / out(i)
};

// Checks the return-time bound on g itself (same preconditions as
// add_fictitious_edges).
ReturnBoundCertificate verify_return_bound(const DirectedMultigraph& g, int i);

// Removes u and reroutes each other in-neighbor j of u to i with j's former
// multiplicity to u, so out(j) is preserved; i simply loses its edges to u.
// Requires g strongly connected and balanced, i an in-neighbor of u, and
// u != i.
SurgeryOutcome build_gi(const DirectedMultigraph& g, int u, int i);

// Reachability closure of i inside a build_gi output, with the induced
// subgraph. Labels in `vertices` and `vertex_map` refer to the original
// graph passed to build_gi. When i has no out-edges left (all its edges in g
// went to u) the set is empty and callers skip the instance.
struct InducedSubgraph {
  std::vector<int> vertices;  // original labels, ascending
  DirectedMultigraph graph;
  std::vector<int> vertex_map;  // subgraph label -> original label
};

InducedSubgraph build_ai(const SurgeryOutcome& gi, int i);

struct SetACertificate {
  bool holds = false;
  int u = 0;
  int i = 0;
  bool nonempty = false;  // instances with empty A_i are skipped, not failed
  std::vector<int> a_set;
  bool strongly_connected = false;
  bool contains_i = false;
  bool out_degrees_preserved = false;  // out_{A}(x) == out_G(x), x != i
  bool in_degrees_bounded = false;     // in_{A}(x) <= in_G(x), x != i
  bool root_out_degree_drop = false;   // out_{A}(i) == out_G(i) - r_i
  bool root_in_ge_out = false;         // in_{A}(i) >= out_{A}(i)
  bool proper_subset = false;          // |A_i| < |V(g)|
};

// Runs build_gi + build_ai and checks the five structural claims.
SetACertificate verify_seta(const DirectedMultigraph& g, int u, int i);

struct ExcursionCertificate {
  bool holds = false;
  int u = 0;
  Rational bound;  // |V| * d - d
  Rational max_value;
  std::vector<std::pair<int, Rational>> hitting_from;  // per i in I_u
};

// max over i in I_u of E_i[tau_u] <= nd - d on a strongly connected
// d-in/d-out graph with n vertices. A measure mu on I_u satisfies
// E_mu[tau_u] = sum mu(i) E_i[tau_u] <= max_i E_i[tau_u], so checking the
// max covers every mu.
ExcursionCertificate verify_excursion_bound(const DirectedMultigraph& g, int u);

// Vertex-deletion rewiring: removes y, partitions y's former out-neighbors
// J by undirected reachability (avoiding y) to the in-neighbors i_1, i_2,
// ..., wires the nonempty classes in a cycle, then completes the I->J edges
// with a lowest-index greedy rule until every vertex is balanced again. The
// output is connected by construction and therefore strongly connected, on
// one fewer vertex.
SurgeryOutcome build_gpp(const DirectedMultigraph& g, int y);

struct GppCertificate {
  bool holds = false;
  int y = 0;
  bool balanced_at_d = false;
  bool strongly_connected = false;
  bool vertex_count_ok = false;
  // E_x[tau_I] identical in g and the output for every x outside I and y.
  bool hitting_preserved = false;
  // Whether the output is isomorphic to L(d, n-1); reported, only meaningful
  // when the input was an L(d,n).
  bool output_is_ldn = false;
  std::vector<std::pair<int, int>> added_edges;
};

GppCertificate verify_gpp(const DirectedMultigraph& g, int y);

}  // namespace permwalk
