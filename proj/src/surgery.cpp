#include "permwalk/surgery.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace permwalk {

namespace {

void check_lemma22_preconditions(const DirectedMultigraph& g, int i, const char* op) {
  if (i < 0 || i >= g.num_vertices())
    throw std::invalid_argument(std::string(op) + ": vertex out of range");
  if (!is_strongly_connected(g))
    throw std::invalid_argument(std::string(op) + ": graph is not strongly connected");
  const auto in = g.in_degrees();
  if (in[i] < g.out_degree(i))
    throw std::invalid_argument(std::string(op) + ": in_degree(" + std::to_string(i) +
                                ") < out_degree, distinguished vertex must have surplus");
  for (int x = 0; x < g.num_vertices(); ++x) {
    if (x != i && in[x] > g.out_degree(x))
      throw std::invalid_argument(std::string(op) + ": vertex " + std::to_string(x) +
                                  " has in_degree > out_degree");
  }
  if (!degree_identity_holds(g, i))
    throw std::logic_error(std::string(op) + ": degree identity violated");
}

std::vector<int> identity_map(int n) {
  std::vector<int> map(n);
  std::iota(map.begin(), map.end(), 0);
  return map;
}

// Union-find over the undirected collapse of g with vertex `skip` excluded.
std::vector<int> components_avoiding(const DirectedMultigraph& g, int skip) {
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == skip) continue;
    for (int w : g.out_edges(v)) {
      if (w == skip) continue;
      parent[find(v)] = find(w);
    }
  }
  std::vector<int> comp(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) comp[v] = find(v);
  return comp;
}

}  // namespace

SurgeryOutcome add_fictitious_edges(const DirectedMultigraph& g, int i) {
  check_lemma22_preconditions(g, i, "add_fictitious_edges");
  const auto in = g.in_degrees();

  SurgeryOutcome outcome;
  outcome.graph = g;
  outcome.vertex_map = identity_map(g.num_vertices());
  for (int j = 0; j < g.num_vertices(); ++j) {
    if (j == i) continue;
    for (int k = in[j]; k < g.out_degree(j); ++k) {
      outcome.graph.add_edge(i, j);
      outcome.added_edges.emplace_back(i, j);
    }
  }

  if (static_cast<int>(outcome.added_edges.size()) != in[i] - g.out_degree(i))
    throw std::logic_error("add_fictitious_edges: added count != in(i) - out(i)");
  if (!is_balanced(outcome.graph))
    throw std::logic_error("add_fictitious_edges: output not balanced");
  if (!degree_identity_holds(outcome.graph, i))
    throw std::logic_error("add_fictitious_edges: degree identity violated on output");
  return outcome;
}

ReturnBoundCertificate verify_return_bound(const DirectedMultigraph& g, int i) {
  check_lemma22_preconditions(g, i, "verify_return_bound");
  const auto in = g.in_degrees();
  long total_out = 0;
  for (int x = 0; x < g.num_vertices(); ++x) total_out += g.out_degree(x);

  ReturnBoundCertificate cert;
  cert.vertex = i;
  cert.expected_return = expected_return(g, i, SolveMode::Exact).value;
  cert.bound = make_rational(total_out + g.out_degree(i) - in[i], g.out_degree(i));
  cert.holds = cert.expected_return <= cert.bound;
  return cert;
}

SurgeryOutcome build_gi(const DirectedMultigraph& g, int u, int i) {
  if (u < 0 || u >= g.num_vertices() || i < 0 || i >= g.num_vertices())
    throw std::invalid_argument("build_gi: vertex out of range");
  if (u == i)
    throw std::invalid_argument("build_gi: u == i; the rerouting target must survive the removal");
  if (!is_strongly_connected(g))
    throw std::invalid_argument("build_gi: graph is not strongly connected");
  if (!is_balanced(g)) throw std::invalid_argument("build_gi: graph is not balanced");
  if (g.multiplicity(i, u) < 1)
    throw std::invalid_argument("build_gi: i has no edge to u, not in I_u");
  if (g.num_vertices() < 2) throw std::invalid_argument("build_gi: nothing left after removal");

  const auto relabel = [u](int v) { return v < u ? v : v - 1; };
  SurgeryOutcome outcome;
  outcome.graph = DirectedMultigraph(g.num_vertices() - 1);
  outcome.removed_vertex = u;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v != u) outcome.vertex_map.push_back(v);

  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == u) continue;
    for (int head : g.out_edges(v)) {
      if (head == u) {
        // Reroute every in-neighbor except i itself; i just loses them.
        if (v != i) {
          outcome.graph.add_edge(relabel(v), relabel(i));
          outcome.added_edges.emplace_back(v, i);
        }
      } else {
        outcome.graph.add_edge(relabel(v), relabel(head));
      }
    }
  }
  if (!degree_identity_holds(g, i) || !degree_identity_holds(outcome.graph, relabel(i)))
    throw std::logic_error("build_gi: degree identity violated");
  return outcome;
}

InducedSubgraph build_ai(const SurgeryOutcome& gi, int i) {
  if (!gi.removed_vertex)
    throw std::invalid_argument("build_ai: outcome has no removed vertex, not a build_gi result");
  // Translate i into the post-removal labeling.
  int root = -1;
  for (size_t v = 0; v < gi.vertex_map.size(); ++v)
    if (gi.vertex_map[v] == i) root = static_cast<int>(v);
  if (root < 0) throw std::invalid_argument("build_ai: i was removed or never present");

  InducedSubgraph result;
  if (gi.graph.out_degree(root) == 0) return result;  // the paper's empty A_i case

  const DirectedMultigraph& h = gi.graph;
  std::vector<bool> reach(h.num_vertices(), false);
  std::vector<int> stack{root};
  reach[root] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : h.out_edges(v))
      if (!reach[w]) {
        reach[w] = true;
        stack.push_back(w);
      }
  }

  std::vector<int> members;  // labels in gi.graph, ascending
  std::vector<int> index_of(h.num_vertices(), -1);
  for (int v = 0; v < h.num_vertices(); ++v)
    if (reach[v]) {
      index_of[v] = static_cast<int>(members.size());
      members.push_back(v);
    }

  result.graph = DirectedMultigraph(static_cast<int>(members.size()));
  for (int v : members) {
    result.vertices.push_back(gi.vertex_map[v]);
    result.vertex_map.push_back(gi.vertex_map[v]);
    for (int w : h.out_edges(v))
      if (reach[w]) result.graph.add_edge(index_of[v], index_of[w]);
  }
  return result;
}

SetACertificate verify_seta(const DirectedMultigraph& g, int u, int i) {
  const SurgeryOutcome gi = build_gi(g, u, i);
  const InducedSubgraph ai = build_ai(gi, i);

  SetACertificate cert;
  cert.u = u;
  cert.i = i;
  cert.nonempty = !ai.vertices.empty();
  cert.a_set = ai.vertices;
  if (!cert.nonempty) {
    cert.holds = true;  // nothing to check; callers treat this as a skip
    return cert;
  }

  const int r_i = g.multiplicity(i, u);
  const auto in_g = g.in_degrees();
  const auto in_a = ai.graph.in_degrees();

  cert.strongly_connected = is_strongly_connected(ai.graph);
  cert.contains_i = false;
  cert.out_degrees_preserved = true;
  cert.in_degrees_bounded = true;
  for (size_t k = 0; k < ai.vertices.size(); ++k) {
    const int original = ai.vertices[k];
    const int v = static_cast<int>(k);
    if (original == i) {
      cert.contains_i = true;
      cert.root_out_degree_drop = ai.graph.out_degree(v) == g.out_degree(i) - r_i;
      cert.root_in_ge_out = in_a[v] >= ai.graph.out_degree(v);
    } else {
      if (ai.graph.out_degree(v) != g.out_degree(original)) cert.out_degrees_preserved = false;
      if (in_a[v] > in_g[original]) cert.in_degrees_bounded = false;
    }
  }
  cert.proper_subset = static_cast<int>(ai.vertices.size()) < g.num_vertices();
  cert.holds = cert.strongly_connected && cert.contains_i && cert.out_degrees_preserved &&
               cert.in_degrees_bounded && cert.root_out_degree_drop && cert.root_in_ge_out &&
               cert.proper_subset;
  return cert;
}

ExcursionCertificate verify_excursion_bound(const DirectedMultigraph& g, int u) {
  if (u < 0 || u >= g.num_vertices())
    throw std::invalid_argument("verify_excursion_bound: vertex out of range");
  if (!is_strongly_connected(g))
    throw std::invalid_argument("verify_excursion_bound: graph is not strongly connected");
  const auto d = uniform_degree(g);
  if (!d)
    throw std::invalid_argument("verify_excursion_bound: graph is not d-in/d-out regular");

  ExcursionCertificate cert;
  cert.u = u;
  cert.bound = Rational(static_cast<long>(g.num_vertices()) * *d - *d);

  const std::vector<int> target{u};
  const RationalVector h = hitting_times_exact(g, target);
  cert.max_value = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.multiplicity(v, u) < 1) continue;
    cert.hitting_from.emplace_back(v, h(v));
    if (h(v) > cert.max_value) cert.max_value = h(v);
  }
  cert.holds = cert.max_value <= cert.bound;
  return cert;
}

SurgeryOutcome build_gpp(const DirectedMultigraph& g, int y) {
  if (y < 0 || y >= g.num_vertices())
    throw std::invalid_argument("build_gpp: vertex out of range");
  if (g.num_vertices() < 2) throw std::invalid_argument("build_gpp: need >= 2 vertices");
  if (!is_strongly_connected(g))
    throw std::invalid_argument("build_gpp: graph is not strongly connected");
  const auto d_opt = uniform_degree(g);
  if (!d_opt) throw std::invalid_argument("build_gpp: graph is not d-in/d-out regular");
  const int d = *d_opt;

  // I and J frontiers, excluding y itself (self-loops vanish on both sides).
  std::vector<int> in_side, out_side;
  std::vector<int> out_deficit(g.num_vertices(), 0), in_deficit(g.num_vertices(), 0);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == y) continue;
    if (const int m = g.multiplicity(v, y); m > 0) {
      in_side.push_back(v);
      out_deficit[v] = m;
    }
    if (const int m = g.multiplicity(y, v); m > 0) {
      out_side.push_back(v);
      in_deficit[v] = m;
    }
  }
  if (in_side.empty() || out_side.empty())
    throw std::logic_error("build_gpp: isolated removal on a strongly connected graph");

  // J is split by undirected reachability (avoiding y) toward i_1, i_2, ...;
  // strong connectivity guarantees every j lands somewhere.
  const auto comp = components_avoiding(g, y);
  std::vector<std::vector<int>> classes(in_side.size());
  std::vector<bool> assigned(g.num_vertices(), false);
  for (size_t l = 0; l < in_side.size(); ++l) {
    for (int j : out_side)
      if (!assigned[j] && comp[j] == comp[in_side[l]]) {
        assigned[j] = true;
        classes[l].push_back(j);
      }
  }
  for (int j : out_side)
    if (!assigned[j]) throw std::logic_error("build_gpp: out-neighbor unreachable from I");

  std::vector<std::pair<int, int>> new_edges;
  std::vector<size_t> nonempty;
  for (size_t l = 0; l < classes.size(); ++l)
    if (!classes[l].empty()) nonempty.push_back(l);
  // Cycle through the nonempty classes: i_{s_t} feeds the lowest-index
  // member of the next class, wrapping around.
  for (size_t t = 0; t < nonempty.size(); ++t) {
    const int tail = in_side[nonempty[t]];
    const int head = classes[nonempty[(t + 1) % nonempty.size()]].front();
    new_edges.emplace_back(tail, head);
    --out_deficit[tail];
    --in_deficit[head];
  }

  // Remaining capacity is matched lowest-index-first; any balanced completion
  // works, this one is reproducible.
  int ti = 0, hj = 0;
  while (true) {
    while (ti < static_cast<int>(in_side.size()) && out_deficit[in_side[ti]] == 0) ++ti;
    if (ti == static_cast<int>(in_side.size())) break;
    while (hj < static_cast<int>(out_side.size()) && in_deficit[out_side[hj]] == 0) ++hj;
    if (hj == static_cast<int>(out_side.size()))
      throw std::logic_error("build_gpp: deficit mismatch");
    new_edges.emplace_back(in_side[ti], out_side[hj]);
    --out_deficit[in_side[ti]];
    --in_deficit[out_side[hj]];
  }
  for (int j : out_side)
    if (in_deficit[j] != 0) throw std::logic_error("build_gpp: deficit mismatch");

  const auto relabel = [y](int v) { return v < y ? v : v - 1; };
  SurgeryOutcome outcome;
  outcome.graph = DirectedMultigraph(g.num_vertices() - 1);
  outcome.removed_vertex = y;
  outcome.added_edges = new_edges;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v != y) outcome.vertex_map.push_back(v);

  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == y) continue;
    for (int head : g.out_edges(v))
      if (head != y) outcome.graph.add_edge(relabel(v), relabel(head));
  }
  for (const auto& [tail, head] : new_edges)
    outcome.graph.add_edge(relabel(tail), relabel(head));

  if (uniform_degree(outcome.graph) != d)
    throw std::logic_error("build_gpp: output not balanced at d");
  if (!degree_identity_holds(g, y) || !degree_identity_holds(outcome.graph, 0))
    throw std::logic_error("build_gpp: degree identity violated");
  if (!is_connected_undirected(outcome.graph) || !is_strongly_connected(outcome.graph))
    throw std::logic_error("build_gpp: output not strongly connected");
  return outcome;
}

GppCertificate verify_gpp(const DirectedMultigraph& g, int y) {
  const SurgeryOutcome out = build_gpp(g, y);
  const auto d = uniform_degree(g);

  GppCertificate cert;
  cert.y = y;
  cert.added_edges = out.added_edges;
  cert.balanced_at_d = uniform_degree(out.graph) == d;
  cert.strongly_connected = is_strongly_connected(out.graph);
  cert.vertex_count_ok = out.graph.num_vertices() == g.num_vertices() - 1;

  // E_x[tau_I] must be untouched for every x outside I and y: the rewiring
  // only changes out-edges of I, and no walk reaches y before I.
  std::vector<int> targets_g, targets_out;
  std::vector<bool> in_i(g.num_vertices(), false);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v != y && g.multiplicity(v, y) > 0) {
      in_i[v] = true;
      targets_g.push_back(v);
      targets_out.push_back(v < y ? v : v - 1);
    }
  const RationalVector h_g = hitting_times_exact(g, targets_g);
  const RationalVector h_out = hitting_times_exact(out.graph, targets_out);
  cert.hitting_preserved = true;
  for (int x = 0; x < g.num_vertices(); ++x) {
    if (x == y || in_i[x]) continue;
    if (h_g(x) != h_out(x < y ? x : x - 1)) cert.hitting_preserved = false;
  }

  cert.output_is_ldn =
      d && is_isomorphic_to_ldn(out.graph, *d, out.graph.num_vertices() - 1);
  cert.holds = cert.balanced_at_d && cert.strongly_connected && cert.vertex_count_ok &&
               cert.hitting_preserved;
  return cert;
}

}  // namespace permwalk
