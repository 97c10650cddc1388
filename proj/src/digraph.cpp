#include "permwalk/digraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "permwalk/rng.hpp"

namespace permwalk {

DirectedMultigraph::DirectedMultigraph(int num_vertices)
    : num_vertices_(num_vertices), out_(static_cast<size_t>(num_vertices)) {
  if (num_vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
}

void DirectedMultigraph::add_edge(int tail, int head) {
  if (tail < 0 || tail >= num_vertices_ || head < 0 || head >= num_vertices_) {
    throw std::invalid_argument("edge endpoint out of range: " + std::to_string(tail) +
                                "->" + std::to_string(head));
  }
  auto& list = out_[tail];
  list.insert(std::upper_bound(list.begin(), list.end(), head), head);
  ++num_edges_;
}

int DirectedMultigraph::multiplicity(int tail, int head) const {
  const auto& list = out_[tail];
  auto [lo, hi] = std::equal_range(list.begin(), list.end(), head);
  return static_cast<int>(hi - lo);
}

std::vector<int> DirectedMultigraph::in_degrees() const {
  std::vector<int> in(static_cast<size_t>(num_vertices_), 0);
  for (const auto& list : out_)
    for (int head : list) ++in[head];
  return in;
}

DegreeProfile degree_profile(const DirectedMultigraph& g) {
  DegreeProfile profile;
  profile.in_degree = g.in_degrees();
  profile.out_degree.reserve(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) profile.out_degree.push_back(g.out_degree(v));
  return profile;
}

bool is_balanced(const DirectedMultigraph& g) {
  const auto in = g.in_degrees();
  for (int v = 0; v < g.num_vertices(); ++v)
    if (in[v] != g.out_degree(v)) return false;
  return true;
}

std::optional<int> uniform_degree(const DirectedMultigraph& g) {
  const auto in = g.in_degrees();
  const int d = g.out_degree(0);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (in[v] != d || g.out_degree(v) != d) return std::nullopt;
  return d;
}

bool degree_identity_holds(const DirectedMultigraph& g, int i) {
  const auto in = g.in_degrees();
  int rhs = 0;
  for (int x = 0; x < g.num_vertices(); ++x)
    if (x != i) rhs += g.out_degree(x) - in[x];
  return in[i] - g.out_degree(i) == rhs;
}

DirectedMultigraph build_ldn(int d, int n) {
  if (d < 2) throw std::invalid_argument("build_ldn: d must be >= 2");
  if (n < 1) throw std::invalid_argument("build_ldn: n must be >= 1");
  DirectedMultigraph g(n + 1);
  for (int v = 0; v <= n; ++v) {
    const int loops = (v == 0 || v == n) ? d - 1 : d - 2;
    for (int r = 0; r < loops; ++r) g.add_edge(v, v);
    if (v != 0) g.add_edge(v, v - 1);
    if (v != n) g.add_edge(v, v + 1);
  }
  return g;
}

namespace {

// Iterative Tarjan; recursion depth would be a hazard on line graphs of a
// few hundred vertices.
int count_sccs(const DirectedMultigraph& g) {
  const int n = g.num_vertices();
  std::vector<int> index(n, -1), lowlink(n, 0), edge_pos(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack, call_stack;
  int next_index = 0, sccs = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call_stack.push_back(root);
    while (!call_stack.empty()) {
      const int v = call_stack.back();
      if (index[v] == -1) {
        index[v] = lowlink[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool advanced = false;
      const auto& heads = g.out_edges(v);
      while (edge_pos[v] < static_cast<int>(heads.size())) {
        const int w = heads[edge_pos[v]];
        if (index[w] == -1) {
          ++edge_pos[v];
          call_stack.push_back(w);
          advanced = true;
          break;
        }
        if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
        ++edge_pos[v];
      }
      if (advanced) continue;
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const int parent = call_stack.back();
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
      if (lowlink[v] == index[v]) {
        ++sccs;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
        } while (w != v);
      }
    }
  }
  return sccs;
}

}  // namespace

bool is_strongly_connected(const DirectedMultigraph& g) {
  return count_sccs(g) == 1;
}

bool is_connected_undirected(const DirectedMultigraph& g) {
  const int n = g.num_vertices();
  if (g.num_edges() == 0) return n == 1;
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v)
    for (int w : g.out_edges(v)) {
      adj[v].push_back(w);
      adj[w].push_back(v);
    }
  std::vector<bool> seen(n, false);
  std::vector<int> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
  }
  return reached == n;
}

std::optional<std::vector<int>> ldn_isomorphism(const DirectedMultigraph& g, int d, int n) {
  if (d < 2 || n < 1) return std::nullopt;
  const int vertices = n + 1;
  if (g.num_vertices() != vertices) return std::nullopt;
  if (g.num_edges() != d * vertices) return std::nullopt;

  const auto in = g.in_degrees();
  std::vector<int> loops(vertices);
  std::vector<int> endpoints;
  for (int v = 0; v < vertices; ++v) {
    if (in[v] != d || g.out_degree(v) != d) return std::nullopt;
    loops[v] = g.multiplicity(v, v);
    if (loops[v] == d - 1)
      endpoints.push_back(v);
    else if (loops[v] != d - 2)
      return std::nullopt;
  }
  if (endpoints.size() != 2) return std::nullopt;

  // Walk the unique non-loop chain from an endpoint; every step must look
  // exactly like the corresponding line position.
  auto walk_from = [&](int start) -> std::optional<std::vector<int>> {
    std::vector<int> position(vertices, -1);
    int prev = -1, cur = start;
    for (int pos = 0; pos <= n; ++pos) {
      if (position[cur] != -1) return std::nullopt;
      position[cur] = pos;
      std::vector<int> non_loop;
      for (int head : g.out_edges(cur))
        if (head != cur) non_loop.push_back(head);
      if (pos == 0) {
        if (loops[cur] != d - 1 || non_loop.size() != 1) return std::nullopt;
        prev = cur;
        cur = non_loop[0];
      } else if (pos == n) {
        if (loops[cur] != d - 1 || non_loop.size() != 1 || non_loop[0] != prev)
          return std::nullopt;
      } else {
        if (loops[cur] != d - 2 || non_loop.size() != 2) return std::nullopt;
        int next = -1;
        if (non_loop[0] == prev)
          next = non_loop[1];
        else if (non_loop[1] == prev)
          next = non_loop[0];
        else
          return std::nullopt;
        if (next == prev || next == cur) return std::nullopt;
        prev = cur;
        cur = next;
      }
    }
    return position;
  };

  for (int start : endpoints)
    if (auto witness = walk_from(start)) return witness;
  return std::nullopt;
}

DirectedMultigraph random_eulerian(int num_vertices, int d, std::uint64_t seed) {
  if (num_vertices < 1) throw std::invalid_argument("random_eulerian: need >= 1 vertex");
  if (d < 1) throw std::invalid_argument("random_eulerian: need d >= 1");
  auto eng = make_engine(seed);
  DirectedMultigraph g(num_vertices);
  for (int round = 0; round < d; ++round) {
    const auto perm = random_permutation(num_vertices, eng);
    for (int v = 0; v < num_vertices; ++v) g.add_edge(v, perm[v]);
  }
  return g;
}

RejectionSample random_eulerian_strongly_connected(int num_vertices, int d,
                                                   std::uint64_t seed) {
  constexpr int kMaxAttempts = 1 << 20;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    DirectedMultigraph g = random_eulerian(num_vertices, d, mix_seed(seed, attempt));
    if (is_strongly_connected(g)) return {std::move(g), attempt};
  }
  throw std::runtime_error("random_eulerian_strongly_connected: rejection limit hit");
}

}  // namespace permwalk
