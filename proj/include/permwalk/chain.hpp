#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "permwalk/digraph.hpp"
#include "permwalk/linsolve.hpp"

namespace permwalk {

enum class SolveMode { Exact, Float };
enum class Method { Exact, Float, MonteCarlo };

struct HittingResult {
  int source = 0;
  std::vector<int> targets;
  Method method = Method::Exact;
  Rational value;             // valid when method == Exact
  double value_double = 0.0;  // always populated
  long long trials = 0;       // Monte Carlo only
  double std_error = 0.0;     // Monte Carlo only
};

// Row-stochastic transition structure of the simple random walk on g:
// probability of x->y is multiplicity(x,y) / out_degree(x).
class MarkovChain {
 public:
  using Row = std::vector<std::pair<int, Rational>>;

  int num_states() const { return static_cast<int>(rows_.size()); }
  const Row& row(int state) const { return rows_[state]; }
  const DirectedMultigraph& graph() const { return graph_; }

  RationalMatrix transition_matrix() const;
  Eigen::MatrixXd transition_matrix_double() const;

  friend MarkovChain from_graph(const DirectedMultigraph& g);

 private:
  DirectedMultigraph graph_;
  std::vector<Row> rows_;
};

// Rejects any vertex of out-degree zero (the walk would be undefined there).
// Each row is verified to sum to exactly 1.
MarkovChain from_graph(const DirectedMultigraph& g);

// Stationary distribution of the walk, exact. Balanced graphs take the
// closed form out_degree(x) / total_out; general strongly connected graphs
// solve pi P = pi, sum pi = 1. Either way the result is verified to satisfy
// pi P = pi exactly. Rejects graphs that are not strongly connected.
RationalVector stationary(const DirectedMultigraph& g);

// E_x[tau_T] for every state x at once (0 on T); the absorbing-system solve
// behind expected_hitting. Cast to integers row-by-row so the exact
// elimination starts from integral coefficients.
RationalVector hitting_times_exact(const DirectedMultigraph& g,
                                   std::span<const int> targets);
Eigen::VectorXd hitting_times_float(const DirectedMultigraph& g,
                                    std::span<const int> targets);

HittingResult expected_hitting(const DirectedMultigraph& g, int source,
                               std::span<const int> targets,
                               SolveMode mode = SolveMode::Exact);

// First return time E_i[tau_i^+] = 1 + sum_y P(i,y) E_y[tau_i]. Equals
// 1/pi(i) for strongly connected g (Kac), which the tests cross-check.
HittingResult expected_return(const DirectedMultigraph& g, int i,
                              SolveMode mode = SolveMode::Exact);

// mu(i) = P_source(walk first enters T at i), one absorbing solve per i in T.
// Pairs are returned in ascending target order and sum to exactly 1.
std::vector<std::pair<int, Rational>> hit_distribution_exact(
    const DirectedMultigraph& g, int source, std::span<const int> targets);

// Mean walk length until first entry into targets over independent trials,
// with sample standard error. Deterministic per seed. step_cap == 0 selects
// the default 10^6 * num_vertices; exceeding the cap aborts the batch with a
// diagnostic (std::runtime_error).
HittingResult simulate_hitting(const DirectedMultigraph& g, int source,
                               std::span<const int> targets, long long trials,
                               std::uint64_t seed, std::uint64_t step_cap = 0);

}  // namespace permwalk
