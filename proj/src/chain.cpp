#include "permwalk/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "permwalk/rng.hpp"

namespace permwalk {

namespace {

void require_strongly_connected(const DirectedMultigraph& g, const char* op) {
  if (!is_strongly_connected(g))
    throw std::invalid_argument(std::string(op) + ": graph is not strongly connected");
}

std::vector<int> normalize_targets(const DirectedMultigraph& g,
                                   std::span<const int> targets) {
  if (targets.empty()) throw std::invalid_argument("target set is empty");
  std::vector<int> t(targets.begin(), targets.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (t.front() < 0 || t.back() >= g.num_vertices())
    throw std::invalid_argument("target state out of range");
  return t;
}

struct AbsorbingIndex {
  std::vector<int> free_states;     // states outside the target set
  std::vector<int> index_of_state;  // -1 for targets
};

AbsorbingIndex index_free_states(const DirectedMultigraph& g, const std::vector<int>& targets) {
  AbsorbingIndex idx;
  idx.index_of_state.assign(g.num_vertices(), -1);
  std::vector<bool> is_target(g.num_vertices(), false);
  for (int t : targets) is_target[t] = true;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!is_target[v]) {
      idx.index_of_state[v] = static_cast<int>(idx.free_states.size());
      idx.free_states.push_back(v);
    }
  }
  return idx;
}

// Rows scaled by out-degree so the system starts integral:
//   out(x) h(x) - sum_{y not in T} m(x,y) h(y) = rhs(x)
template <typename Scalar, typename RhsFn>
void build_absorbing_system(const DirectedMultigraph& g, const AbsorbingIndex& idx,
                            DenseMatrix<Scalar>& a, DenseVector<Scalar>& b, RhsFn rhs) {
  const int m = static_cast<int>(idx.free_states.size());
  a = DenseMatrix<Scalar>::Zero(m, m);
  b.resize(m);
  for (int r = 0; r < m; ++r) {
    const int x = idx.free_states[r];
    a(r, r) = Scalar(g.out_degree(x));
    for (int y : g.out_edges(x)) {
      const int c = idx.index_of_state[y];
      if (c >= 0) a(r, c) -= Scalar(1);
    }
    b(r) = rhs(x);
  }
}

}  // namespace

RationalMatrix MarkovChain::transition_matrix() const {
  const int n = num_states();
  RationalMatrix p = RationalMatrix::Zero(n, n);
  for (int s = 0; s < n; ++s)
    for (const auto& [t, prob] : rows_[s]) p(s, t) = prob;
  return p;
}

Eigen::MatrixXd MarkovChain::transition_matrix_double() const {
  const int n = num_states();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s)
    for (const auto& [t, prob] : rows_[s]) p(s, t) = to_double(prob);
  return p;
}

MarkovChain from_graph(const DirectedMultigraph& g) {
  MarkovChain chain;
  chain.graph_ = g;
  chain.rows_.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int deg = g.out_degree(v);
    if (deg == 0)
      throw std::invalid_argument("from_graph: vertex " + std::to_string(v) +
                                  " has out-degree 0, walk undefined");
    const auto& heads = g.out_edges(v);
    Rational row_sum = 0;
    for (size_t k = 0; k < heads.size();) {
      size_t run = k;
      while (run < heads.size() && heads[run] == heads[k]) ++run;
      const Rational prob = make_rational(static_cast<long>(run - k), deg);
      chain.rows_[v].emplace_back(heads[k], prob);
      row_sum += prob;
      k = run;
    }
    if (row_sum != 1) throw std::logic_error("from_graph: row does not sum to 1");
  }
  return chain;
}

RationalVector stationary(const DirectedMultigraph& g) {
  require_strongly_connected(g, "stationary");
  const int n = g.num_vertices();
  RationalVector pi(n);

  if (is_balanced(g)) {
    long total = 0;
    for (int v = 0; v < n; ++v) total += g.out_degree(v);
    for (int v = 0; v < n; ++v) pi(v) = make_rational(g.out_degree(v), total);
  } else {
    // pi P = pi with the first balance equation replaced by sum pi = 1.
    const MarkovChain chain = from_graph(g);
    RationalMatrix a = RationalMatrix::Zero(n, n);
    RationalVector b = RationalVector::Zero(n);
    for (int x = 0; x < n; ++x) a(0, x) = 1;
    b(0) = 1;
    for (int y = 1; y < n; ++y) a(y, y) -= 1;
    for (int x = 0; x < n; ++x)
      for (const auto& [y, prob] : chain.row(x))
        if (y != 0) a(y, x) += prob;
    pi = solve_exact(std::move(a), std::move(b));
  }

  // pi P == pi, exactly, both for the closed form and the solve.
  const MarkovChain chain = from_graph(g);
  RationalVector pi_p = RationalVector::Zero(n);
  Rational total = 0;
  for (int x = 0; x < n; ++x) {
    total += pi(x);
    for (const auto& [y, prob] : chain.row(x)) pi_p(y) += pi(x) * prob;
  }
  if (total != 1) throw std::logic_error("stationary: mass is not 1");
  for (int y = 0; y < n; ++y)
    if (pi_p(y) != pi(y)) throw std::logic_error("stationary: pi P != pi");
  return pi;
}

RationalVector hitting_times_exact(const DirectedMultigraph& g,
                                   std::span<const int> targets) {
  require_strongly_connected(g, "hitting_times_exact");
  const auto t = normalize_targets(g, targets);
  const auto idx = index_free_states(g, t);
  RationalVector h = RationalVector::Zero(g.num_vertices());
  if (idx.free_states.empty()) return h;

  RationalMatrix a;
  RationalVector b;
  build_absorbing_system<Rational>(g, idx, a, b,
                                   [&](int x) { return Rational(g.out_degree(x)); });
  const RationalVector solved = solve_exact(std::move(a), std::move(b));
  for (size_t r = 0; r < idx.free_states.size(); ++r)
    h(idx.free_states[r]) = solved(static_cast<Eigen::Index>(r));
  return h;
}

Eigen::VectorXd hitting_times_float(const DirectedMultigraph& g,
                                    std::span<const int> targets) {
  require_strongly_connected(g, "hitting_times_float");
  const auto t = normalize_targets(g, targets);
  const auto idx = index_free_states(g, t);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(g.num_vertices());
  if (idx.free_states.empty()) return h;

  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  build_absorbing_system<double>(g, idx, a, b,
                                 [&](int x) { return static_cast<double>(g.out_degree(x)); });
  const Eigen::VectorXd solved = solve_float(a, b);
  for (size_t r = 0; r < idx.free_states.size(); ++r)
    h(idx.free_states[r]) = solved(static_cast<Eigen::Index>(r));
  return h;
}

HittingResult expected_hitting(const DirectedMultigraph& g, int source,
                               std::span<const int> targets, SolveMode mode) {
  if (source < 0 || source >= g.num_vertices())
    throw std::invalid_argument("expected_hitting: source out of range");
  HittingResult result;
  result.source = source;
  result.targets = normalize_targets(g, targets);
  if (mode == SolveMode::Exact) {
    const RationalVector h = hitting_times_exact(g, result.targets);
    result.method = Method::Exact;
    result.value = h(source);
    result.value_double = to_double(result.value);
  } else {
    const Eigen::VectorXd h = hitting_times_float(g, result.targets);
    result.method = Method::Float;
    result.value_double = h(source);
  }
  return result;
}

HittingResult expected_return(const DirectedMultigraph& g, int i, SolveMode mode) {
  if (i < 0 || i >= g.num_vertices())
    throw std::invalid_argument("expected_return: state out of range");
  const MarkovChain chain = from_graph(g);
  const std::vector<int> self{i};
  HittingResult result;
  result.source = i;
  result.targets = self;
  if (mode == SolveMode::Exact) {
    const RationalVector h = hitting_times_exact(g, self);
    Rational value = 1;
    for (const auto& [y, prob] : chain.row(i)) value += prob * h(y);
    result.method = Method::Exact;
    result.value = value;
    result.value_double = to_double(value);
  } else {
    const Eigen::VectorXd h = hitting_times_float(g, self);
    double value = 1.0;
    for (const auto& [y, prob] : chain.row(i)) value += to_double(prob) * h(y);
    result.method = Method::Float;
    result.value_double = value;
  }
  return result;
}

std::vector<std::pair<int, Rational>> hit_distribution_exact(
    const DirectedMultigraph& g, int source, std::span<const int> targets) {
  require_strongly_connected(g, "hit_distribution_exact");
  if (source < 0 || source >= g.num_vertices())
    throw std::invalid_argument("hit_distribution_exact: source out of range");
  const auto t = normalize_targets(g, targets);

  std::vector<std::pair<int, Rational>> mu;
  mu.reserve(t.size());
  if (std::binary_search(t.begin(), t.end(), source)) {
    for (int i : t) mu.emplace_back(i, Rational(i == source ? 1 : 0));
    return mu;
  }

  const auto idx = index_free_states(g, t);
  Rational total = 0;
  // One absorbing solve per target vertex: same left-hand side, the
  // right-hand side counts edges straight into i.
  for (int i : t) {
    RationalMatrix a;
    RationalVector b;
    build_absorbing_system<Rational>(g, idx, a, b,
                                     [&](int x) { return Rational(g.multiplicity(x, i)); });
    const RationalVector solved = solve_exact(std::move(a), std::move(b));
    const Rational p = solved(idx.index_of_state[source]);
    total += p;
    mu.emplace_back(i, p);
  }
  if (total != 1) throw std::logic_error("hit_distribution_exact: mass is not 1");
  return mu;
}

HittingResult simulate_hitting(const DirectedMultigraph& g, int source,
                               std::span<const int> targets, long long trials,
                               std::uint64_t seed, std::uint64_t step_cap) {
  if (trials < 1) throw std::invalid_argument("simulate_hitting: trials must be >= 1");
  if (source < 0 || source >= g.num_vertices())
    throw std::invalid_argument("simulate_hitting: source out of range");
  const auto t = normalize_targets(g, targets);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.out_degree(v) == 0)
      throw std::invalid_argument("simulate_hitting: vertex with out-degree 0");

  std::vector<bool> is_target(g.num_vertices(), false);
  for (int x : t) is_target[x] = true;
  const std::uint64_t cap =
      step_cap ? step_cap : 1'000'000ULL * static_cast<std::uint64_t>(g.num_vertices());

  auto eng = make_engine(seed);
  // Welford accumulation keeps the standard error stable for long batches.
  double mean = 0.0, m2 = 0.0;
  for (long long trial = 0; trial < trials; ++trial) {
    std::uint64_t steps = 0;
    int state = source;
    while (!is_target[state]) {
      if (steps >= cap)
        throw std::runtime_error("simulate_hitting: step cap " + std::to_string(cap) +
                                 " exceeded on trial " + std::to_string(trial));
      const auto& heads = g.out_edges(state);
      state = heads[uniform_below(eng, heads.size())];
      ++steps;
    }
    const double x = static_cast<double>(steps);
    const double delta = x - mean;
    mean += delta / static_cast<double>(trial + 1);
    m2 += delta * (x - mean);
  }

  HittingResult result;
  result.source = source;
  result.targets = t;
  result.method = Method::MonteCarlo;
  result.value_double = mean;
  result.trials = trials;
  result.std_error =
      trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials))
                 : 0.0;
  return result;
}

}  // namespace permwalk
