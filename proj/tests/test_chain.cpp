#include "permwalk/chain.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "permwalk/permwalk.hpp"
#include "permwalk/rng.hpp"
#include "test_support.hpp"

using namespace permwalk;

namespace {

// Independent oracle: dense float absorbing solve straight from the graph,
// via a QR factorization (a different route than the library's exact
// elimination and partial-pivot LU).
double oracle_hitting_float(const DirectedMultigraph& g, int source,
                            const std::vector<int>& targets) {
  const int n = g.num_vertices();
  std::vector<bool> is_target(n, false);
  for (int t : targets) is_target[t] = true;
  std::vector<int> index(n, -1), free_states;
  for (int v = 0; v < n; ++v)
    if (!is_target[v]) {
      index[v] = static_cast<int>(free_states.size());
      free_states.push_back(v);
    }
  const int m = static_cast<int>(free_states.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(m);
  for (int r = 0; r < m; ++r) {
    const int x = free_states[r];
    a(r, r) += 1.0;
    const double p = 1.0 / g.out_degree(x);
    for (int head : g.out_edges(x))
      if (index[head] >= 0) a(r, index[head]) -= p;
  }
  const Eigen::VectorXd h = a.colPivHouseholderQr().solve(b);
  return index[source] >= 0 ? h(index[source]) : 0.0;
}

}  // namespace

TEST_CASE("from_graph rows read off the definition") {
  const MarkovChain chain = from_graph(build_ldn(2, 1));
  REQUIRE(chain.num_states() == 2);
  const auto& row0 = chain.row(0);
  REQUIRE(row0.size() == 2);
  CHECK(row0[0] == std::pair<int, Rational>{0, make_rational(1, 2)});
  CHECK(row0[1] == std::pair<int, Rational>{1, make_rational(1, 2)});

  const MarkovChain l32 = from_graph(build_ldn(3, 2));
  const auto& row1 = l32.row(1);
  REQUIRE(row1.size() == 3);
  for (const auto& [state, p] : row1) CHECK(p == make_rational(1, 3));
}

TEST_CASE("parallel edges collapse to one probability mass") {
  DirectedMultigraph g(2);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(1, 0);
  const MarkovChain chain = from_graph(g);
  REQUIRE(chain.row(0).size() == 1);
  CHECK(chain.row(0)[0] == std::pair<int, Rational>{1, Rational(1)});
}

TEST_CASE("from_graph rejects a dangling vertex") {
  DirectedMultigraph g(2);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(from_graph(g), std::invalid_argument);
}

TEST_CASE("stationary: uniform on L(2,n), cycle, and a hand-solved general case") {
  for (int n : {1, 3, 6}) {
    const RationalVector pi = stationary(build_ldn(2, n));
    for (int v = 0; v <= n; ++v) CHECK(pi(v) == make_rational(1, n + 1));
  }

  DirectedMultigraph cycle(3);
  cycle.add_edge(0, 1);
  cycle.add_edge(1, 2);
  cycle.add_edge(2, 0);
  const RationalVector pi_cycle = stationary(cycle);
  for (int v = 0; v < 3; ++v) CHECK(pi_cycle(v) == make_rational(1, 3));

  // Unbalanced: 0 -> 1 (twice), 1 -> {0,2}, 2 -> 0 (twice). Hand solve:
  // pi0 = pi1/2 + pi2, pi1 = pi0, pi2 = pi1/2 => (2/5, 2/5, 1/5).
  const auto g = test_support::surplus_at_zero_graph();
  const RationalVector pi = stationary(g);
  CHECK(pi(0) == make_rational(2, 5));
  CHECK(pi(1) == make_rational(2, 5));
  CHECK(pi(2) == make_rational(1, 5));
}

TEST_CASE("stationary rejects non-strongly-connected graphs") {
  DirectedMultigraph g(2);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(1, 1);
  g.add_edge(1, 1);
  CHECK_THROWS_AS(stationary(g), std::invalid_argument);
}

TEST_CASE("expected_hitting frozen values") {
  const std::vector<int> t3{3};
  CHECK(expected_hitting(build_ldn(2, 3), 3, t3).value == 0);
  CHECK(expected_hitting(build_ldn(2, 3), 0, t3).value == Rational(12));

  const std::vector<int> t2{2};
  CHECK(expected_hitting(build_ldn(3, 2), 0, t2).value == Rational(9));

  // sigma = (1,0,2): hand solve gives E_0[tau_2] = 4; the float oracle
  // must agree.
  const DirectedMultigraph g = build_perm_chain(Permutation::parse_unsigned("1,0,2"));
  const HittingResult r = expected_hitting(g, 0, t2);
  CHECK(r.value == Rational(4));
  CHECK(oracle_hitting_float(g, 0, t2) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("L(2,n) closed form: E_k[tau_n] = n^2+n-k^2-k") {
  for (int n : {1, 2, 5, 12, 25}) {
    const DirectedMultigraph g = build_ldn(2, n);
    const std::vector<int> target{n};
    const RationalVector h = hitting_times_exact(g, target);
    for (int k = 0; k <= n; ++k) {
      const long expected = static_cast<long>(n) * n + n - static_cast<long>(k) * k - k;
      CHECK(h(k) == Rational(expected));
    }
  }
}

TEST_CASE("monotone sanity: starting closer to n is faster on the line") {
  for (int n : {2, 3, 8}) {
    const std::vector<int> target{n};
    const RationalVector h = hitting_times_exact(build_ldn(2, n), target);
    CHECK(h(0) == Rational(static_cast<long>(n) * n + n));
    CHECK(h(0) > h(1));
  }
}

TEST_CASE("expected_return: line, loop vertex, cycle") {
  for (int n : {1, 4, 9})
    for (int v : {0, n})
      CHECK(expected_return(build_ldn(2, n), v).value == Rational(n + 1));

  DirectedMultigraph loops(1);
  loops.add_edge(0, 0);
  loops.add_edge(0, 0);
  CHECK(expected_return(loops, 0).value == Rational(1));

  DirectedMultigraph cycle(3);
  cycle.add_edge(0, 1);
  cycle.add_edge(1, 2);
  cycle.add_edge(2, 0);
  for (int v = 0; v < 3; ++v) CHECK(expected_return(cycle, v).value == Rational(3));
}

TEST_CASE("Kac identity exactly on random strongly connected graphs") {
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 7;
    const int d = 2 + trial % 3;
    const auto g = random_eulerian_strongly_connected(n, d, 900 + trial).graph;
    const RationalVector pi = stationary(g);
    for (int i = 0; i < n; ++i)
      CHECK(expected_return(g, i).value * pi(i) == Rational(1));
  }
}

TEST_CASE("one-step expansion holds exactly") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_eulerian_strongly_connected(6, 2, 50 + trial).graph;
    const MarkovChain chain = from_graph(g);
    const int y = trial % 6;
    const std::vector<int> target{y};
    const RationalVector h = hitting_times_exact(g, target);
    for (int x = 0; x < 6; ++x) {
      if (x == y) continue;
      Rational rhs = 1;
      for (const auto& [z, p] : chain.row(x)) rhs += p * h(z);
      CHECK(h(x) == rhs);
    }
  }
}

TEST_CASE("hit distribution: gambler's ruin from the middle of the line") {
  // SRW on {0..3} from 1, absorbing at both ends: P(0 first) = 2/3.
  const DirectedMultigraph g = build_ldn(2, 3);
  const std::vector<int> targets{0, 3};
  const auto mu = hit_distribution_exact(g, 1, targets);
  REQUIRE(mu.size() == 2);
  CHECK(mu[0] == std::pair<int, Rational>{0, make_rational(2, 3)});
  CHECK(mu[1] == std::pair<int, Rational>{3, make_rational(1, 3)});

  const auto from_target = hit_distribution_exact(g, 3, targets);
  CHECK(from_target[0].second == 0);
  CHECK(from_target[1].second == 1);
}

TEST_CASE("first-step decomposition through the in-neighborhood") {
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + trial % 5;
    const auto g = random_eulerian_strongly_connected(n, 2 + trial % 2, 2024 + trial).graph;
    const int y = trial % n;
    const int x = (y + 1 + trial) % n;
    if (x == y) continue;

    std::vector<int> in_nbrs;
    for (int v = 0; v < n; ++v)
      if (g.multiplicity(v, y) > 0) in_nbrs.push_back(v);

    const std::vector<int> ty{y};
    const RationalVector h_y = hitting_times_exact(g, ty);
    const RationalVector h_i = hitting_times_exact(g, in_nbrs);
    const auto mu = hit_distribution_exact(g, x, in_nbrs);
    Rational rhs = h_i(x);
    for (const auto& [i, p] : mu) rhs += p * h_y(i);
    CHECK(h_y(x) == rhs);
  }
}

TEST_CASE("exact and float solvers agree to 1e-9 relative") {
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 15 + trial * 10;
    const auto g = random_eulerian_strongly_connected(n, 3, 4000 + trial).graph;
    const std::vector<int> target{n - 1};
    const RationalVector exact = hitting_times_exact(g, target);
    const Eigen::VectorXd approx = hitting_times_float(g, target);
    for (int x = 0; x < n; ++x) {
      const double e = to_double(exact(x));
      if (e == 0.0)
        CHECK(approx(x) == doctest::Approx(0.0).epsilon(1e-9));
      else
        CHECK(std::abs(approx(x) - e) / std::abs(e) < 1e-9);
    }
  }
}

TEST_CASE("simulate_hitting basics") {
  const DirectedMultigraph g = build_ldn(2, 3);
  const std::vector<int> t3{3};

  const HittingResult trivial = simulate_hitting(g, 3, t3, 10, 1);
  CHECK(trivial.value_double == 0.0);
  CHECK(trivial.std_error == 0.0);

  const HittingResult r = simulate_hitting(g, 0, t3, 100000, 7);
  CHECK(r.trials == 100000);
  CHECK(std::abs(r.value_double - 12.0) <= 3.0 * r.std_error);

  const HittingResult again = simulate_hitting(g, 0, t3, 100000, 7);
  CHECK(again.value_double == r.value_double);
  CHECK(again.std_error == r.std_error);

  CHECK_THROWS_AS(simulate_hitting(g, 0, t3, 10, 1, /*step_cap=*/1), std::runtime_error);
}

TEST_CASE("row sums are exactly one on random chains") {
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_eulerian(3 + trial % 9, 1 + trial % 4, 60 + trial);
    const MarkovChain chain = from_graph(g);
    for (int s = 0; s < chain.num_states(); ++s) {
      Rational sum = 0;
      for (const auto& [t, p] : chain.row(s)) sum += p;
      CHECK(sum == Rational(1));
    }
  }
}
