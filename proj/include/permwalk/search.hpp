#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permwalk/rational.hpp"

namespace permwalk {

enum class PermVariant { Main, Remark3 };

struct CandidateRecord {
  std::string id;  // permutation string, trial tag, or "k=<j>"
  Rational value;
  bool is_max = false;
};

struct SearchReport {
  std::string kind;  // perm-exhaustive | graph-sweep | signed | transposition
  int n = 0;
  int d = 0;
  std::string variant;
  long long candidates = 0;
  std::uint64_t seed = 0;
  long long trials = 0;

  Rational max_value;
  std::vector<std::string> argmax;  // enumeration order
  Rational bound;

  std::vector<CandidateRecord> records;  // populated when keep_records is set
  std::vector<std::string> counterexamples;
  std::vector<std::string> notes;
  bool claims_hold = true;
};

struct SearchOptions {
  int jobs = 1;
  bool keep_records = false;
  // Lifts the factorial guards; runtime is then the caller's problem.
  bool override_guards = false;
  // Sampled modes only.
  long long trials = 10000;
  std::uint64_t seed = 1;
};

// All (n+1)! permutations of {0..n}, exact E_0[tau_n] each; checks the
// n^2+n maximum and (for the main chain, n >= 2) uniqueness of the identity
// argmax. Guarded to n <= 8. The n = 1 degeneracy (swap ties the identity)
// is reported as a note, not a failure.
SearchReport exhaustive_perm_search(int n, PermVariant variant,
                                    const SearchOptions& options = {});

// Strongly connected random Eulerian graphs on n+1 vertices, d-in/d-out;
// checks max_{x,y} E_x[tau_y] <= (d/2)n(n+1) per sample, with equality
// allowed only for graphs isomorphic to L(d,n). Values are solved in floats
// and re-verified exactly whenever they come within 1e-6 (relative) of the
// bound; with keep_records set every sample is solved exactly.
SearchReport random_graph_sweep(int n, int d, long long trials,
                                std::uint64_t seed,
                                const SearchOptions& options = {});

// Exhaustive over permutations of {-n..n} for n <= 3, sampled (options.trials
// draws) for 4 <= n <= 10. Asserts the proven ceiling 4n^2+6n+2 and the
// three known maximizer values (identity, x -> -x, the (0 1) transposition,
// each n^2); whether the identity tops the argmax is reported, never
// asserted.
SearchReport signed_perm_search(int n, const SearchOptions& options = {});

// For each k in {1..n-2}, the transposition of k and k+1 on {-n..n} must hit
// n(2n-3-2k)/(n-1) + n(n-2) exactly. Negative k are evaluated and recorded
// but compared to no formula.
SearchReport transposition_formula_check(int n);

std::string report_to_text(const SearchReport& report);

// One line per candidate: perm,value_num,value_den,is_max (permutation field
// quoted since it contains commas).
std::string records_to_csv(const SearchReport& report);

}  // namespace permwalk
