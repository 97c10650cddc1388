#include "permwalk/search.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "permwalk/chain.hpp"
#include "permwalk/json_io.hpp"
#include "permwalk/permwalk.hpp"
#include "permwalk/rng.hpp"

namespace permwalk {

namespace {

long long factorial(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Factorial number system: permutation of {0..size-1} at lexicographic
// position `rank`. Lets workers start mid-sequence and advance with
// std::next_permutation.
std::vector<int> unrank_permutation(int size, long long rank) {
  std::vector<int> available(size);
  for (int i = 0; i < size; ++i) available[i] = i;
  std::vector<int> out;
  out.reserve(size);
  for (int pos = size - 1; pos >= 0; --pos) {
    const long long f = factorial(pos);
    const auto k = static_cast<size_t>(rank / f);
    rank %= f;
    out.push_back(available[k]);
    available.erase(available.begin() + static_cast<long>(k));
  }
  return out;
}

// Runs fn(first, last, worker) over a static partition of [0, total) and
// returns the per-worker results in worker order, so merged output is
// independent of the worker count.
template <typename Result, typename Fn>
std::vector<Result> run_partitioned(long long total, int jobs, Fn fn) {
  const int workers = static_cast<int>(std::max<long long>(1, std::min<long long>(jobs, total)));
  std::vector<Result> results(workers);
  if (workers == 1) {
    results[0] = fn(0, total, 0);
    return results;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const long long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long long first = w * chunk;
    const long long last = std::min(total, first + chunk);
    threads.emplace_back([&results, fn, first, last, w] { results[w] = fn(first, last, w); });
  }
  for (auto& t : threads) t.join();
  return results;
}

Rational exact_value_for_perm(const Permutation& sigma, PermVariant variant) {
  const DirectedMultigraph g = variant == PermVariant::Main
                                   ? build_perm_chain(sigma)
                                   : build_perm_chain_variant(sigma);
  const int n = sigma.domain_max();
  const std::vector<int> target{n};
  return hitting_times_exact(g, target)(0);
}

Rational exact_value_for_signed(const Permutation& sigma) {
  const DirectedMultigraph g = build_signed_chain(sigma);
  const int n = sigma.domain_max();
  const std::vector<int> targets{0, 2 * n};
  return hitting_times_exact(g, targets)(n);
}

double float_value_for_signed(const Permutation& sigma) {
  const DirectedMultigraph g = build_signed_chain(sigma);
  const int n = sigma.domain_max();
  const std::vector<int> targets{0, 2 * n};
  return hitting_times_float(g, targets)(n);
}

}  // namespace

SearchReport exhaustive_perm_search(int n, PermVariant variant,
                                    const SearchOptions& options) {
  if (n < 1) throw std::invalid_argument("exhaustive_perm_search: need n >= 1");
  if (n > 8 && !options.override_guards)
    throw std::invalid_argument("exhaustive_perm_search: n > 8 exceeds the factorial guard "
                                "((n+1)! candidates); pass the override to force it");

  SearchReport report;
  report.kind = "perm-exhaustive";
  report.n = n;
  report.d = 2;
  report.variant = variant == PermVariant::Main ? "main" : "remark3";
  report.bound = Rational(static_cast<long>(n) * n + n);
  report.candidates = factorial(n + 1);
  if (n > 8) report.notes.push_back("factorial guard overridden");

  struct Worker {
    Rational max;
    std::vector<std::string> argmax;
    std::vector<CandidateRecord> records;
  };
  const bool keep_records = options.keep_records;
  const auto results = run_partitioned<Worker>(
      report.candidates, options.jobs, [&](long long first, long long last, int) {
        Worker w;
        std::vector<int> internal = unrank_permutation(n + 1, first);
        bool have_max = false;
        for (long long idx = first; idx < last; ++idx) {
          const Permutation sigma = Permutation::from_internal(internal, 0);
          const Rational value = exact_value_for_perm(sigma, variant);
          if (!have_max || value > w.max) {
            w.max = value;
            w.argmax.clear();
            have_max = true;
          }
          if (value == w.max) w.argmax.push_back(sigma.to_string());
          if (keep_records) w.records.push_back({sigma.to_string(), value, false});
          std::next_permutation(internal.begin(), internal.end());
        }
        return w;
      });

  bool have_max = false;
  for (const auto& w : results) {
    if (w.argmax.empty()) continue;
    if (!have_max || w.max > report.max_value) {
      report.max_value = w.max;
      have_max = true;
    }
  }
  for (const auto& w : results) {
    if (w.max == report.max_value)
      report.argmax.insert(report.argmax.end(), w.argmax.begin(), w.argmax.end());
    if (keep_records)
      report.records.insert(report.records.end(), w.records.begin(), w.records.end());
  }
  for (auto& rec : report.records) rec.is_max = rec.value == report.max_value;

  if (report.max_value != report.bound) {
    report.claims_hold = false;
    report.counterexamples.push_back("max " + to_string(report.max_value) +
                                     " != n^2+n = " + to_string(report.bound));
  }
  const std::string identity = Permutation::identity(0, n).to_string();
  if (variant == PermVariant::Main) {
    if (n == 1) {
      // Both permutations of {0,1} give exactly 2; the swap's graph is
      // isomorphic to L(2,1). Reported, not failed.
      if (report.argmax.size() == 2)
        report.notes.push_back("n=1 degeneracy: identity and swap both attain 2");
      else {
        report.claims_hold = false;
        report.counterexamples.push_back("n=1: expected exactly {identity, swap} as argmax");
      }
    } else if (report.argmax != std::vector<std::string>{identity}) {
      report.claims_hold = false;
      report.counterexamples.push_back("argmax is not uniquely the identity");
    }
  } else {
    const bool identity_in =
        std::find(report.argmax.begin(), report.argmax.end(), identity) != report.argmax.end();
    report.notes.push_back(std::string("variant argmax ") +
                           (identity_in ? "contains" : "does not contain") + " the identity (" +
                           std::to_string(report.argmax.size()) + " maximizer(s))");
  }
  return report;
}

SearchReport random_graph_sweep(int n, int d, long long trials, std::uint64_t seed,
                                const SearchOptions& options) {
  if (n < 1) throw std::invalid_argument("random_graph_sweep: need n >= 1");
  if (d < 2) throw std::invalid_argument("random_graph_sweep: Theorem scope needs d >= 2");
  if (trials < 1) throw std::invalid_argument("random_graph_sweep: need trials >= 1");

  SearchReport report;
  report.kind = "graph-sweep";
  report.n = n;
  report.d = d;
  report.seed = seed;
  report.trials = trials;
  report.candidates = trials;
  report.bound = make_rational(static_cast<long>(d) * n * (n + 1), 2);
  const double bound_f = to_double(report.bound);

  struct Worker {
    double best = -1.0;
    long long best_trial = -1;
    long long rejections = 0;
    long long equalities = 0;
    std::vector<std::string> counterexamples;
    std::vector<CandidateRecord> records;
  };
  const bool keep_records = options.keep_records;
  const auto results = run_partitioned<Worker>(
      trials, options.jobs, [&](long long first, long long last, int) {
        Worker w;
        std::vector<int> target(1);
        for (long long trial = first; trial < last; ++trial) {
          const auto sample =
              random_eulerian_strongly_connected(n + 1, d, mix_seed(seed, trial));
          w.rejections += sample.rejections;
          const DirectedMultigraph& g = sample.graph;

          double fmax = 0.0;
          for (int y = 0; y <= n; ++y) {
            target[0] = y;
            fmax = std::max(fmax, hitting_times_float(g, target).maxCoeff());
          }
          if (fmax > w.best || (fmax == w.best && trial < w.best_trial)) {
            w.best = fmax;
            w.best_trial = trial;
          }

          const bool near_bound = fmax >= bound_f * (1.0 - 1e-6);
          Rational exact_max;
          if (near_bound || keep_records) {
            for (int y = 0; y <= n; ++y) {
              target[0] = y;
              const RationalVector h = hitting_times_exact(g, target);
              for (int x = 0; x <= n; ++x)
                if (h(x) > exact_max) exact_max = h(x);
            }
          }
          if (near_bound) {
            if (exact_max > report.bound) {
              w.counterexamples.push_back("trial:" + std::to_string(trial) + " max " +
                                          to_string(exact_max) + " exceeds bound; graph " +
                                          graph_to_json(g));
            } else if (exact_max == report.bound) {
              ++w.equalities;
              if (!is_isomorphic_to_ldn(g, d, n))
                w.counterexamples.push_back("trial:" + std::to_string(trial) +
                                            " attains the bound but is not L(d,n); graph " +
                                            graph_to_json(g));
            }
          }
          if (keep_records)
            w.records.push_back({"trial:" + std::to_string(trial), exact_max, false});
        }
        return w;
      });

  double best = -1.0;
  long long best_trial = -1;
  long long rejections = 0, equalities = 0;
  for (const auto& w : results) {
    rejections += w.rejections;
    equalities += w.equalities;
    if (w.best > best || (w.best == best && w.best_trial < best_trial)) {
      best = w.best;
      best_trial = w.best_trial;
    }
    report.counterexamples.insert(report.counterexamples.end(), w.counterexamples.begin(),
                                  w.counterexamples.end());
    if (keep_records)
      report.records.insert(report.records.end(), w.records.begin(), w.records.end());
  }

  // Exact value for the winning sample.
  {
    const auto sample = random_eulerian_strongly_connected(n + 1, d, mix_seed(seed, best_trial));
    std::vector<int> target(1);
    for (int y = 0; y <= n; ++y) {
      target[0] = y;
      const RationalVector h = hitting_times_exact(sample.graph, target);
      for (int x = 0; x <= n; ++x)
        if (h(x) > report.max_value) report.max_value = h(x);
    }
  }
  report.argmax.push_back("trial:" + std::to_string(best_trial));
  for (auto& rec : report.records) rec.is_max = rec.value == report.max_value;
  report.claims_hold = report.counterexamples.empty();
  report.notes.push_back(std::to_string(rejections) + " non-strongly-connected draws rejected");
  report.notes.push_back(std::to_string(equalities) + " sample(s) attained the bound (all L(d,n))");
  return report;
}

SearchReport signed_perm_search(int n, const SearchOptions& options) {
  if (n < 1) throw std::invalid_argument("signed_perm_search: need n >= 1");
  if (n > 10 && !options.override_guards)
    throw std::invalid_argument("signed_perm_search: n > 10 exceeds the sampled-mode guard; "
                                "pass the override to force it");
  const bool exhaustive = n <= 3;

  SearchReport report;
  report.kind = "signed";
  report.n = n;
  report.d = 2;
  report.variant = exhaustive ? "exhaustive" : "sampled";
  report.bound = Rational(4L * n * n + 6L * n + 2);
  const Rational n_squared(static_cast<long>(n) * n);

  // The three known maximizers; each gives exactly n^2 for n >= 2. At n=1
  // the vertex 1 is itself a boundary state and the transposition of 0 and 1
  // comes out at 2 instead, so the value checks are reported but not
  // asserted there.
  const struct {
    const char* id;
    Permutation sigma;
  } distinguished[] = {
      {"identity", Permutation::identity(-n, n)},
      {"negation", Permutation::negation(n)},
      {"transpose01", Permutation::transposition(-n, n, 0, 1)},
  };
  for (const auto& [id, sigma] : distinguished) {
    const Rational value = exact_value_for_signed(sigma);
    report.records.push_back({std::string(id) + " " + sigma.to_string(), value, false});
    if (value != n_squared) {
      if (n >= 2) {
        report.claims_hold = false;
        report.counterexamples.push_back(std::string(id) + " gives " + to_string(value) +
                                         " instead of n^2 = " + to_string(n_squared));
      } else {
        report.notes.push_back(std::string("n=1 degeneracy: ") + id + " gives " +
                               to_string(value) + ", not n^2 = " + to_string(n_squared));
      }
    }
  }

  if (exhaustive) {
    report.candidates = factorial(2 * n + 1);
    std::vector<int> internal(2 * n + 1);
    for (size_t k = 0; k < internal.size(); ++k) internal[k] = static_cast<int>(k);
    bool have_max = false;
    do {
      const Permutation sigma = Permutation::from_internal(internal, -n);
      const Rational value = exact_value_for_signed(sigma);
      if (value > report.bound) {
        report.claims_hold = false;
        report.counterexamples.push_back("sigma=" + sigma.to_string() + " value " +
                                         to_string(value) + " exceeds the 4n^2+6n+2 ceiling");
      }
      if (!have_max || value > report.max_value) {
        report.max_value = value;
        report.argmax.clear();
        have_max = true;
      }
      if (value == report.max_value) report.argmax.push_back(sigma.to_string());
      if (options.keep_records) report.records.push_back({sigma.to_string(), value, false});
    } while (std::next_permutation(internal.begin(), internal.end()));
  } else {
    report.seed = options.seed;
    report.trials = options.trials;
    report.candidates = options.trials;
    const double ceiling_f = to_double(report.bound);
    const Rational ceiling = report.bound;
    const bool keep_records = options.keep_records;

    struct Worker {
      double best = -1.0;
      std::vector<std::string> best_perms;  // within 1e-9 of the worker max
      std::vector<std::string> counterexamples;
      std::vector<CandidateRecord> records;
    };
    const auto results = run_partitioned<Worker>(
        options.trials, options.jobs, [&](long long first, long long last, int) {
          Worker w;
          for (long long trial = first; trial < last; ++trial) {
            auto eng = make_engine(options.seed, static_cast<std::uint64_t>(trial));
            const Permutation sigma =
                Permutation::from_internal(random_permutation(2 * n + 1, eng), -n);
            const double value_f = float_value_for_signed(sigma);
            if (value_f >= ceiling_f * (1.0 - 1e-6)) {
              const Rational value = exact_value_for_signed(sigma);
              if (value > ceiling)
                w.counterexamples.push_back("sigma=" + sigma.to_string() + " value " +
                                            to_string(value) +
                                            " exceeds the 4n^2+6n+2 ceiling");
            }
            if (value_f > w.best * (1.0 + 1e-12) || w.best_perms.empty()) {
              w.best = value_f;
              w.best_perms.assign(1, sigma.to_string());
            } else if (value_f >= w.best * (1.0 - 1e-9)) {
              w.best_perms.push_back(sigma.to_string());
            }
            if (keep_records)
              w.records.push_back({"trial:" + std::to_string(trial) + " " + sigma.to_string(),
                                   exact_value_for_signed(sigma), false});
          }
          return w;
        });

    double best_f = to_double(n_squared);  // the distinguished three stay in the race
    for (const auto& w : results) best_f = std::max(best_f, w.best);

    // Candidates within float noise of the global max, plus the distinguished
    // permutations; ties are resolved exactly before reporting.
    std::vector<std::string> finalists;
    for (const auto& [id, sigma] : distinguished) finalists.push_back(sigma.to_string());
    for (const auto& w : results) {
      if (!w.best_perms.empty() && w.best >= best_f * (1.0 - 1e-9))
        finalists.insert(finalists.end(), w.best_perms.begin(), w.best_perms.end());
      report.counterexamples.insert(report.counterexamples.end(), w.counterexamples.begin(),
                                    w.counterexamples.end());
      if (keep_records)
        report.records.insert(report.records.end(), w.records.begin(), w.records.end());
    }
    if (!report.counterexamples.empty()) report.claims_hold = false;

    bool have_max = false;
    std::vector<std::pair<std::string, Rational>> resolved;
    for (const auto& s : finalists) {
      const Rational value = exact_value_for_signed(Permutation::parse_signed(s));
      resolved.emplace_back(s, value);
      if (!have_max || value > report.max_value) {
        report.max_value = value;
        have_max = true;
      }
    }
    for (const auto& [s, value] : resolved)
      if (value == report.max_value &&
          std::find(report.argmax.begin(), report.argmax.end(), s) == report.argmax.end())
        report.argmax.push_back(s);
  }

  for (auto& rec : report.records) rec.is_max = rec.value == report.max_value;
  const std::string identity = Permutation::identity(-n, n).to_string();
  const bool identity_in =
      std::find(report.argmax.begin(), report.argmax.end(), identity) != report.argmax.end();
  report.notes.push_back(std::string("identity ") + (identity_in ? "is" : "is NOT") +
                         " among the maximizers (open problem: reported, not asserted)");
  report.notes.push_back("max = " + to_string(report.max_value) + ", identity value = " +
                         to_string(n_squared) + ", ceiling = " + to_string(report.bound));
  return report;
}

SearchReport transposition_formula_check(int n) {
  if (n < 3) throw std::invalid_argument("transposition_formula_check: need n >= 3");

  SearchReport report;
  report.kind = "transposition";
  report.n = n;
  report.d = 2;
  report.bound = Rational(4L * n * n + 6L * n + 2);
  bool have_max = false;

  for (int k = 1; k <= n - 2; ++k) {
    const Permutation sigma = Permutation::transposition(-n, n, k, k + 1);
    const Rational value = exact_value_for_signed(sigma);
    const Rational formula =
        make_rational(static_cast<long>(n) * (2L * n - 3 - 2 * k), n - 1) +
        Rational(static_cast<long>(n) * (n - 2));
    report.records.push_back({"k=" + std::to_string(k), value, false});
    ++report.candidates;
    if (value != formula) {
      report.claims_hold = false;
      report.counterexamples.push_back("k=" + std::to_string(k) + ": solver " +
                                       to_string(value) + " != formula " + to_string(formula));
    }
    if (!have_max || value > report.max_value) {
      report.max_value = value;
      have_max = true;
    }
  }
  // Mirror-side transpositions: evaluated for the record, no formula stated
  // for them.
  for (int k = -(n - 1); k <= -1; ++k) {
    const Permutation sigma = Permutation::transposition(-n, n, k, k + 1);
    const Rational value = exact_value_for_signed(sigma);
    report.records.push_back({"k=" + std::to_string(k), value, false});
    ++report.candidates;
    if (value > report.max_value) report.max_value = value;
  }
  for (auto& rec : report.records) {
    rec.is_max = rec.value == report.max_value;
    if (rec.is_max) report.argmax.push_back(rec.id);
  }
  report.notes.push_back("positive k compared against n(2n-3-2k)/(n-1) + n(n-2); "
                         "negative k recorded only");
  return report;
}

std::string report_to_text(const SearchReport& report) {
  std::ostringstream out;
  out << "kind:       " << report.kind << "\n";
  out << "params:     n=" << report.n;
  if (report.d) out << " d=" << report.d;
  if (!report.variant.empty()) out << " variant=" << report.variant;
  if (report.trials) out << " trials=" << report.trials << " seed=" << report.seed;
  out << "\n";
  out << "candidates: " << report.candidates << "\n";
  out << "max:        " << to_string(report.max_value) << " (" << to_double(report.max_value)
      << ")\n";
  out << "bound:      " << to_string(report.bound) << "\n";
  out << "argmax:     ";
  for (size_t k = 0; k < report.argmax.size(); ++k) out << (k ? " | " : "") << report.argmax[k];
  out << "\n";
  out << "claims:     " << (report.claims_hold ? "hold" : "VIOLATED") << "\n";
  for (const auto& c : report.counterexamples) out << "counterexample: " << c << "\n";
  for (const auto& note : report.notes) out << "note:       " << note << "\n";
  return out.str();
}

std::string records_to_csv(const SearchReport& report) {
  std::string out = "perm,value_num,value_den,is_max\n";
  for (const auto& rec : report.records) {
    out += '"' + rec.id + "\"," + numerator_string(rec.value) + ',' +
           denominator_string(rec.value) + ',' + (rec.is_max ? '1' : '0') + '\n';
  }
  return out;
}

}  // namespace permwalk
