#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "permwalk/chain.hpp"
#include "permwalk/digraph.hpp"
#include "permwalk/json_io.hpp"
#include "permwalk/permwalk.hpp"
#include "permwalk/search.hpp"
#include "permwalk/surgery.hpp"

namespace {

using namespace permwalk;

struct GraphSpec {
  DirectedMultigraph graph;
  int offset = 0;  // signed chains: external label = vertex - offset
};

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream stream(csv);
  std::string field;
  while (std::getline(stream, field, ',')) {
    try {
      out.push_back(std::stoi(field));
    } catch (const std::exception&) {
      throw std::invalid_argument("expected an integer, got '" + field + "' in '" + csv + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

// Inline builder specs (ldn:d,n | perm:<images> | signed:<images> |
// variant:<images>) or a path to a graph JSON file.
GraphSpec parse_graph_spec(const std::string& spec) {
  const auto with_prefix = [&](const char* prefix) -> std::optional<std::string> {
    const std::string p(prefix);
    if (spec.rfind(p, 0) == 0) return spec.substr(p.size());
    return std::nullopt;
  };
  if (auto rest = with_prefix("ldn:")) {
    const auto params = parse_int_list(*rest);
    if (params.size() != 2) throw std::invalid_argument("ldn spec needs d,n");
    return {build_ldn(params[0], params[1]), 0};
  }
  if (auto rest = with_prefix("perm:"))
    return {build_perm_chain(Permutation::parse_unsigned(*rest)), 0};
  if (auto rest = with_prefix("variant:"))
    return {build_perm_chain_variant(Permutation::parse_unsigned(*rest)), 0};
  if (auto rest = with_prefix("signed:")) {
    const Permutation sigma = Permutation::parse_signed(*rest);
    return {build_signed_chain(sigma), signed_state_offset(sigma)};
  }
  return {graph_from_json_file(spec), 0};
}

int exact_state_limit() {
  constexpr int kDefault = 2000;
  const char* env = std::getenv("PERMWALK_MAX_STATES");
  if (!env) return kDefault;
  try {
    return std::stoi(env);
  } catch (const std::exception&) {
    std::fprintf(stderr, "warning: ignoring bad PERMWALK_MAX_STATES '%s'\n", env);
    return kDefault;
  }
}

std::string format_targets(const std::vector<int>& targets, int offset) {
  std::string out = "{";
  for (size_t k = 0; k < targets.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(targets[k] - offset);
  }
  return out + "}";
}

void emit_report(const SearchReport& report, const std::string& format,
                 const std::string& records_path) {
  if (format == "json")
    std::cout << report_to_json(report) << "\n";
  else
    std::cout << report_to_text(report);
  if (!records_path.empty()) {
    const std::string csv = records_to_csv(report);
    if (records_path == "-") {
      std::cout << csv;
    } else {
      std::ofstream out(records_path);
      if (!out) throw std::runtime_error("cannot write records to " + records_path);
      out << csv;
    }
  }
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  ~Timer() {
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start);
    std::fprintf(stderr, "elapsed: %.3fs\n", elapsed.count());
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permuted random walks, Eulerian digraph hitting times, and the "
               "extremal constructions around them"};
  app.require_subcommand(1);

  // solve
  std::string solve_graph, solve_to, solve_mode = "auto";
  int solve_from = 0;
  auto* solve_cmd = app.add_subcommand("solve", "expected hitting time E_x[tau_T]");
  solve_cmd->add_option("--graph", solve_graph, "builder spec or graph JSON path")->required();
  solve_cmd->add_option("--from", solve_from, "source state")->required();
  solve_cmd->add_option("--to", solve_to, "target state(s), comma separated")->required();
  solve_cmd->add_option("--mode", solve_mode, "auto|exact|float")
      ->check(CLI::IsMember({"auto", "exact", "float"}));
  std::string solve_format = "text";
  solve_cmd->add_option("--format", solve_format)->check(CLI::IsMember({"text", "json"}));

  // simulate
  std::string sim_graph, sim_to;
  int sim_from = 0;
  long long sim_trials = 10000;
  std::uint64_t sim_seed = 1, sim_cap = 0;
  std::string sim_format = "text";
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of E_x[tau_T]");
  sim_cmd->add_option("--graph", sim_graph)->required();
  sim_cmd->add_option("--from", sim_from)->required();
  sim_cmd->add_option("--to", sim_to)->required();
  sim_cmd->add_option("--trials", sim_trials);
  sim_cmd->add_option("--seed", sim_seed);
  sim_cmd->add_option("--step-cap", sim_cap, "per-trial step cap (0 = 10^6 * vertices)");
  sim_cmd->add_option("--format", sim_format)->check(CLI::IsMember({"text", "json"}));

  // search
  int search_n = 0, search_jobs = 1;
  std::string search_variant = "main", search_format = "text", search_records;
  bool search_signed = false, search_override = false;
  long long search_trials = 10000;
  std::uint64_t search_seed = 1;
  auto* search_cmd =
      app.add_subcommand("search", "extremal permutation search (exhaustive or sampled)");
  search_cmd->add_option("--n", search_n)->required();
  search_cmd->add_option("--variant", search_variant, "main|remark3 (unsigned chains)")
      ->check(CLI::IsMember({"main", "remark3"}));
  search_cmd->add_flag("--signed", search_signed, "search permutations of {-n..n}");
  search_cmd->add_option("--trials", search_trials, "sampled signed mode only");
  search_cmd->add_option("--seed", search_seed, "sampled signed mode only");
  search_cmd->add_option("--jobs", search_jobs);
  search_cmd->add_flag("--override-guard", search_override, "lift the factorial guards");
  search_cmd->add_option("--records", search_records, "per-candidate CSV path ('-' = stdout)");
  search_cmd->add_option("--format", search_format)->check(CLI::IsMember({"text", "json"}));

  // sweep
  int sweep_n = 0, sweep_d = 2, sweep_jobs = 1;
  long long sweep_trials = 1000;
  std::uint64_t sweep_seed = 1;
  std::string sweep_format = "text", sweep_records;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "random Eulerian graphs vs the (d/2)n(n+1) bound");
  sweep_cmd->add_option("--n", sweep_n, "graphs on n+1 vertices")->required();
  sweep_cmd->add_option("--d", sweep_d)->required();
  sweep_cmd->add_option("--trials", sweep_trials);
  sweep_cmd->add_option("--seed", sweep_seed);
  sweep_cmd->add_option("--jobs", sweep_jobs);
  sweep_cmd->add_option("--records", sweep_records, "forces exact per-sample values");
  sweep_cmd->add_option("--format", sweep_format)->check(CLI::IsMember({"text", "json"}));

  // formula
  int formula_n = 0;
  std::string formula_format = "text";
  auto* formula_cmd =
      app.add_subcommand("formula", "transposition-of-(k,k+1) closed form vs exact solver");
  formula_cmd->add_option("--n", formula_n)->required();
  formula_cmd->add_option("--format", formula_format)->check(CLI::IsMember({"text", "json"}));

  // verify
  constexpr int kUnset = std::numeric_limits<int>::min();
  std::string verify_lemma, verify_graph;
  int verify_i = kUnset, verify_u = kUnset, verify_y = kUnset;
  auto* verify_cmd = app.add_subcommand("verify", "per-lemma certificates");
  verify_cmd->add_option("--lemma", verify_lemma, "return|excursion|setA|gpp")
      ->required()
      ->check(CLI::IsMember({"return", "excursion", "setA", "gpp"}));
  verify_cmd->add_option("--graph", verify_graph)->required();
  verify_cmd->add_option("--i", verify_i, "distinguished vertex (return, setA)");
  verify_cmd->add_option("--u", verify_u, "removed/target vertex (excursion, setA)");
  verify_cmd->add_option("--y", verify_y, "removed vertex (gpp)");

  // gen
  std::string gen_graph;
  auto* gen_cmd = app.add_subcommand("gen", "print a builder spec as graph JSON");
  gen_cmd->add_option("--graph", gen_graph)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Timer timer;
    if (*solve_cmd) {
      const GraphSpec spec = parse_graph_spec(solve_graph);
      std::vector<int> targets = parse_int_list(solve_to);
      for (int& t : targets) t += spec.offset;
      const int source = solve_from + spec.offset;
      SolveMode mode;
      if (solve_mode == "exact")
        mode = SolveMode::Exact;
      else if (solve_mode == "float")
        mode = SolveMode::Float;
      else
        mode = spec.graph.num_vertices() <= exact_state_limit() ? SolveMode::Exact
                                                                : SolveMode::Float;
      HittingResult result = expected_hitting(spec.graph, source, targets, mode);
      if (solve_format == "json") {
        result.source -= spec.offset;
        for (int& t : result.targets) t -= spec.offset;
        std::cout << hitting_result_to_json(result) << "\n";
      } else if (result.method == Method::Exact) {
        std::printf("E_%d[tau_%s] = %s = %.12g  (method: exact)\n", solve_from,
                    format_targets(result.targets, spec.offset).c_str(),
                    to_string(result.value).c_str(), result.value_double);
      } else {
        std::printf("E_%d[tau_%s] = %.12g  (method: float)\n", solve_from,
                    format_targets(result.targets, spec.offset).c_str(), result.value_double);
      }
      return 0;
    }
    if (*sim_cmd) {
      const GraphSpec spec = parse_graph_spec(sim_graph);
      std::vector<int> targets = parse_int_list(sim_to);
      for (int& t : targets) t += spec.offset;
      HittingResult result = simulate_hitting(spec.graph, sim_from + spec.offset, targets,
                                              sim_trials, sim_seed, sim_cap);
      if (sim_format == "json") {
        result.source -= spec.offset;
        for (int& t : result.targets) t -= spec.offset;
        std::cout << hitting_result_to_json(result) << "\n";
      } else {
        std::printf("E_%d[tau_%s] ~ %.12g  (stderr %.6g, trials %lld, seed %llu)\n", sim_from,
                    format_targets(result.targets, spec.offset).c_str(), result.value_double,
                    result.std_error, result.trials,
                    static_cast<unsigned long long>(sim_seed));
      }
      return 0;
    }
    if (*search_cmd) {
      SearchOptions options;
      options.jobs = search_jobs;
      options.keep_records = !search_records.empty();
      options.override_guards = search_override;
      options.trials = search_trials;
      options.seed = search_seed;
      const SearchReport report =
          search_signed
              ? signed_perm_search(search_n, options)
              : exhaustive_perm_search(search_n,
                                       search_variant == "main" ? PermVariant::Main
                                                                : PermVariant::Remark3,
                                       options);
      emit_report(report, search_format, search_records);
      return report.claims_hold ? 0 : 1;
    }
    if (*sweep_cmd) {
      SearchOptions options;
      options.jobs = sweep_jobs;
      options.keep_records = !sweep_records.empty();
      const SearchReport report =
          random_graph_sweep(sweep_n, sweep_d, sweep_trials, sweep_seed, options);
      emit_report(report, sweep_format, sweep_records);
      return report.claims_hold ? 0 : 1;
    }
    if (*formula_cmd) {
      const SearchReport report = transposition_formula_check(formula_n);
      emit_report(report, formula_format, "");
      return report.claims_hold ? 0 : 1;
    }
    if (*verify_cmd) {
      const GraphSpec spec = parse_graph_spec(verify_graph);
      const auto need = [kUnset](int value, const char* flag) {
        if (value == kUnset)
          throw std::invalid_argument(std::string("verify: missing --") + flag);
        return value;
      };
      bool holds = false;
      if (verify_lemma == "return") {
        const auto cert = verify_return_bound(spec.graph, need(verify_i, "i") + spec.offset);
        std::cout << return_certificate_to_json(cert, spec.graph) << "\n";
        holds = cert.holds;
      } else if (verify_lemma == "excursion") {
        const auto cert = verify_excursion_bound(spec.graph, need(verify_u, "u") + spec.offset);
        std::cout << excursion_certificate_to_json(cert, spec.graph) << "\n";
        holds = cert.holds;
      } else if (verify_lemma == "setA") {
        const auto cert = verify_seta(spec.graph, need(verify_u, "u") + spec.offset,
                                      need(verify_i, "i") + spec.offset);
        std::cout << seta_certificate_to_json(cert, spec.graph) << "\n";
        holds = cert.holds;
      } else {
        const auto cert = verify_gpp(spec.graph, need(verify_y, "y") + spec.offset);
        std::cout << gpp_certificate_to_json(cert, spec.graph) << "\n";
        holds = cert.holds;
      }
      return holds ? 0 : 1;
    }
    if (*gen_cmd) {
      std::cout << graph_to_json(parse_graph_spec(gen_graph).graph) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
