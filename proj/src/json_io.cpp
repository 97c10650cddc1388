#include "permwalk/json_io.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace permwalk {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

ordered rational_json(const Rational& q) {
  return ordered{{"num", numerator_string(q)}, {"den", denominator_string(q)}};
}

}  // namespace

std::string graph_to_json(const DirectedMultigraph& g) {
  ordered j;
  j["vertices"] = g.num_vertices();
  auto& edges = j["edges"] = ordered::array();
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int head : g.out_edges(v)) edges.push_back({v, head});
  return j.dump();
}

DirectedMultigraph graph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("graph JSON: expected {\"vertices\": n, \"edges\": [[t,h],...]}");
  const int n = j.at("vertices").get<int>();
  DirectedMultigraph g(n);
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph JSON: each edge must be a [tail, head] pair");
    g.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  return g;
}

DirectedMultigraph graph_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return graph_from_json(text);
}

std::string hitting_result_to_json(const HittingResult& r) {
  ordered j;
  j["source"] = r.source;
  j["targets"] = r.targets;
  switch (r.method) {
    case Method::Exact:
      j["method"] = "exact";
      j["value"] = rational_json(r.value);
      j["decimal"] = r.value_double;
      break;
    case Method::Float:
      j["method"] = "float";
      j["value"] = r.value_double;
      break;
    case Method::MonteCarlo:
      j["method"] = "monte_carlo";
      j["value"] = r.value_double;
      j["trials"] = r.trials;
      j["stderr"] = r.std_error;
      break;
  }
  return j.dump();
}

std::string report_to_json(const SearchReport& report) {
  ordered j;
  j["kind"] = report.kind;
  j["n"] = report.n;
  if (report.d) j["d"] = report.d;
  if (!report.variant.empty()) j["variant"] = report.variant;
  j["candidates"] = report.candidates;
  if (report.trials) {
    j["trials"] = report.trials;
    j["seed"] = report.seed;
  }
  j["max"] = rational_json(report.max_value);
  j["max_decimal"] = to_double(report.max_value);
  j["argmax"] = report.argmax;
  j["bound"] = rational_json(report.bound);
  j["claims_hold"] = report.claims_hold;
  j["counterexamples"] = report.counterexamples;
  j["notes"] = report.notes;
  if (!report.records.empty()) {
    auto& records = j["records"] = ordered::array();
    for (const auto& rec : report.records) {
      records.push_back(ordered{{"id", rec.id},
                                {"value", rational_json(rec.value)},
                                {"is_max", rec.is_max}});
    }
  }
  return j.dump();
}

namespace {

ordered degree_table(const DirectedMultigraph& g) {
  const auto profile = degree_profile(g);
  auto table = ordered::array();
  for (int v = 0; v < g.num_vertices(); ++v)
    table.push_back(ordered{{"vertex", v},
                            {"in", profile.in_degree[v]},
                            {"out", profile.out_degree[v]}});
  return table;
}

}  // namespace

std::string return_certificate_to_json(const ReturnBoundCertificate& c,
                                       const DirectedMultigraph& g) {
  ordered j;
  j["lemma"] = "return";
  j["holds"] = c.holds;
  j["vertex"] = c.vertex;
  j["expected_return"] = rational_json(c.expected_return);
  j["bound"] = rational_json(c.bound);
  j["degrees"] = degree_table(g);
  return j.dump();
}

std::string excursion_certificate_to_json(const ExcursionCertificate& c,
                                          const DirectedMultigraph& g) {
  ordered j;
  j["lemma"] = "excursion";
  j["holds"] = c.holds;
  j["u"] = c.u;
  j["bound"] = rational_json(c.bound);
  j["max"] = rational_json(c.max_value);
  auto& per_i = j["hitting_from"] = ordered::array();
  for (const auto& [i, value] : c.hitting_from)
    per_i.push_back(ordered{{"i", i}, {"value", rational_json(value)}});
  j["degrees"] = degree_table(g);
  return j.dump();
}

std::string seta_certificate_to_json(const SetACertificate& c,
                                     const DirectedMultigraph& g) {
  ordered j;
  j["lemma"] = "setA";
  j["holds"] = c.holds;
  j["u"] = c.u;
  j["i"] = c.i;
  j["nonempty"] = c.nonempty;
  j["a_set"] = c.a_set;
  j["strongly_connected"] = c.strongly_connected;
  j["contains_i"] = c.contains_i;
  j["out_degrees_preserved"] = c.out_degrees_preserved;
  j["in_degrees_bounded"] = c.in_degrees_bounded;
  j["root_out_degree_drop"] = c.root_out_degree_drop;
  j["root_in_ge_out"] = c.root_in_ge_out;
  j["proper_subset"] = c.proper_subset;
  j["degrees"] = degree_table(g);
  return j.dump();
}

std::string gpp_certificate_to_json(const GppCertificate& c, const DirectedMultigraph& g) {
  ordered j;
  j["lemma"] = "gpp";
  j["holds"] = c.holds;
  j["y"] = c.y;
  j["balanced_at_d"] = c.balanced_at_d;
  j["strongly_connected"] = c.strongly_connected;
  j["vertex_count_ok"] = c.vertex_count_ok;
  j["hitting_preserved"] = c.hitting_preserved;
  j["output_is_ldn"] = c.output_is_ldn;
  auto& added = j["added_edges"] = ordered::array();
  for (const auto& [tail, head] : c.added_edges) added.push_back({tail, head});
  j["degrees"] = degree_table(g);
  return j.dump();
}

}  // namespace permwalk
