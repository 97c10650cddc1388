#pragma once

#include <string>

#include "permwalk/chain.hpp"
#include "permwalk/digraph.hpp"
#include "permwalk/search.hpp"
#include "permwalk/surgery.hpp"

namespace permwalk {

// Interchange format: {"vertices": <int>, "edges": [[tail,head], ...]} with
// parallel edges repeated and edges sorted lexicographically on write, so
// write(read(x)) == x for canonical input.
std::string graph_to_json(const DirectedMultigraph& g);
DirectedMultigraph graph_from_json(const std::string& text);
DirectedMultigraph graph_from_json_file(const std::string& path);

// Exact rationals serialize as {"num": "...", "den": "..."} decimal strings;
// Monte Carlo results carry trials and stderr.
std::string hitting_result_to_json(const HittingResult& r);

std::string report_to_json(const SearchReport& report);

std::string return_certificate_to_json(const ReturnBoundCertificate& c,
                                       const DirectedMultigraph& g);
std::string excursion_certificate_to_json(const ExcursionCertificate& c,
                                          const DirectedMultigraph& g);
std::string seta_certificate_to_json(const SetACertificate& c,
                                     const DirectedMultigraph& g);
std::string gpp_certificate_to_json(const GppCertificate& c,
                                    const DirectedMultigraph& g);

}  // namespace permwalk
