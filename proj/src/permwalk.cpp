#include "permwalk/permwalk.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace permwalk {

namespace {

std::vector<int> parse_csv_ints(const std::string& csv) {
  std::vector<int> values;
  std::stringstream stream(csv);
  std::string field;
  while (std::getline(stream, field, ',')) {
    size_t pos = 0;
    int v;
    try {
      v = std::stoi(field, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("permutation: bad integer '" + field + "'");
    }
    while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
    if (pos != field.size())
      throw std::invalid_argument("permutation: bad integer '" + field + "'");
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("permutation: empty image list");
  return values;
}

}  // namespace

Permutation::Permutation(std::vector<int> images, int domain_min)
    : images_(std::move(images)), domain_min_(domain_min) {
  const int size = static_cast<int>(images_.size());
  std::vector<bool> seen(size, false);
  for (int img : images_) {
    const int internal = img - domain_min_;
    if (internal < 0 || internal >= size)
      throw std::invalid_argument("permutation: image " + std::to_string(img) +
                                  " outside domain");
    if (seen[internal])
      throw std::invalid_argument("permutation: repeated image " + std::to_string(img));
    seen[internal] = true;
    internal_.push_back(internal);
  }
}

Permutation Permutation::identity(int domain_min, int domain_max) {
  std::vector<int> images;
  for (int k = domain_min; k <= domain_max; ++k) images.push_back(k);
  return Permutation(std::move(images), domain_min);
}

Permutation Permutation::transposition(int domain_min, int domain_max, int a, int b) {
  Permutation p = identity(domain_min, domain_max);
  std::swap(p.images_[a - domain_min], p.images_[b - domain_min]);
  std::swap(p.internal_[a - domain_min], p.internal_[b - domain_min]);
  return p;
}

Permutation Permutation::negation(int n) {
  std::vector<int> images;
  for (int k = -n; k <= n; ++k) images.push_back(-k);
  return Permutation(std::move(images), -n);
}

Permutation Permutation::parse_unsigned(const std::string& csv) {
  return Permutation(parse_csv_ints(csv), 0);
}

Permutation Permutation::parse_signed(const std::string& csv) {
  auto values = parse_csv_ints(csv);
  if (values.size() % 2 == 0)
    throw std::invalid_argument("signed permutation needs an odd image count (domain -n..n)");
  const int n = static_cast<int>(values.size()) / 2;
  return Permutation(std::move(values), -n);
}

bool Permutation::is_identity() const {
  for (size_t k = 0; k < internal_.size(); ++k)
    if (internal_[k] != static_cast<int>(k)) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::string out;
  for (size_t k = 0; k < images_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(images_[k]);
  }
  return out;
}

Permutation Permutation::from_internal(std::vector<int> internal, int domain_min) {
  std::vector<int> images(internal.size());
  for (size_t k = 0; k < internal.size(); ++k) images[k] = internal[k] + domain_min;
  return Permutation(std::move(images), domain_min);
}

namespace {

void assert_walk_graph(const DirectedMultigraph& g, const Permutation& sigma,
                       const char* builder) {
  const auto in = g.in_degrees();
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.out_degree(v) != 2 || in[v] != 2)
      throw std::logic_error(std::string(builder) + ": degree 2 violated at vertex " +
                             std::to_string(v) + " for sigma=" + sigma.to_string());
  }
  if (!is_strongly_connected(g))
    throw std::logic_error(std::string(builder) +
                           ": not strongly connected for sigma=" + sigma.to_string());
}

}  // namespace

DirectedMultigraph build_perm_chain(const Permutation& sigma) {
  if (sigma.domain_min() != 0)
    throw std::invalid_argument("build_perm_chain: domain must be {0..n}");
  const int n = sigma.domain_max();
  if (n < 1) throw std::invalid_argument("build_perm_chain: need n >= 1");

  DirectedMultigraph g(n + 1);
  g.add_edge(0, sigma(0));
  g.add_edge(0, sigma(1));
  for (int k = 1; k < n; ++k) {
    g.add_edge(k, sigma(k + 1));
    g.add_edge(k, sigma(k - 1));
  }
  g.add_edge(n, sigma(n));
  g.add_edge(n, sigma(n - 1));
  assert_walk_graph(g, sigma, "build_perm_chain");
  return g;
}

DirectedMultigraph build_perm_chain_variant(const Permutation& sigma) {
  if (sigma.domain_min() != 0)
    throw std::invalid_argument("build_perm_chain_variant: domain must be {0..n}");
  const int n = sigma.domain_max();
  if (n < 1) throw std::invalid_argument("build_perm_chain_variant: need n >= 1");

  DirectedMultigraph g(n + 1);
  for (int k = 0; k <= n; ++k) {
    const int s = sigma(k);
    if (s == 0) {
      g.add_edge(k, 0);
      g.add_edge(k, 1);
    } else if (s == n) {
      g.add_edge(k, n);
      g.add_edge(k, n - 1);
    } else {
      g.add_edge(k, s + 1);
      g.add_edge(k, s - 1);
    }
  }
  assert_walk_graph(g, sigma, "build_perm_chain_variant");
  return g;
}

DirectedMultigraph build_signed_chain(const Permutation& sigma) {
  const int n = sigma.domain_max();
  if (sigma.domain_min() != -n || n < 1)
    throw std::invalid_argument("build_signed_chain: domain must be {-n..n}, n >= 1");

  DirectedMultigraph g(2 * n + 1);
  const auto vertex = [n](int state) { return state + n; };
  g.add_edge(vertex(-n), vertex(sigma(-n)));
  g.add_edge(vertex(-n), vertex(sigma(-n + 1)));
  for (int k = -n + 1; k < n; ++k) {
    g.add_edge(vertex(k), vertex(sigma(k + 1)));
    g.add_edge(vertex(k), vertex(sigma(k - 1)));
  }
  g.add_edge(vertex(n), vertex(sigma(n)));
  g.add_edge(vertex(n), vertex(sigma(n - 1)));
  assert_walk_graph(g, sigma, "build_signed_chain");
  return g;
}

}  // namespace permwalk
