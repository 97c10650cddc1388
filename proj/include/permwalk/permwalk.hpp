#pragma once

#include <string>
#include <vector>

#include "permwalk/digraph.hpp"

namespace permwalk {

// Validated bijection on {domain_min..domain_max}. Signed domains {-n..n}
// are stored with offset n so the graph builders can stay on dense labels
// 0..2n; callers see only the external signed labels.
class Permutation {
 public:
  // images[k] = sigma(domain_min + k), in external labels.
  Permutation(std::vector<int> images, int domain_min);

  static Permutation identity(int domain_min, int domain_max);
  // Swaps a and b in the identity on {domain_min..domain_max}.
  static Permutation transposition(int domain_min, int domain_max, int a, int b);
  // sigma(x) = -x on {-n..n}.
  static Permutation negation(int n);

  // Comma-separated images, e.g. "2,0,1" means sigma(0)=2, sigma(1)=0,
  // sigma(2)=1. The unsigned domain is {0..n} with n inferred from the
  // count.
  static Permutation parse_unsigned(const std::string& csv);
  // Signed labels in domain order -n..n, e.g. "2,1,0,-1,-2" is negation on
  // {-2..2}. Requires an odd number of images.
  static Permutation parse_signed(const std::string& csv);

  int operator()(int k) const { return images_[k - domain_min_]; }
  int domain_min() const { return domain_min_; }
  int domain_max() const { return domain_min_ + static_cast<int>(images_.size()) - 1; }
  int size() const { return static_cast<int>(images_.size()); }
  bool is_identity() const;
  std::string to_string() const;

  // Images shifted to 0-based internal form; lexicographic enumeration via
  // std::next_permutation runs over this.
  const std::vector<int>& internal_images() const { return internal_; }
  static Permutation from_internal(std::vector<int> internal, int domain_min);

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;    // external labels
  std::vector<int> internal_;  // images_ - domain_min_
  int domain_min_ = 0;
};

// The walk X^sigma on {0..n}: interior k has out-edges to sigma(k+1) and
// sigma(k-1); 0 goes to sigma(0) or sigma(1); n goes to sigma(n) or
// sigma(n-1). Every vertex ends up with in == out == 2 and the graph is
// strongly connected; both facts are asserted at build time.
DirectedMultigraph build_perm_chain(const Permutation& sigma);

// Variant where the step from k is sigma(k)+1 or sigma(k)-1. The boundary
// rule when sigma(k) is 0 or n is not pinned down by the chain's source
// description; this builder clamps, mirroring the main chain: sigma(k)=0
// yields out-edges {0,1}, sigma(k)=n yields {n,n-1}. An interpretation, not
// asserted to be the only reading.
DirectedMultigraph build_perm_chain_variant(const Permutation& sigma);

// The walk on {-n..n} with boundary states -n and n; states map to graph
// vertices via the +n offset. Callers translate labels with
// signed_state_offset.
DirectedMultigraph build_signed_chain(const Permutation& sigma);

inline int signed_state_offset(const Permutation& sigma) { return sigma.domain_max(); }

}  // namespace permwalk
